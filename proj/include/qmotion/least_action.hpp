#pragma once

#include <vector>

#include "qmotion/core.hpp"

namespace qmotion {

/// Discretized trajectory with fixed endpoints.
struct Path {
    std::vector<double> times;
    std::vector<double> positions;

    std::size_t size() const noexcept { return times.size(); }
    /// Throws InvalidArgument on mismatched lengths or non-increasing times.
    void validate() const;
    /// Same time nodes, positions read backwards: x(-tau) on the original grid.
    Path reversed() const;
};

enum class ComplexActionConvention {
    one_minus_i,      ///< (1 - i) S[x(tau)]
    plus_i_reversed,  ///< S[x(tau)] + i S[x(-tau)]
};

struct SolverOptions {
    double tolerance = 1e-10;
    int max_iterations = 100;
};

/// Discrete action with the potential sampled at each segment midpoint:
///   S = sum_k [ m/2 ((x_{k+1}-x_k)/dt_k)^2 - V((x_{k+1}+x_k)/2) ] dt_k
double action(const PhysicsParams& params, const SmoothPotential& potential, const Path& path);

/// dS/dx_k for the interior nodes k = 1 .. N-1 of the discrete action above.
std::vector<double> action_gradient(const PhysicsParams& params, const SmoothPotential& potential, const Path& path);

/// Stationary path of the discrete action with x(0) = x0, x(t) = x1 on
/// n_steps equal intervals. Damped Newton on the tridiagonal system
/// dS/dx_k = 0, started from the straight line. Throws NoConvergence.
Path solve_classical_path(const PhysicsParams& params, const SmoothPotential& potential, double x0, double x1,
                          double t, std::size_t n_steps, const SolverOptions& options = {});

/// Iterates x_k = x_{k-1} - V'(x_{k-1}) eps^2 / (2m), eps = t/n, from x0.
/// The recursion carries no velocity from one slice to the next.
Path discrete_extremum_path(const PhysicsParams& params, const std::function<double(double)>& gradient, double x0,
                            double t, std::size_t n);

struct RecursionDivergence {
    double max_abs;   ///< max_k |x_rec(tau_k) - x_cl(tau_k)|
    double endpoint;  ///< x_rec(t) - x_cl(t)
};

/// Compares discrete_extremum_path with the classical path that starts at
/// rest at x0: solve_classical_path between x0 and the endpoint reached by
/// marching the discrete Euler-Lagrange equations from rest. n >= 2.
RecursionDivergence recursion_divergence(const PhysicsParams& params, const SmoothPotential& potential, double x0,
                                         double t, std::size_t n);

Complex complex_action(const PhysicsParams& params, const SmoothPotential& potential, const Path& path,
                       ComplexActionConvention convention = ComplexActionConvention::one_minus_i);

/// Interior-node gradient of complex_action (real and imaginary parts are
/// the gradients of the respective real actions).
std::vector<Complex> complex_action_gradient(const PhysicsParams& params, const SmoothPotential& potential,
                                             const Path& path,
                                             ComplexActionConvention convention = ComplexActionConvention::one_minus_i);

/// Integral of sqrt(2m(V - e)) over [x0, x1], exact for piecewise-constant V.
/// Throws NotForbidden if V <= e anywhere on the open interval.
double forbidden_action(const PhysicsParams& params, const PiecewisePotential& potential, double e, double x0,
                        double x1);

}  // namespace qmotion
