#pragma once

#include <Eigen/Dense>

#include "qmotion/core.hpp"

namespace qmotion {

enum class TimeMode { real_time, imaginary_time };

using PotentialFn = std::function<double(double)>;

struct PropagatorConfig {
    std::size_t n_slices = 1;
    double total_time = 1.0;
    TimeMode mode = TimeMode::real_time;
    /// Width of a smooth roll-off applied to the quadrature weights at both
    /// grid edges. Zero gives the plain trapezoid rule. Real-time kernels
    /// have constant modulus, so a hard cut at the grid edge leaks into the
    /// interior; a taper a few units wide suppresses that.
    double edge_taper = 0.0;
    /// Real time only: roll single-slice entries off to zero before the
    /// kernel's chirp m dx / (hbar eps) reaches the grid Nyquist wavenumber.
    /// Aliased far off-diagonal entries otherwise grow under repeated
    /// composition once eps is small compared with dx times the grid width.
    bool band_limit = false;

    double slice_duration() const { return total_time / static_cast<double>(n_slices); }
    void validate() const;
};

/// Discrete transition amplitude K(x_i, x0_j) on a grid, plus the quadrature
/// weights it was composed with (needed to apply it consistently).
struct PropagatorMatrix {
    Grid1D grid;
    Eigen::MatrixXcd entries;
    Eigen::VectorXd weights;
    PropagatorConfig config;

    Complex operator()(std::size_t i, std::size_t j) const { return entries(i, j); }
};

/// One time slice of the path integral:
///   real:      sqrt(m/(2 pi i hbar eps)) exp((i/hbar)[m dx^2/(2 eps) - eps V])
///   imaginary: sqrt(m/(2 pi hbar eps))   exp(-(1/hbar)[m dx^2/(2 eps) + eps V])
/// Throws NonPositiveEps.
Complex slice_kernel(const PhysicsParams& params, double eps, double x_next, double x_prev, double v_mid,
                     TimeMode mode);

/// Trapezoid weights, multiplied by the smooth edge roll-off when taper > 0.
Eigen::VectorXd quadrature_weights(const Grid1D& grid, double taper);

/// K for total_time as the weighted product of n_slices single-slice kernel
/// matrices; the potential is sampled at the midpoint of every pair.
/// Throws GridTooCoarse in real time when m dx^2 / (2 hbar eps) > pi/4.
PropagatorMatrix timeslice_propagator(const PhysicsParams& params, const PotentialFn& potential, const Grid1D& grid,
                                      const PropagatorConfig& config);
PropagatorMatrix timeslice_propagator(const PhysicsParams& params, const PiecewisePotential& potential,
                                      const Grid1D& grid, const PropagatorConfig& config);

/// Richardson extrapolation of timeslice_propagator towards eps -> 0, using
/// n, 2n, ..., 2^(levels-1) n slices (n = config.n_slices) and assuming the
/// error expands in powers of 1/n.
PropagatorMatrix extrapolated_propagator(const PhysicsParams& params, const PotentialFn& potential,
                                         const Grid1D& grid, const PropagatorConfig& config, int levels);

Complex free_propagator_closed_form(const PhysicsParams& params, double x, double x0, double t, TimeMode mode);

/// Kernel of V = m omega^2 x^2 / 2. Real time throws CausticError when
/// |sin(omega t)| is below 1e-10.
Complex harmonic_propagator_closed_form(const PhysicsParams& params, double omega, double x, double x0, double t,
                                        TimeMode mode);

/// Psi_t(x_i) = sum_j K_ij w_j Psi_0(x_j). Throws GridMismatch.
StateVector apply_propagator(const PropagatorMatrix& k, const StateVector& psi0);

/// Abscissa of the largest |psi|^2 sample.
double density_peak(const StateVector& psi);

}  // namespace qmotion
