#include "qmotion/least_action.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmotion {

namespace {

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

// Thomas algorithm; sub/super have size n-1. Inputs are taken by value and
// overwritten.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag, std::vector<double> super,
                                      std::vector<double> rhs)
{
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double f = sub[i - 1] / diag[i - 1];
        diag[i] -= f * super[i - 1];
        rhs[i] -= f * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
    return x;
}

Path uniform_path(double x0, double x1, double t, std::size_t n_steps)
{
    Path p;
    p.times.resize(n_steps + 1);
    p.positions.resize(n_steps + 1);
    for (std::size_t k = 0; k <= n_steps; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n_steps);
        p.times[k] = s * t;
        p.positions[k] = x0 + s * (x1 - x0);
    }
    // exact endpoints regardless of rounding in s
    p.times.back() = t;
    p.positions.front() = x0;
    p.positions.back() = x1;
    return p;
}

}  // namespace

void Path::validate() const
{
    if (times.size() != positions.size())
        throw InvalidArgument("path times and positions differ in length");
    if (times.size() < 2)
        throw InvalidArgument("path needs at least two nodes");
    for (std::size_t k = 0; k + 1 < times.size(); ++k)
        if (!(times[k] < times[k + 1]))
            throw InvalidArgument("path times must be strictly increasing");
}

Path Path::reversed() const
{
    Path r = *this;
    std::reverse(r.positions.begin(), r.positions.end());
    return r;
}

double action(const PhysicsParams& params, const SmoothPotential& potential, const Path& path)
{
    path.validate();
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        const double dt = path.times[k + 1] - path.times[k];
        const double dx = path.positions[k + 1] - path.positions[k];
        const double mid = 0.5 * (path.positions[k + 1] + path.positions[k]);
        s += (0.5 * params.mass * dx * dx / (dt * dt) - potential.value(mid)) * dt;
    }
    return s;
}

std::vector<double> action_gradient(const PhysicsParams& params, const SmoothPotential& potential, const Path& path)
{
    path.validate();
    const auto& x = path.positions;
    const auto& t = path.times;
    const double m = params.mass;
    std::vector<double> g(path.size() - 2);
    for (std::size_t k = 1; k + 1 < path.size(); ++k) {
        const double dt_prev = t[k] - t[k - 1];
        const double dt_next = t[k + 1] - t[k];
        const double mid_prev = 0.5 * (x[k] + x[k - 1]);
        const double mid_next = 0.5 * (x[k + 1] + x[k]);
        g[k - 1] = m * (x[k] - x[k - 1]) / dt_prev - m * (x[k + 1] - x[k]) / dt_next
                   - 0.5 * dt_prev * potential.gradient(mid_prev) - 0.5 * dt_next * potential.gradient(mid_next);
    }
    return g;
}

Path solve_classical_path(const PhysicsParams& params, const SmoothPotential& potential, double x0, double x1,
                          double t, std::size_t n_steps, const SolverOptions& options)
{
    params.validate();
    if (!(t > 0.0))
        throw NonPositiveTime("path duration must be positive");
    if (n_steps < 2)
        throw InvalidArgument("n_steps must be at least 2");

    Path path = uniform_path(x0, x1, t, n_steps);
    const std::size_t interior = n_steps - 1;
    const double m = params.mass;

    auto grad = action_gradient(params, potential, path);
    double residual = max_abs(grad);
    for (int iter = 0; iter < options.max_iterations; ++iter) {
        if (residual < options.tolerance)
            return path;

        // Hessian of the discrete action (tridiagonal)
        std::vector<double> diag(interior), off(interior > 0 ? interior - 1 : 0);
        for (std::size_t k = 1; k <= interior; ++k) {
            const double dt_prev = path.times[k] - path.times[k - 1];
            const double dt_next = path.times[k + 1] - path.times[k];
            const double c_prev = potential.curvature_at(0.5 * (path.positions[k] + path.positions[k - 1]));
            const double c_next = potential.curvature_at(0.5 * (path.positions[k + 1] + path.positions[k]));
            diag[k - 1] = m / dt_prev + m / dt_next - 0.25 * (dt_prev * c_prev + dt_next * c_next);
            if (k < interior)
                off[k - 1] = -m / dt_next - 0.25 * dt_next * c_next;
        }
        std::vector<double> rhs(interior);
        for (std::size_t i = 0; i < interior; ++i)
            rhs[i] = -grad[i];
        const auto step = solve_tridiagonal(off, diag, off, rhs);

        // backtracking on the residual norm
        double lambda = 1.0;
        bool accepted = false;
        for (int halving = 0; halving < 40; ++halving) {
            Path trial = path;
            for (std::size_t i = 0; i < interior; ++i)
                trial.positions[i + 1] += lambda * step[i];
            auto trial_grad = action_gradient(params, potential, trial);
            const double trial_residual = max_abs(trial_grad);
            if (std::isfinite(trial_residual) && trial_residual < residual) {
                path = std::move(trial);
                grad = std::move(trial_grad);
                residual = trial_residual;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted)
            break;
    }
    if (residual < options.tolerance)
        return path;
    std::ostringstream msg;
    msg << "solve_classical_path did not converge, residual " << residual;
    throw NoConvergence(msg.str());
}

Path discrete_extremum_path(const PhysicsParams& params, const std::function<double(double)>& gradient, double x0,
                            double t, std::size_t n)
{
    params.validate();
    if (n < 1)
        throw InvalidArgument("n must be at least 1");
    if (!(t > 0.0))
        throw NonPositiveTime("path duration must be positive");
    const double eps = t / static_cast<double>(n);
    Path p;
    p.times.resize(n + 1);
    p.positions.resize(n + 1);
    p.positions[0] = x0;
    for (std::size_t k = 0; k <= n; ++k)
        p.times[k] = eps * static_cast<double>(k);
    p.times.back() = t;
    for (std::size_t k = 1; k <= n; ++k)
        p.positions[k] = p.positions[k - 1] - gradient(p.positions[k - 1]) * eps * eps / (2.0 * params.mass);
    return p;
}

RecursionDivergence recursion_divergence(const PhysicsParams& params, const SmoothPotential& potential, double x0,
                                         double t, std::size_t n)
{
    const Path recursion = discrete_extremum_path(params, potential.gradient, x0, t, n);
    const double eps = t / static_cast<double>(n);
    const double m = params.mass;

    // Classical march from rest. Zero momentum at node 0 of the midpoint
    // action gives x_1 = x_0 - V'((x_0+x_1)/2) eps^2/(2m): the recursion's
    // own first step. After that the march keeps the velocity.
    std::vector<double> x(n + 1);
    x[0] = x0;
    x[1] = x0 - potential.gradient(x0) * eps * eps / (2.0 * m);
    for (int pass = 0; pass < 50; ++pass)
        x[1] = x0 - potential.gradient(0.5 * (x0 + x[1])) * eps * eps / (2.0 * m);
    for (std::size_t k = 1; k < n; ++k) {
        // dS/dx_k = 0 solved for x_{k+1}; fixed point in the forward midpoint
        const double known = m * (x[k] - x[k - 1]) / eps - 0.5 * eps * potential.gradient(0.5 * (x[k] + x[k - 1]));
        double next = 2.0 * x[k] - x[k - 1];
        for (int pass = 0; pass < 50; ++pass)
            next = x[k] + (known - 0.5 * eps * potential.gradient(0.5 * (next + x[k]))) * eps / m;
        x[k + 1] = next;
    }
    const Path classical = solve_classical_path(params, potential, x0, x[n], t, n);

    RecursionDivergence out{0.0, recursion.positions.back() - classical.positions.back()};
    for (std::size_t k = 0; k <= n; ++k)
        out.max_abs = std::max(out.max_abs, std::abs(recursion.positions[k] - classical.positions[k]));
    return out;
}

Complex complex_action(const PhysicsParams& params, const SmoothPotential& potential, const Path& path,
                       ComplexActionConvention convention)
{
    const double s = action(params, potential, path);
    if (convention == ComplexActionConvention::one_minus_i)
        return Complex(s, -s);
    return Complex(s, action(params, potential, path.reversed()));
}

std::vector<Complex> complex_action_gradient(const PhysicsParams& params, const SmoothPotential& potential,
                                             const Path& path, ComplexActionConvention convention)
{
    const auto g = action_gradient(params, potential, path);
    std::vector<Complex> out(g.size());
    if (convention == ComplexActionConvention::one_minus_i) {
        for (std::size_t i = 0; i < g.size(); ++i)
            out[i] = Complex(g[i], -g[i]);
        return out;
    }
    // S[x(-tau)] depends on x_k through the reversed slot N - k
    const auto g_rev = action_gradient(params, potential, path.reversed());
    for (std::size_t i = 0; i < g.size(); ++i)
        out[i] = Complex(g[i], g_rev[g.size() - 1 - i]);
    return out;
}

double forbidden_action(const PhysicsParams& params, const PiecewisePotential& potential, double e, double x0,
                        double x1)
{
    params.validate();
    if (!(x0 < x1))
        throw InvalidArgument("forbidden_action requires x0 < x1");
    double total = 0.0;
    for (const auto& r : potential.regions()) {
        const double lo = std::max(r.x_left, x0);
        const double hi = std::min(r.x_right, x1);
        if (!(lo < hi))
            continue;
        if (!(r.v > e)) {
            std::ostringstream msg;
            msg << "V = " << r.v << " <= E = " << e << " on [" << lo << ", " << hi << "]";
            throw NotForbidden(msg.str());
        }
        total += std::sqrt(2.0 * params.mass * (r.v - e)) * (hi - lo);
    }
    return total;
}

}  // namespace qmotion
