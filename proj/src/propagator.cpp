#include "qmotion/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace qmotion {

namespace {

constexpr Complex kI{0.0, 1.0};

// Smooth 0 -> 1 ramp on [0, 1] with an error-function profile. Its spectrum
// falls off like a Gaussian, so fast oscillations of the kernel across the
// ramp cancel instead of leaking into the interior.
double edge_ramp(double s)
{
    if (s <= 0.0)
        return 0.0;
    if (s >= 1.0)
        return 1.0;
    constexpr double steepness = 6.0;
    const double edge = std::erf(0.5 * steepness);
    return (std::erf(steepness * (s - 0.5)) + edge) / (2.0 * edge);
}

template <typename Matrix>
Matrix weighted_product(const Matrix& a, const Eigen::VectorXd& w, const Matrix& b)
{
    return a * (w.asDiagonal() * b);
}

// a (*) a (*) ... (*) a, n factors, with (*) the weighted product
template <typename Matrix>
Matrix weighted_power(const Matrix& a, const Eigen::VectorXd& w, std::size_t n)
{
    Matrix result;
    bool have_result = false;
    Matrix base = a;
    while (n > 0) {
        if (n & 1u) {
            result = have_result ? weighted_product(result, w, base) : base;
            have_result = true;
        }
        n >>= 1u;
        if (n > 0)
            base = weighted_product(base, w, base);
    }
    return result;
}

void check_resolution(const PhysicsParams& params, const Grid1D& grid, const PropagatorConfig& config)
{
    if (config.mode != TimeMode::real_time)
        return;
    const double dx = grid.spacing();
    const double phase_step = params.mass * dx * dx / (2.0 * params.hbar * config.slice_duration());
    if (phase_step > kPi / 4.0) {
        std::ostringstream msg;
        msg << "grid spacing " << dx << " does not resolve a slice of duration " << config.slice_duration()
            << " (m dx^2/(2 hbar eps) = " << phase_step << " > pi/4)";
        throw GridTooCoarse(msg.str());
    }
}

}  // namespace

void PropagatorConfig::validate() const
{
    if (n_slices < 1)
        throw InvalidArgument("n_slices must be at least 1");
    if (!(std::isfinite(total_time) && total_time > 0.0))
        throw NonPositiveTime("total_time must be positive");
    if (!(edge_taper >= 0.0))
        throw InvalidArgument("edge_taper must be non-negative");
}

Complex slice_kernel(const PhysicsParams& params, double eps, double x_next, double x_prev, double v_mid,
                     TimeMode mode)
{
    if (!(eps > 0.0))
        throw NonPositiveEps("slice duration must be positive");
    const double m = params.mass;
    const double hbar = params.hbar;
    const double dx = x_next - x_prev;
    const double kinetic = m * dx * dx / (2.0 * eps);
    if (mode == TimeMode::real_time) {
        const Complex prefactor = std::sqrt(Complex(m / (2.0 * kPi * hbar * eps)) / kI);
        return prefactor * std::exp(kI * (kinetic - eps * v_mid) / hbar);
    }
    const double prefactor = std::sqrt(m / (2.0 * kPi * hbar * eps));
    return prefactor * std::exp(-(kinetic + eps * v_mid) / hbar);
}

Eigen::VectorXd quadrature_weights(const Grid1D& grid, double taper)
{
    const auto trap = grid.trapezoid_weights();
    Eigen::VectorXd w(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double f = 1.0;
        if (taper > 0.0) {
            const double edge_distance = std::min(grid.x(i) - grid.x_min(), grid.x_max() - grid.x(i));
            f = edge_ramp(edge_distance / taper);
        }
        w[static_cast<Eigen::Index>(i)] = trap[i] * f;
    }
    return w;
}

PropagatorMatrix timeslice_propagator(const PhysicsParams& params, const PotentialFn& potential, const Grid1D& grid,
                                      const PropagatorConfig& config)
{
    params.validate();
    config.validate();
    check_resolution(params, grid, config);

    const auto n = static_cast<Eigen::Index>(grid.size());
    const double eps = config.slice_duration();
    const Eigen::VectorXd w = quadrature_weights(grid, config.edge_taper);

    // midpoint potential, symmetric in (i, j)
    Eigen::MatrixXd v_mid(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = j; i < n; ++i) {
            const double v = potential(0.5 * (grid.x(static_cast<std::size_t>(i)) + grid.x(static_cast<std::size_t>(j))));
            v_mid(i, j) = v;
            v_mid(j, i) = v;
        }

    PropagatorMatrix out{grid, Eigen::MatrixXcd(n, n), w, config};
    if (config.mode == TimeMode::imaginary_time) {
        // the Wick-rotated kernel is real; compose in real arithmetic
        Eigen::MatrixXd k1(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i)
                k1(i, j) = slice_kernel(params, eps, grid.x(static_cast<std::size_t>(i)),
                                        grid.x(static_cast<std::size_t>(j)), v_mid(i, j), config.mode)
                               .real();
        out.entries = weighted_power(k1, w, config.n_slices).cast<Complex>();
    } else {
        // full weight up to 40% of the aliasing distance, zero from 80%
        const double alias_distance = kPi * params.hbar * eps / (params.mass * grid.spacing());
        const double pass = 0.4 * alias_distance;
        Eigen::MatrixXcd k1(n, n);
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < n; ++i) {
                const double xi = grid.x(static_cast<std::size_t>(i));
                const double xj = grid.x(static_cast<std::size_t>(j));
                k1(i, j) = slice_kernel(params, eps, xi, xj, v_mid(i, j), config.mode);
                if (config.band_limit)
                    k1(i, j) *= 1.0 - edge_ramp((std::abs(xi - xj) - pass) / pass);
            }
        out.entries = weighted_power(k1, w, config.n_slices);
    }
    return out;
}

PropagatorMatrix timeslice_propagator(const PhysicsParams& params, const PiecewisePotential& potential,
                                      const Grid1D& grid, const PropagatorConfig& config)
{
    return timeslice_propagator(params, PotentialFn([&potential](double x) { return potential(x); }), grid, config);
}

PropagatorMatrix extrapolated_propagator(const PhysicsParams& params, const PotentialFn& potential,
                                         const Grid1D& grid, const PropagatorConfig& config, int levels)
{
    if (levels < 1)
        throw InvalidArgument("extrapolation needs at least one level");

    // Richardson table in h = 1/n, h halving from one level to the next;
    // only the latest row is kept
    PropagatorMatrix finest = timeslice_propagator(params, potential, grid, config);
    std::vector<Eigen::MatrixXcd> row{finest.entries};
    for (int level = 1; level < levels; ++level) {
        PropagatorConfig refined = config;
        refined.n_slices = config.n_slices << level;
        finest = timeslice_propagator(params, potential, grid, refined);
        std::vector<Eigen::MatrixXcd> next{finest.entries};
        double factor = 1.0;
        for (int j = 1; j <= level; ++j) {
            factor *= 2.0;
            Eigen::MatrixXcd improved =
                next.back() + (next.back() - row[static_cast<std::size_t>(j - 1)]) / (factor - 1.0);
            next.push_back(std::move(improved));
        }
        row = std::move(next);
    }
    finest.entries = row.back();
    return finest;
}

Complex free_propagator_closed_form(const PhysicsParams& params, double x, double x0, double t, TimeMode mode)
{
    if (!(t > 0.0))
        throw NonPositiveTime("propagation time must be positive");
    const double m = params.mass;
    const double hbar = params.hbar;
    const double d = x - x0;
    if (mode == TimeMode::real_time)
        return std::sqrt(Complex(m / (2.0 * kPi * hbar * t)) / kI) * std::exp(kI * m * d * d / (2.0 * hbar * t));
    return std::sqrt(m / (2.0 * kPi * hbar * t)) * std::exp(-m * d * d / (2.0 * hbar * t));
}

Complex harmonic_propagator_closed_form(const PhysicsParams& params, double omega, double x, double x0, double t,
                                        TimeMode mode)
{
    if (!(t > 0.0))
        throw NonPositiveTime("propagation time must be positive");
    if (!(omega > 0.0))
        throw InvalidArgument("omega must be positive");
    const double m = params.mass;
    const double hbar = params.hbar;
    const double wt = omega * t;
    if (mode == TimeMode::real_time) {
        const double s = std::sin(wt);
        if (std::abs(s) < 1e-10)
            throw CausticError("omega t is a multiple of pi");
        const Complex prefactor = std::sqrt(Complex(m * omega / (2.0 * kPi * hbar * s)) / kI);
        const double phase = m * omega * ((x * x + x0 * x0) * std::cos(wt) - 2.0 * x * x0) / (2.0 * hbar * s);
        return prefactor * std::exp(kI * phase);
    }
    const double sh = std::sinh(wt);
    const double prefactor = std::sqrt(m * omega / (2.0 * kPi * hbar * sh));
    return prefactor * std::exp(-m * omega * ((x * x + x0 * x0) * std::cosh(wt) - 2.0 * x * x0) / (2.0 * hbar * sh));
}

StateVector apply_propagator(const PropagatorMatrix& k, const StateVector& psi0)
{
    if (!(psi0.grid == k.grid))
        throw GridMismatch("state and propagator live on different grids");
    const auto n = static_cast<Eigen::Index>(psi0.values.size());
    const Eigen::Map<const Eigen::VectorXcd> in(psi0.values.data(), n);
    const Eigen::VectorXcd weighted = k.weights.cast<Complex>().cwiseProduct(in);
    const Eigen::VectorXcd result = k.entries * weighted;
    return StateVector(k.grid, std::vector<Complex>(result.data(), result.data() + n));
}

double density_peak(const StateVector& psi)
{
    std::size_t best = 0;
    for (std::size_t i = 1; i < psi.values.size(); ++i)
        if (std::norm(psi.values[i]) > std::norm(psi.values[best]))
            best = i;
    return psi.grid.x(best);
}

}  // namespace qmotion
