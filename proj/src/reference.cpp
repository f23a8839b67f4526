#include "qmotion/reference.hpp"

#include <algorithm>
#include <cmath>

namespace qmotion {

namespace {

constexpr Complex kI{0.0, 1.0};

// (psi, psi') at x_ref + d in terms of (psi, psi') at x_ref
Eigen::Matrix2cd flight_matrix(const RegionWave& wave, double d)
{
    Eigen::Matrix2cd m;
    if (wave.degenerate) {
        m << 1.0, d, 0.0, 1.0;
        return m;
    }
    const Complex k = wave.k;
    const Complex c = std::cos(k * d);
    const Complex s = std::sin(k * d);
    m << c, s / k, -k * s, c;
    return m;
}

// columns: (psi, psi') of e^{ikx} and e^{-ikx} at x
Eigen::Matrix2cd plane_wave_basis(double k, double x)
{
    const Complex ep = std::exp(kI * k * x);
    const Complex em = std::exp(-kI * k * x);
    Eigen::Matrix2cd w;
    w << ep, em, kI * k * ep, -kI * k * em;
    return w;
}

// Row coefficients of (a', b) for psi and psi' at local offset d, where
// a' = a e^{-ik shift}: the growing term of a forbidden region is measured
// at its right edge so the system stays well scaled across wide barriers.
void basis_rows(const RegionWave& wave, double d, double shift, Complex value[2], Complex slope[2])
{
    if (wave.degenerate) {
        value[0] = 1.0;
        value[1] = d;
        slope[0] = 0.0;
        slope[1] = 1.0;
        return;
    }
    const Complex ep = std::exp(kI * wave.k * d);
    const Complex em = std::exp(-kI * wave.k * (d - shift));
    value[0] = em;
    value[1] = ep;
    slope[0] = -kI * wave.k * em;
    slope[1] = kI * wave.k * ep;
}

}  // namespace

TransferMatrix transfer_matrix(const PhysicsParams& params, const PiecewisePotential& potential, double e)
{
    params.validate();
    const std::size_t n = potential.size();
    const RegionWave left = region_wavevector(params, e, potential[0].v);
    const RegionWave right = region_wavevector(params, e, potential[n - 1].v);
    if (!left.propagating() || !right.propagating())
        throw NoPropagatingAsymptote("transfer matrix needs propagating waves on both sides");

    TransferMatrix out{Eigen::Matrix2cd::Identity(), e, left.k.real(), right.k.real(), 0.0, 0.0};
    if (n == 1)
        return out;

    out.x_first = potential[0].x_right;
    out.x_last = potential[n - 1].x_left;
    Eigen::Matrix2cd p = Eigen::Matrix2cd::Identity();
    for (std::size_t j = 1; j + 1 < n; ++j)
        p = flight_matrix(region_wavevector(params, e, potential[j].v), potential[j].width()) * p;
    out.entries = plane_wave_basis(out.k_right, out.x_last).inverse() * p * plane_wave_basis(out.k_left, out.x_first);
    return out;
}

ScatteringAmplitudes transmission_from(const TransferMatrix& m)
{
    const auto& M = m.entries;
    ScatteringAmplitudes out;
    out.r_amp = -M(1, 0) / M(1, 1);
    const Complex t_global = M(0, 0) + M(0, 1) * out.r_amp;
    out.t_amp = t_global * std::exp(kI * m.k_right * m.x_last);
    out.r_prob = std::norm(out.r_amp);
    out.t_prob = m.k_right / m.k_left * std::norm(t_global);
    return out;
}

RegionSolution reference_wavefunction(const PhysicsParams& params, const PiecewisePotential& potential, double e)
{
    params.validate();
    const std::size_t n = potential.size();
    RegionSolution sol{params, potential, e, {}};
    sol.regions.resize(n);
    std::vector<double> shift(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        sol.regions[j].wave = region_wavevector(params, e, potential[j].v);
        sol.regions[j].x_ref = region_reference_point(potential, j);
        if (sol.regions[j].wave.forbidden() && std::isfinite(potential[j].width()))
            shift[j] = potential[j].width();
    }
    if (!sol.regions.front().wave.propagating())
        throw NoPropagatingAsymptote("no propagating wave in the leftmost region (E <= V)");
    const auto& last = sol.regions.back().wave;
    if (!(last.propagating() || last.forbidden()) || (n == 1 && !last.propagating()))
        throw NoPropagatingAsymptote("rightmost region admits no outgoing or decaying wave");

    // unknowns (a_0, b_0, a_1, b_1, ...)
    const auto size = static_cast<Eigen::Index>(2 * n);
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(size, size);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(size);
    A(0, 1) = 1.0;  // unit incident amplitude
    rhs(0) = 1.0;
    A(1, size - 2) = 1.0;  // nothing coming back from the right
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double boundary = potential[j].x_right;
        Complex lv[2], ls[2], rv[2], rs[2];
        basis_rows(sol.regions[j].wave, boundary - sol.regions[j].x_ref, shift[j], lv, ls);
        basis_rows(sol.regions[j + 1].wave, boundary - sol.regions[j + 1].x_ref, shift[j + 1], rv, rs);
        const auto row = static_cast<Eigen::Index>(2 + 2 * j);
        const auto cl = static_cast<Eigen::Index>(2 * j);
        const auto cr = static_cast<Eigen::Index>(2 * j + 2);
        for (int c = 0; c < 2; ++c) {
            A(row, cl + c) = lv[c];
            A(row, cr + c) = -rv[c];
            A(row + 1, cl + c) = ls[c];
            A(row + 1, cr + c) = -rs[c];
        }
    }
    const Eigen::FullPivLU<Eigen::MatrixXcd> lu(A);
    if (!lu.isInvertible())
        throw DegenerateRegion("interface system is singular");
    const Eigen::VectorXcd u = lu.solve(rhs);
    for (std::size_t j = 0; j < n; ++j) {
        sol.regions[j].a = u(static_cast<Eigen::Index>(2 * j)) * std::exp(kI * sol.regions[j].wave.k * shift[j]);
        sol.regions[j].b = u(static_cast<Eigen::Index>(2 * j + 1));
    }
    return sol;
}

double rect_barrier_T_closed_form(const PhysicsParams& params, double e, double v0, double a)
{
    params.validate();
    if (!(e > 0.0 && e < v0))
        throw EnergyOutOfRange("closed form needs 0 < E < V0");
    if (!(a >= 0.0))
        throw InvalidArgument("barrier width must be non-negative");
    const double kappa = std::sqrt(2.0 * params.mass * (v0 - e)) / params.hbar;
    const double sh = std::sinh(kappa * a);
    return 1.0 / (1.0 + v0 * v0 * sh * sh / (4.0 * e * (v0 - e)));
}

std::vector<double> comparison_points(const PiecewisePotential& potential, std::size_t per_region, double margin)
{
    const auto b = potential.boundaries();
    const double lo = b.empty() ? -margin : b.front() - margin;
    const double hi = b.empty() ? margin : b.back() + margin;
    std::vector<double> xs;
    // outer margins plus every finite region
    std::vector<double> edges{lo};
    edges.insert(edges.end(), b.begin(), b.end());
    edges.push_back(hi);
    for (std::size_t s = 0; s + 1 < edges.size(); ++s)
        for (std::size_t i = 0; i < per_region; ++i)
            xs.push_back(edges[s] + (edges[s + 1] - edges[s]) * static_cast<double>(i) / static_cast<double>(per_region));
    xs.push_back(hi);
    return xs;
}

double max_relative_deviation(const RegionSolution& a, const RegionSolution& b, const std::vector<double>& xs)
{
    double worst = 0.0;
    for (double x : xs) {
        const Complex pa = evaluate_psi(a, x);
        const Complex pb = evaluate_psi(b, x);
        const double denom = std::abs(pb);
        const double dev = denom > 0.0 ? std::abs(pa - pb) / denom : std::abs(pa - pb);
        worst = std::max(worst, dev);
    }
    return worst;
}

}  // namespace qmotion
