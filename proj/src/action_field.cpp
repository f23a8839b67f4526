#include "qmotion/action_field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmotion {

namespace {

constexpr Complex kI{0.0, 1.0};

struct ValueSlope {
    Complex psi;
    Complex dpsi;
};

ValueSlope local_value(const RegionAmplitudes& r, double d)
{
    if (r.wave.degenerate)
        return {r.a + r.b * d, r.b};
    const Complex k = r.wave.k;
    const Complex ep = std::exp(kI * k * d);
    const Complex em = std::exp(-kI * k * d);
    return {r.a * em + r.b * ep, kI * k * (r.b * ep - r.a * em)};
}

// amplitudes in region `wave` that reproduce (psi, psi') at local offset d
std::pair<Complex, Complex> amplitudes_from(const RegionWave& wave, double d, const ValueSlope& vs)
{
    if (wave.degenerate)
        return {vs.psi - vs.dpsi * d, vs.dpsi};
    const Complex ik = kI * wave.k;
    const Complex b = 0.5 * (vs.psi + vs.dpsi / ik) * std::exp(-ik * d);
    const Complex a = 0.5 * (vs.psi - vs.dpsi / ik) * std::exp(ik * d);
    return {a, b};
}

}  // namespace

RegionWave region_wavevector(const PhysicsParams& params, double e, double v)
{
    RegionWave w;
    w.v = v;
    const double kinetic = e - v;
    const double scale = std::max({1.0, std::abs(e), std::abs(v)});
    if (std::abs(kinetic) <= 1e-12 * scale) {
        w.degenerate = true;
        return w;
    }
    const double magnitude = std::sqrt(2.0 * params.mass * std::abs(kinetic)) / params.hbar;
    w.k = kinetic > 0.0 ? Complex(magnitude, 0.0) : Complex(0.0, magnitude);
    return w;
}

ActionField action_field(const PhysicsParams& params, const RegionWave& wave, double energy, Direction direction)
{
    return {direction, params.hbar * wave.k, energy};
}

double region_reference_point(const PiecewisePotential& potential, std::size_t j)
{
    return j == 0 ? 0.0 : potential[j].x_left;
}

RegionSolution build_wavefunction(const PhysicsParams& params, const PiecewisePotential& potential, double e)
{
    params.validate();
    const std::size_t n = potential.size();
    RegionSolution sol{params, potential, e, {}};
    sol.regions.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        sol.regions[j].wave = region_wavevector(params, e, potential[j].v);
        sol.regions[j].x_ref = region_reference_point(potential, j);
    }
    if (!sol.regions.front().wave.propagating())
        throw NoPropagatingAsymptote("no propagating wave in the leftmost region (E <= V)");
    const auto& last = sol.regions.back().wave;
    if (!(last.propagating() || last.forbidden()))
        throw NoPropagatingAsymptote("rightmost region has E = V");
    if (n == 1 && !last.propagating())
        throw NoPropagatingAsymptote("single region must be propagating");

    // outgoing (or decaying) wave only on the right
    sol.regions.back().a = 0.0;
    sol.regions.back().b = 1.0;
    for (std::size_t j = n - 1; j-- > 0;) {
        const double boundary = potential[j].x_right;
        const ValueSlope at_boundary = local_value(sol.regions[j + 1], boundary - sol.regions[j + 1].x_ref);
        const auto [a, b] = amplitudes_from(sol.regions[j].wave, boundary - sol.regions[j].x_ref, at_boundary);
        sol.regions[j].a = a;
        sol.regions[j].b = b;
    }

    const Complex incident = sol.regions.front().b;
    if (!(std::isfinite(incident.real()) && std::isfinite(incident.imag())) || std::abs(incident) == 0.0)
        throw DegenerateRegion("interface matching is singular: no incident component");
    for (auto& r : sol.regions) {
        r.a /= incident;
        r.b /= incident;
    }
    return sol;
}

Complex evaluate_psi(const RegionSolution& solution, double x, double tau)
{
    const std::size_t j = solution.potential.region_index(x);
    const auto& r = solution.regions[j];
    const double hbar = solution.params.hbar;
    const double d = x - r.x_ref;
    const Complex temporal = std::exp(-kI * solution.energy * tau / hbar);
    if (r.wave.degenerate)
        return (r.a + r.b * d) * temporal;
    const ActionField plus = action_field(solution.params, r.wave, solution.energy, Direction::plus);
    const ActionField minus = action_field(solution.params, r.wave, solution.energy, Direction::minus);
    return r.a * std::exp(kI * minus(d, tau) / hbar) + r.b * std::exp(kI * plus(d, tau) / hbar);
}

Complex evaluate_dpsi(const RegionSolution& solution, double x)
{
    const std::size_t j = solution.potential.region_index(x);
    return local_value(solution.regions[j], x - solution.regions[j].x_ref).dpsi;
}

ScatteringAmplitudes transmission_reflection(const RegionSolution& solution)
{
    const auto& first = solution.regions.front();
    const auto& last = solution.regions.back();
    if (!first.wave.propagating() || !last.wave.propagating())
        throw NoPropagatingAsymptote("transmission needs propagating waves on both sides");
    ScatteringAmplitudes out;
    out.r_amp = first.a;
    out.t_amp = last.b;
    out.r_prob = std::norm(out.r_amp);
    out.t_prob = last.wave.k.real() / first.wave.k.real() * std::norm(out.t_amp);
    return out;
}

double continuity_residual(const RegionSolution& solution)
{
    double worst = 0.0;
    for (std::size_t j = 0; j + 1 < solution.regions.size(); ++j) {
        const double boundary = solution.potential[j].x_right;
        const auto left = local_value(solution.regions[j], boundary - solution.regions[j].x_ref);
        const auto right = local_value(solution.regions[j + 1], boundary - solution.regions[j + 1].x_ref);
        const double psi_scale = std::max(std::abs(left.psi), std::abs(right.psi));
        const double dpsi_scale = std::max(std::abs(left.dpsi), std::abs(right.dpsi));
        if (psi_scale > 0.0)
            worst = std::max(worst, std::abs(left.psi - right.psi) / psi_scale);
        if (dpsi_scale > 0.0)
            worst = std::max(worst, std::abs(left.dpsi - right.dpsi) / dpsi_scale);
    }
    return worst;
}

}  // namespace qmotion
