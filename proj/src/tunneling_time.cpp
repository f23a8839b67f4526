#include "qmotion/tunneling_time.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmotion {

namespace {

Complex transmitted(const PhysicsParams& params, const PiecewisePotential& potential, double e)
{
    return transmission_reflection(build_wavefunction(params, potential, e)).t_amp;
}

double phase_derivative(const PhysicsParams& params, const PiecewisePotential& potential, double e, double de)
{
    const Complex lo = transmitted(params, potential, e - de);
    const Complex mid = transmitted(params, potential, e);
    const Complex hi = transmitted(params, potential, e + de);
    // unwrap through the midpoint
    const double total = std::arg(mid / lo) + std::arg(hi / mid);
    if (std::abs(total) >= kPi) {
        std::ostringstream msg;
        msg << "transmission phase changes by " << total << " across +/-" << de;
        throw PhaseWrapError(msg.str());
    }
    return total / (2.0 * de);
}

}  // namespace

double phase_time(const PhysicsParams& params, const PiecewisePotential& potential, double e,
                  const PhaseTimeOptions& options)
{
    params.validate();
    if (!(options.de > 0.0))
        throw InvalidArgument("energy step must be positive");
    double de = options.de;
    double derivative = 0.0;
    for (int attempt = 0;; ++attempt) {
        try {
            derivative = phase_derivative(params, potential, e, de);
            break;
        } catch (const PhaseWrapError&) {
            if (attempt >= options.max_retries)
                throw;
            de *= 0.5;
        }
    }
    double tau = params.hbar * derivative;
    if (options.delay) {
        const auto b = potential.boundaries();
        if (!b.empty()) {
            const double k = region_wavevector(params, e, potential[0].v).k.real();
            tau -= (b.back() - b.front()) * params.mass / (params.hbar * k);
        }
    }
    return tau;
}

TimeScanResult hartman_scan(const PhysicsParams& params, double v0, double e, const std::vector<double>& widths)
{
    if (!(e > 0.0 && e < v0))
        throw EnergyOutOfRange("Hartman scan needs 0 < E < V0");
    if (widths.empty())
        throw InvalidArgument("no widths to scan");
    for (std::size_t i = 0; i < widths.size(); ++i) {
        if (!(widths[i] >= 0.0))
            throw InvalidArgument("barrier widths must be non-negative");
        if (i > 0 && !(widths[i] > widths[i - 1]))
            throw InvalidArgument("barrier widths must be strictly increasing");
    }

    TimeScanResult out;
    for (double w : widths) {
        const auto barrier = rectangular_barrier(v0, w);
        out.abscissa.push_back(w);
        out.tau_phase.push_back(phase_time(params, barrier, e));
        out.t_prob.push_back(transmission_reflection(build_wavefunction(params, barrier, e)).t_prob);
    }
    const double tau_last = out.tau_phase.back();
    if (tau_last != 0.0) {
        const double tau_half = phase_time(params, rectangular_barrier(v0, 0.5 * widths.back()), e);
        out.saturation = std::abs(tau_last - tau_half) / std::abs(tau_last);
    }
    return out;
}

double phase_flatness(const RegionSolution& solution, std::size_t region_index, std::size_t samples)
{
    if (region_index >= solution.regions.size())
        throw InvalidArgument("region index out of range");
    const auto& region = solution.regions[region_index];
    if (!region.wave.forbidden())
        throw NotForbidden("phase flatness is defined for E < V regions only");
    if (samples < 2)
        throw InvalidArgument("need at least two samples");

    const Region& r = solution.potential[region_index];
    const double x_left = r.x_left;
    const double x_right = std::isfinite(r.x_right) ? r.x_right : x_left + 10.0 / region.wave.kappa();
    const Complex anchor = evaluate_psi(solution, x_left);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        // stay strictly inside a finite region: its right edge belongs to the
        // next region
        const double s = static_cast<double>(i) / static_cast<double>(samples);
        const double x = x_left + s * (x_right - x_left);
        double d = std::abs(std::arg(evaluate_psi(solution, x) / anchor));
        d = std::fmod(d, kPi);
        worst = std::max(worst, std::min(d, kPi - d));
    }
    return worst;
}

std::vector<double> phase_flatness_scan(const PhysicsParams& params, const PiecewisePotential& potential,
                                        std::size_t region_index, const std::vector<double>& energies)
{
    std::vector<double> out;
    out.reserve(energies.size());
    for (double e : energies)
        out.push_back(phase_flatness(build_wavefunction(params, potential, e), region_index));
    return out;
}

}  // namespace qmotion
