#pragma once

#include <vector>

#include "qmotion/action_field.hpp"
#include "qmotion/core.hpp"

namespace qmotion {

struct TimeScanResult {
    std::vector<double> abscissa;
    std::vector<double> tau_phase;
    std::vector<double> t_prob;
    /// |tau(w_last) - tau(w_last/2)| / tau(w_last); zero if tau(w_last) is zero
    double saturation = 0.0;
};

struct PhaseTimeOptions {
    double de = 1e-6;
    /// subtract the free-flight time across the structure
    bool delay = false;
    int max_retries = 3;
};

/// Wigner phase time hbar d(arg t)/dE by central differences, with the
/// transmission phase referenced to the last interface so that the result
/// is the traversal time of the structure. The step halves on an unwrap
/// ambiguity; PhaseWrapError once the retries are spent.
double phase_time(const PhysicsParams& params, const PiecewisePotential& potential, double e,
                  const PhaseTimeOptions& options = {});

/// Phase time and transmission for rectangular barriers [0, w] of height v0.
/// Width 0 is free space. Throws EnergyOutOfRange unless 0 < e < v0.
TimeScanResult hartman_scan(const PhysicsParams& params, double v0, double e, const std::vector<double>& widths);

/// max over the region of |arg psi(x) - arg psi(x_left)|, folded into
/// [0, pi/2] (a sign flip of a real exponential is not a phase gradient).
/// Semi-infinite regions are sampled over ten decay lengths.
/// Throws NotForbidden.
double phase_flatness(const RegionSolution& solution, std::size_t region_index, std::size_t samples = 257);

/// phase_flatness of one region for each energy.
std::vector<double> phase_flatness_scan(const PhysicsParams& params, const PiecewisePotential& potential,
                                        std::size_t region_index, const std::vector<double>& energies);

}  // namespace qmotion
