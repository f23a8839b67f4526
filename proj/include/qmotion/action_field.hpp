#pragma once

#include <vector>

#include "qmotion/core.hpp"

namespace qmotion {

/// Wavevector of one constant-V region at energy E. Propagating regions
/// have real k > 0, forbidden regions k = i kappa with kappa > 0, and E = V
/// (to 1e-12 relative) is flagged degenerate with k = 0.
struct RegionWave {
    double v = 0.0;
    Complex k{0.0, 0.0};
    bool degenerate = false;

    bool forbidden() const noexcept { return !degenerate && k.imag() > 0.0; }
    bool propagating() const noexcept { return !degenerate && k.real() > 0.0; }
    double kappa() const noexcept { return k.imag(); }
};

enum class Direction { plus, minus };

/// S(x, tau) = +/- hbar k (x - x_ref) - E tau. With real k this is
/// +/- integral of p dx - E tau; with k = i kappa it is +/- i integral of |p| dx
/// - E tau, the continuation into the forbidden region.
struct ActionField {
    Direction direction;
    Complex momentum;  ///< hbar k
    double energy;

    Complex operator()(double offset, double tau) const
    {
        const double sign = direction == Direction::plus ? 1.0 : -1.0;
        return sign * momentum * offset - energy * tau;
    }
};

/// Per-region amplitudes. Inside region j, with d = x - x_ref,
///   psi = a exp(i S^-/hbar) + b exp(i S^+/hbar) = a e^{-ikd} + b e^{ikd},
/// or psi = a + b d in a degenerate (E = V) region.
struct RegionAmplitudes {
    RegionWave wave;
    Complex a;
    Complex b;
    double x_ref;
};

/// Stationary scattering state: unit amplitude incident from the left and
/// nothing incoming from the right (a = 0 in the last region).
struct RegionSolution {
    PhysicsParams params;
    PiecewisePotential potential;
    double energy;
    std::vector<RegionAmplitudes> regions;
};

struct ScatteringAmplitudes {
    Complex t_amp;  ///< referenced to the last interface, as in RegionSolution
    Complex r_amp;
    double t_prob;
    double r_prob;
};

RegionWave region_wavevector(const PhysicsParams& params, double e, double v);

ActionField action_field(const PhysicsParams& params, const RegionWave& wave, double energy, Direction direction);

/// Matches psi and psi' interface by interface, right to left, starting from
/// a pure outgoing (or decaying) wave in the last region, then normalizes
/// the incident amplitude to one. The first region must be propagating;
/// the last may be propagating or forbidden (total reflection).
/// Throws NoPropagatingAsymptote or DegenerateRegion.
RegionSolution build_wavefunction(const PhysicsParams& params, const PiecewisePotential& potential, double e);

/// psi(x) e^{-iE tau/hbar}
Complex evaluate_psi(const RegionSolution& solution, double x, double tau = 0.0);
Complex evaluate_dpsi(const RegionSolution& solution, double x);

/// Flux-weighted transmission and reflection. Throws NoPropagatingAsymptote
/// unless both outer regions are propagating.
ScatteringAmplitudes transmission_reflection(const RegionSolution& solution);

/// Largest relative mismatch of psi and psi' across the finite interfaces.
double continuity_residual(const RegionSolution& solution);

/// Reference point of region j: its left interface, or 0 for the first.
double region_reference_point(const PiecewisePotential& potential, std::size_t j);

}  // namespace qmotion
