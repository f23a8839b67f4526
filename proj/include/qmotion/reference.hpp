#pragma once

#include <Eigen/Dense>

#include <vector>

#include "qmotion/action_field.hpp"
#include "qmotion/core.hpp"

namespace qmotion {

/// Maps the plane-wave pair (right-moving, left-moving) of the left
/// asymptote, psi = A e^{i kL x} + B e^{-i kL x}, to the pair of the right
/// asymptote in the same global-origin basis.
struct TransferMatrix {
    Eigen::Matrix2cd entries;
    double energy;
    double k_left;
    double k_right;
    /// first and last finite interfaces (0 when there are none)
    double x_first;
    double x_last;
};

/// Propagates (psi, psi') through every region with the exact 2x2
/// free-flight matrices (cos/sin, cosh/sinh, or the linear map for E = V)
/// and converts to plane-wave amplitudes at the outer interfaces.
/// Throws NoPropagatingAsymptote.
TransferMatrix transfer_matrix(const PhysicsParams& params, const PiecewisePotential& potential, double e);

/// Incident-from-left amplitudes. t_amp is re-referenced to the last
/// interface so it is comparable with transmission_reflection().
ScatteringAmplitudes transmission_from(const TransferMatrix& m);

/// Same contract as build_wavefunction, computed from one global linear
/// system over all interface conditions.
RegionSolution reference_wavefunction(const PhysicsParams& params, const PiecewisePotential& potential, double e);

/// [1 + V0^2 sinh^2(kappa a) / (4 E (V0 - E))]^{-1}. Throws EnergyOutOfRange
/// unless 0 < e < v0.
double rect_barrier_T_closed_form(const PhysicsParams& params, double e, double v0, double a);

/// Sample abscissae covering every region: a margin outside the structure
/// plus points on each interface.
std::vector<double> comparison_points(const PiecewisePotential& potential, std::size_t per_region = 64,
                                      double margin = 2.0);

/// max_x |psi_a(x) - psi_b(x)| / |psi_b(x)| over the given points.
double max_relative_deviation(const RegionSolution& a, const RegionSolution& b, const std::vector<double>& xs);

}  // namespace qmotion
