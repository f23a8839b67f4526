#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmotion {

using Complex = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Errors. Every failure raised by the library derives from qmotion::Error so
// callers (the CLI in particular) can separate numerical failures from
// programming errors.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QMOTION_DEFINE_ERROR(Name)                 \
    class Name : public Error {                    \
    public:                                        \
        using Error::Error;                        \
    }

QMOTION_DEFINE_ERROR(InvalidArgument);
QMOTION_DEFINE_ERROR(GapError);
QMOTION_DEFINE_ERROR(OverlapError);
QMOTION_DEFINE_ERROR(UnboundedError);
QMOTION_DEFINE_ERROR(NonPositiveEps);
QMOTION_DEFINE_ERROR(NonPositiveTime);
QMOTION_DEFINE_ERROR(GridTooCoarse);
QMOTION_DEFINE_ERROR(CausticError);
QMOTION_DEFINE_ERROR(GridMismatch);
QMOTION_DEFINE_ERROR(NoConvergence);
QMOTION_DEFINE_ERROR(NotForbidden);
QMOTION_DEFINE_ERROR(DegenerateRegion);
QMOTION_DEFINE_ERROR(NoPropagatingAsymptote);
QMOTION_DEFINE_ERROR(EnergyOutOfRange);
QMOTION_DEFINE_ERROR(PhaseWrapError);

#undef QMOTION_DEFINE_ERROR

/// Mass and Planck constant. Natural units (1, 1) by default.
struct PhysicsParams {
    double mass = 1.0;
    double hbar = 1.0;

    /// Throws InvalidArgument unless both values are finite and positive.
    void validate() const;
};

/// Uniform grid on [x_min, x_max] with n_points nodes, endpoints included.
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_points);

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t size() const noexcept { return n_points_; }
    double spacing() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_points_ - 1); }
    double x(std::size_t i) const noexcept { return x_min_ + spacing() * static_cast<double>(i); }

    /// Trapezoid quadrature weights (dx, half dx at the two ends).
    std::vector<double> trapezoid_weights() const;

    /// Indices whose abscissa lies in the central two-thirds of the grid.
    std::vector<std::size_t> interior_indices() const;

    friend bool operator==(const Grid1D&, const Grid1D&) = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_points_;
};

struct Region {
    double x_left;
    double x_right;
    double v;

    double width() const noexcept { return x_right - x_left; }
    friend bool operator==(const Region&, const Region&) = default;
};

/// Piecewise-constant potential covering the whole real line. Construct
/// through validate_potential(); regions are contiguous and ordered.
class PiecewisePotential {
public:
    const std::vector<Region>& regions() const noexcept { return regions_; }
    std::size_t size() const noexcept { return regions_.size(); }
    const Region& operator[](std::size_t j) const { return regions_[j]; }

    /// Index of the region containing x. Interior boundaries belong to the
    /// region on their right.
    std::size_t region_index(double x) const;
    double operator()(double x) const { return regions_[region_index(x)].v; }

    /// Finite interfaces, in increasing order.
    std::vector<double> boundaries() const;

    friend bool operator==(const PiecewisePotential&, const PiecewisePotential&) = default;

private:
    friend PiecewisePotential validate_potential(std::vector<Region> regions);
    explicit PiecewisePotential(std::vector<Region> regions) : regions_(std::move(regions)) {}

    std::vector<Region> regions_;
};

/// Sorts the regions by left edge and checks that they tile the real line.
/// Throws GapError, OverlapError or UnboundedError.
PiecewisePotential validate_potential(std::vector<Region> regions);

/// Convenience constructors used throughout tests and the CLI.
PiecewisePotential free_potential(double v = 0.0);
PiecewisePotential rectangular_barrier(double v0, double width, double x_left = 0.0);
PiecewisePotential step_potential(double v_left, double v_right, double x_step = 0.0);

/// Sampled potential: value, first and (optionally) second derivative.
/// An empty curvature makes consumers fall back to finite differences of
/// the gradient.
struct SmoothPotential {
    std::function<double(double)> value;
    std::function<double(double)> gradient;
    std::function<double(double)> curvature;

    static SmoothPotential free();
    /// V(x) = g x
    static SmoothPotential linear(double g);
    /// V(x) = k x^2 / 2
    static SmoothPotential harmonic(double spring);
    /// Piecewise-constant V with zero gradient inside each region.
    static SmoothPotential from(const PiecewisePotential& potential);

    double curvature_at(double x) const;
};

struct StateVector {
    Grid1D grid;
    std::vector<Complex> values;

    StateVector(Grid1D g, std::vector<Complex> v);
    static StateVector sample(const Grid1D& grid, const std::function<Complex(double)>& f);

    /// sqrt(sum |psi|^2 w) with trapezoid weights.
    double norm() const;
};

}  // namespace qmotion
