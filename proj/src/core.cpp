#include "qmotion/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qmotion {

void PhysicsParams::validate() const
{
    if (!(std::isfinite(mass) && mass > 0.0))
        throw InvalidArgument("mass must be positive and finite");
    if (!(std::isfinite(hbar) && hbar > 0.0))
        throw InvalidArgument("hbar must be positive and finite");
}

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points)
{
    if (n_points < 2)
        throw InvalidArgument("grid needs at least two points");
    if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max))
        throw InvalidArgument("grid requires finite x_min < x_max");
}

std::vector<double> Grid1D::trapezoid_weights() const
{
    std::vector<double> w(n_points_, spacing());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

std::vector<std::size_t> Grid1D::interior_indices() const
{
    const double center = 0.5 * (x_min_ + x_max_);
    const double half = (x_max_ - x_min_) / 3.0;
    // small slack so that nodes sitting exactly on the boundary are kept
    const double tol = 1e-12 * (x_max_ - x_min_);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n_points_; ++i)
        if (std::abs(x(i) - center) <= half + tol)
            idx.push_back(i);
    return idx;
}

std::size_t PiecewisePotential::region_index(double x) const
{
    // first region whose right edge is strictly beyond x; the right region
    // owns an interface point
    auto it = std::upper_bound(regions_.begin(), regions_.end(), x,
                               [](double value, const Region& r) { return value < r.x_right; });
    if (it == regions_.end())
        return regions_.size() - 1;
    return static_cast<std::size_t>(it - regions_.begin());
}

std::vector<double> PiecewisePotential::boundaries() const
{
    std::vector<double> b;
    for (std::size_t j = 0; j + 1 < regions_.size(); ++j)
        b.push_back(regions_[j].x_right);
    return b;
}

PiecewisePotential validate_potential(std::vector<Region> regions)
{
    if (regions.empty())
        throw InvalidArgument("potential has no regions");
    for (const auto& r : regions) {
        if (std::isnan(r.x_left) || std::isnan(r.x_right) || !std::isfinite(r.v))
            throw InvalidArgument("potential region has non-numeric fields");
        if (!(r.x_left < r.x_right)) {
            std::ostringstream msg;
            msg << "region [" << r.x_left << ", " << r.x_right << "] is empty or reversed";
            throw OverlapError(msg.str());
        }
    }
    std::stable_sort(regions.begin(), regions.end(),
                     [](const Region& a, const Region& b) { return a.x_left < b.x_left; });

    if (regions.front().x_left != -kInf || regions.back().x_right != kInf)
        throw UnboundedError("first region must start at -inf and last must end at +inf");

    for (std::size_t j = 0; j + 1 < regions.size(); ++j) {
        const double right = regions[j].x_right;
        const double next_left = regions[j + 1].x_left;
        if (right < next_left) {
            std::ostringstream msg;
            msg << "gap between " << right << " and " << next_left;
            throw GapError(msg.str());
        }
        if (right > next_left) {
            std::ostringstream msg;
            msg << "regions overlap on [" << next_left << ", " << right << "]";
            throw OverlapError(msg.str());
        }
        if (!std::isfinite(right))
            throw OverlapError("interior interface must be finite");
    }
    return PiecewisePotential(std::move(regions));
}

PiecewisePotential free_potential(double v)
{
    return validate_potential({{-kInf, kInf, v}});
}

PiecewisePotential rectangular_barrier(double v0, double width, double x_left)
{
    if (width == 0.0)
        return free_potential();
    return validate_potential({{-kInf, x_left, 0.0}, {x_left, x_left + width, v0}, {x_left + width, kInf, 0.0}});
}

PiecewisePotential step_potential(double v_left, double v_right, double x_step)
{
    return validate_potential({{-kInf, x_step, v_left}, {x_step, kInf, v_right}});
}

SmoothPotential SmoothPotential::free()
{
    return {[](double) { return 0.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

SmoothPotential SmoothPotential::linear(double g)
{
    return {[g](double x) { return g * x; }, [g](double) { return g; }, [](double) { return 0.0; }};
}

SmoothPotential SmoothPotential::harmonic(double spring)
{
    return {[spring](double x) { return 0.5 * spring * x * x; },
            [spring](double x) { return spring * x; },
            [spring](double) { return spring; }};
}

SmoothPotential SmoothPotential::from(const PiecewisePotential& potential)
{
    return {[potential](double x) { return potential(x); }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}

double SmoothPotential::curvature_at(double x) const
{
    if (curvature)
        return curvature(x);
    const double h = 1e-5 * (1.0 + std::abs(x));
    return (gradient(x + h) - gradient(x - h)) / (2.0 * h);
}

StateVector::StateVector(Grid1D g, std::vector<Complex> v) : grid(g), values(std::move(v))
{
    if (values.size() != grid.size())
        throw GridMismatch("state length does not match grid");
}

StateVector StateVector::sample(const Grid1D& grid, const std::function<Complex(double)>& f)
{
    std::vector<Complex> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v[i] = f(grid.x(i));
    return StateVector(grid, std::move(v));
}

double StateVector::norm() const
{
    const auto w = grid.trapezoid_weights();
    double s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
        s += std::norm(values[i]) * w[i];
    return std::sqrt(s);
}

}  // namespace qmotion
