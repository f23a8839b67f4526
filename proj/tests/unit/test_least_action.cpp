#include <doctest.h>

#include <cmath>
#include <random>

#include "qmotion/least_action.hpp"

using namespace qmotion;

namespace {

const PhysicsParams natural{};

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

double harmonic_action(double m, double w, double x0, double x1, double t)
{
    return 0.5 * m * w * ((x0 * x0 + x1 * x1) * std::cos(w * t) - 2.0 * x0 * x1) / std::sin(w * t);
}

Path line(double x0, double x1, double t, std::size_t n)
{
    Path p;
    for (std::size_t k = 0; k <= n; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(n);
        p.times.push_back(t * s);
        p.positions.push_back(x0 + (x1 - x0) * s);
    }
    return p;
}

}  // namespace

TEST_CASE("free path is a straight line")
{
    const auto p = solve_classical_path(natural, SmoothPotential::free(), 0.0, 1.0, 1.0, 10);
    REQUIRE(p.size() == 11);
    for (std::size_t k = 0; k < p.size(); ++k)
        CHECK(p.positions[k] == doctest::Approx(p.times[k]).epsilon(1e-12));
    CHECK(p.positions.front() == 0.0);
    CHECK(p.positions.back() == 1.0);
}

TEST_CASE("constant force gives the parabola")
{
    const auto p = solve_classical_path(natural, SmoothPotential::linear(1.0), 0.0, 0.0, 2.0, 40);
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double tau = p.times[k];
        CHECK(p.positions[k] == doctest::Approx(-0.5 * tau * (tau - 2.0)).epsilon(1e-10));
    }
    CHECK(max_abs(action_gradient(natural, SmoothPotential::linear(1.0), p)) < 1e-8);
}

TEST_CASE("harmonic boundary-value path")
{
    const auto v = SmoothPotential::harmonic(1.0);
    const auto p = solve_classical_path(natural, v, 0.0, 0.5, 1.0, 2000);
    double worst = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        worst = std::max(worst, std::abs(p.positions[k] - 0.5 * std::sin(p.times[k]) / std::sin(1.0)));
    CHECK(worst < 1e-7);
    CHECK(max_abs(action_gradient(natural, v, p)) < 1e-8);
    CHECK(action(natural, v, p) ==
          doctest::Approx(harmonic_action(1.0, 1.0, 0.0, 0.5, 1.0)).epsilon(1e-6));
}

TEST_CASE("discrete action error falls as 1/n^2")
{
    const auto v = SmoothPotential::harmonic(1.0);
    const double exact = harmonic_action(1.0, 1.0, 0.3, 0.5, 1.0);
    const double e1 = std::abs(action(natural, v, solve_classical_path(natural, v, 0.3, 0.5, 1.0, 100)) - exact);
    const double e2 = std::abs(action(natural, v, solve_classical_path(natural, v, 0.3, 0.5, 1.0, 200)) - exact);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.01));
}

TEST_CASE("free action values")
{
    const auto p = line(0.0, 1.0, 1.0, 7);
    CHECK(action(natural, SmoothPotential::free(), p) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(action(natural, SmoothPotential::free(), p.reversed()) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(action({2.0, 1.0}, SmoothPotential::free(), p) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("action gradient: straight line, locality and finite differences")
{
    const auto free = SmoothPotential::free();
    auto p = line(0.0, 1.0, 1.0, 10);
    CHECK(max_abs(action_gradient(natural, free, p)) < 1e-12);

    p.positions[4] += 0.01;
    const auto g = action_gradient(natural, free, p);
    REQUIRE(g.size() == 9);
    for (std::size_t k = 1; k <= 9; ++k) {
        const bool near = k >= 3 && k <= 5;
        if (near)
            CHECK(std::abs(g[k - 1]) > 1e-6);
        else
            CHECK(g[k - 1] == 0.0);
    }

    const SmoothPotential quartic{[](double x) { return x * x * x * x - x; }, [](double x) { return 4 * x * x * x - 1; },
                                  {}};
    auto q = line(-0.3, 0.8, 1.3, 12);
    for (std::size_t k = 1; k + 1 < q.size(); ++k)
        q.positions[k] += 0.05 * std::sin(3.0 * static_cast<double>(k));
    const auto grad = action_gradient(natural, quartic, q);
    const double h = 1e-6;
    for (std::size_t k = 1; k + 1 < q.size(); ++k) {
        auto plus = q;
        auto minus = q;
        plus.positions[k] += h;
        minus.positions[k] -= h;
        const double fd = (action(natural, quartic, plus) - action(natural, quartic, minus)) / (2 * h);
        CHECK(grad[k - 1] == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("solved path is a minimum below the first conjugate point")
{
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> noise(0.0, 1e-3);
    for (const auto& v : {SmoothPotential::free(), SmoothPotential::harmonic(1.0)}) {
        const auto p = solve_classical_path(natural, v, 0.2, -0.4, 2.5, 64);
        const double s = action(natural, v, p);
        for (int trial = 0; trial < 20; ++trial) {
            auto q = p;
            for (std::size_t k = 1; k + 1 < q.size(); ++k)
                q.positions[k] += noise(rng);
            CHECK(s <= action(natural, v, q));
        }
    }
}

TEST_CASE("time reversal of the boundary-value problem")
{
    const auto v = SmoothPotential::harmonic(1.0);
    const auto fwd = solve_classical_path(natural, v, -0.2, 0.9, 1.5, 50);
    const auto bwd = solve_classical_path(natural, v, 0.9, -0.2, 1.5, 50);
    const auto rev = fwd.reversed();
    for (std::size_t k = 0; k < bwd.size(); ++k)
        CHECK(std::abs(bwd.positions[k] - rev.positions[k]) < 1e-10);
}

TEST_CASE("solver input checks")
{
    CHECK_THROWS_AS(solve_classical_path(natural, SmoothPotential::free(), 0, 1, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(solve_classical_path(natural, SmoothPotential::free(), 0, 1, 0.0, 10), NonPositiveTime);
    SolverOptions tight;
    tight.max_iterations = 0;
    CHECK_THROWS_AS(solve_classical_path(natural, SmoothPotential::harmonic(1.0), 0, 1, 1.0, 10, tight), NoConvergence);
    Path bad{{0.0, 0.0}, {1.0, 2.0}};
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("per-slice extremum recursion")
{
    const auto free = discrete_extremum_path(natural, [](double) { return 0.0; }, 1.5, 1.0, 5);
    for (double x : free.positions)
        CHECK(x == 1.5);

    const auto lin = discrete_extremum_path(natural, [](double) { return 1.0; }, 0.0, 1.0, 10);
    REQUIRE(lin.size() == 11);
    CHECK(lin.positions[1] == doctest::Approx(-0.005).epsilon(1e-14));
    CHECK(lin.times[1] == doctest::Approx(0.1));
}

TEST_CASE("recursion lacks the velocity carried by the classical path")
{
    // Marching from rest under V = g x reaches x_cl(t) = -g t^2 / (2m), while
    // the recursion only moves g eps^2 / (2m) per slice, so the endpoints
    // differ by g t (t - eps) / (2m).
    const double g = 1.0, t = 1.0;
    const std::size_t n = 10;
    const double eps = t / n;
    const auto d = recursion_divergence(natural, SmoothPotential::linear(g), 0.0, t, n);
    CHECK(d.endpoint == doctest::Approx(g * t * (t - eps) / 2.0).epsilon(1e-9));
    CHECK(d.max_abs >= std::abs(d.endpoint) - 1e-12);
    CHECK(d.max_abs > 0.3);

    const auto none = recursion_divergence(natural, SmoothPotential::free(), 0.7, 1.0, 8);
    CHECK(none.max_abs < 1e-12);
}

TEST_CASE("complex action conventions")
{
    const auto p = line(0.0, 1.0, 1.0, 16);
    const auto free = SmoothPotential::free();
    CHECK(complex_action(natural, free, p) == Complex(0.5, -0.5));
    const Complex rev = complex_action(natural, free, p, ComplexActionConvention::plus_i_reversed);
    CHECK(rev.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rev.imag() == doctest::Approx(0.5).epsilon(1e-14));

    const auto v = SmoothPotential::harmonic(1.0);
    const auto cl = solve_classical_path(natural, v, 0.1, 0.6, 1.0, 200);
    for (auto convention : {ComplexActionConvention::one_minus_i, ComplexActionConvention::plus_i_reversed}) {
        double worst = 0.0;
        for (const Complex& g : complex_action_gradient(natural, v, cl, convention))
            worst = std::max({worst, std::abs(g.real()), std::abs(g.imag())});
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("forbidden action")
{
    CHECK(forbidden_action(natural, rectangular_barrier(1.0, 1.0), 0.5, 0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(forbidden_action(natural, rectangular_barrier(1.0, 1.0), 1.0, 0.0, 1.0), NotForbidden);
    CHECK_THROWS_AS(forbidden_action(natural, rectangular_barrier(1.0, 1.0), 0.5, -0.5, 1.0), NotForbidden);
    CHECK_THROWS_AS(forbidden_action(natural, rectangular_barrier(1.0, 1.0), 0.5, 1.0, 0.0), InvalidArgument);

    const auto two = validate_potential({{-kInf, 0.0, 0.0}, {0.0, 1.0, 1.0}, {1.0, 2.0, 2.0}, {2.0, kInf, 0.0}});
    CHECK(forbidden_action(natural, two, 0.5, 0.0, 2.0) == doctest::Approx(1.0 + std::sqrt(3.0)).epsilon(1e-14));

    const double whole = forbidden_action(natural, two, 0.5, 0.1, 1.9);
    const std::vector<double> cuts{0.1, 0.4, 1.0, 1.3, 1.9};
    double pieces = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        pieces += forbidden_action(natural, two, 0.5, cuts[i], cuts[i + 1]);
    CHECK(pieces == doctest::Approx(whole).epsilon(1e-14));
}
