#include "qmotion/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qmotion/action_field.hpp"
#include "qmotion/io.hpp"
#include "qmotion/least_action.hpp"
#include "qmotion/propagator.hpp"
#include "qmotion/reference.hpp"
#include "qmotion/tunneling_time.hpp"

namespace qmotion::cli {

namespace {

constexpr double kCompareThreshold = 1e-10;

struct Common {
    double hbar = 1.0;
    double mass = 1.0;
    std::string output;
    std::string format = "csv";

    PhysicsParams params() const { return {mass, hbar}; }
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--hbar", c.hbar, "Planck constant")->check(CLI::PositiveNumber);
    sub->add_option("--mass", c.mass, "particle mass")->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", c.output, "output file (default: standard output)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

// Thrown for bad flag values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Common& c, std::ostream& out, const std::function<void(std::ostream&)>& writer)
{
    if (c.output.empty()) {
        writer(out);
        return;
    }
    std::ofstream file(c.output, std::ios::binary);
    if (!file)
        throw UsageError("cannot write " + c.output);
    writer(file);
}

void emit_table(const Common& c, std::ostream& out, const io::Table& table)
{
    emit(c, out, [&](std::ostream& s) {
        if (c.format == "json")
            io::write_json(s, table);
        else
            io::write_csv(s, table);
    });
}

// evenly spaced, both ends included
std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    if (n == 1)
        return {lo};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    v.back() = hi;
    return v;
}

Grid1D parse_grid(const std::string& text)
{
    std::stringstream ss(text);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c) || c.find(',') != std::string::npos)
        throw UsageError("--grid expects XMIN,XMAX,NP");
    try {
        std::size_t used = 0;
        const long long np = std::stoll(c, &used);
        if (used != c.size() || np < 2)
            throw UsageError("--grid NP must be an integer >= 2");
        return Grid1D(std::stod(a), std::stod(b), static_cast<std::size_t>(np));
    } catch (const std::logic_error&) {
        throw UsageError("--grid expects XMIN,XMAX,NP");
    } catch (const InvalidArgument& e) {
        throw UsageError(std::string("--grid: ") + e.what());
    }
}

// A malformed potential file is a usage problem, not a numerical one.
PiecewisePotential load(const std::string& path)
{
    try {
        return io::load_potential(path);
    } catch (const Error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

// Runs one library operation; library failures become exit code 2 with the
// operation named in the message.
template <typename F>
auto step(const char* operation, F&& f)
{
    try {
        return f();
    } catch (const InvalidArgument&) {
        throw;
    } catch (const Error& e) {
        throw Error(std::string(operation) + ": " + e.what());
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"qmotion: matter-field tunneling and path-integral toolkit"};
    app.require_subcommand(1);

    Common common;

    // propagate
    auto* propagate = app.add_subcommand("propagate", "time-sliced transition amplitude on a grid");
    std::string prop_potential, prop_grid, prop_mode = "real";
    double prop_t = 1.0, prop_taper = 0.0;
    std::size_t prop_slices = 1;
    int prop_levels = 1;
    bool prop_band_limit = false;
    propagate->add_option("--potential", prop_potential, "potential JSON file")->required();
    propagate->add_option("--t", prop_t, "total time")->required()->check(CLI::PositiveNumber);
    propagate->add_option("--slices", prop_slices, "number of time slices")->required()->check(CLI::Range(1, 1 << 20));
    propagate->add_option("--grid", prop_grid, "XMIN,XMAX,NP")->required();
    propagate->add_option("--mode", prop_mode, "real or imag")->check(CLI::IsMember({"real", "imag"}));
    propagate->add_option("--taper", prop_taper, "edge roll-off width of the quadrature weights")
        ->check(CLI::NonNegativeNumber);
    propagate->add_option("--levels", prop_levels, "Richardson levels in the slice count (1 = none)")
        ->check(CLI::Range(1, 6));
    propagate->add_flag("--band-limit", prop_band_limit, "roll off slice entries that alias on the grid (real time)");
    add_common(propagate, common);

    // path
    auto* path = app.add_subcommand("path", "stationary-action path between fixed endpoints");
    double path_x0 = 0.0, path_x1 = 0.0, path_t = 1.0, path_force = 0.0, path_omega = 0.0;
    std::size_t path_steps = 0;
    std::string path_potential;
    path->add_option("--x0", path_x0, "start position")->required();
    path->add_option("--x1", path_x1, "end position")->required();
    path->add_option("--t", path_t, "duration")->required()->check(CLI::PositiveNumber);
    path->add_option("--steps", path_steps, "number of time steps")->required()->check(CLI::Range(2, 100000000));
    path->add_option("--potential", path_potential, "piecewise potential JSON file (optional)");
    path->add_option("--force", path_force, "adds V = g x");
    path->add_option("--omega", path_omega, "adds V = m omega^2 x^2 / 2")->check(CLI::NonNegativeNumber);
    add_common(path, common);

    // wavefunction
    auto* wave = app.add_subcommand("wavefunction", "stationary scattering state");
    std::string wave_potential;
    double wave_energy = 0.0;
    std::optional<double> wave_xmin, wave_xmax;
    std::size_t wave_points = 401;
    wave->add_option("--potential", wave_potential, "potential JSON file")->required();
    wave->add_option("--energy", wave_energy, "energy")->required();
    wave->add_option("--xmin", wave_xmin, "first sample");
    wave->add_option("--xmax", wave_xmax, "last sample");
    wave->add_option("--points", wave_points, "number of samples")->check(CLI::Range(2, 10000000));
    add_common(wave, common);

    // scan
    auto* scan = app.add_subcommand("scan", "transmission and reflection over an energy range");
    std::string scan_potential;
    double scan_emin = 0.0, scan_emax = 0.0;
    std::size_t scan_steps = 0;
    scan->add_option("--potential", scan_potential, "potential JSON file")->required();
    scan->add_option("--emin", scan_emin, "lowest energy")->required();
    scan->add_option("--emax", scan_emax, "highest energy")->required();
    scan->add_option("--steps", scan_steps, "number of energies")->required()->check(CLI::Range(1, 100000000));
    add_common(scan, common);

    // hartman
    auto* hartman = app.add_subcommand("hartman", "phase time against rectangular-barrier width");
    double h_v0 = 0.0, h_energy = 0.0, h_wmin = 0.0, h_wmax = 0.0;
    std::size_t h_steps = 0;
    hartman->add_option("--v0", h_v0, "barrier height")->required();
    hartman->add_option("--energy", h_energy, "energy (0 < E < V0)")->required();
    hartman->add_option("--wmin", h_wmin, "smallest width")->required()->check(CLI::NonNegativeNumber);
    hartman->add_option("--wmax", h_wmax, "largest width")->required()->check(CLI::NonNegativeNumber);
    hartman->add_option("--steps", h_steps, "number of widths")->required()->check(CLI::Range(1, 100000000));
    add_common(hartman, common);

    // compare
    auto* compare = app.add_subcommand("compare", "matter-field wavefunction against the Schrodinger reference");
    std::string cmp_potential;
    double cmp_energy = 0.0;
    compare->add_option("--potential", cmp_potential, "potential JSON file")->required();
    compare->add_option("--energy", cmp_energy, "energy")->required();
    add_common(compare, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        err << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const CLI::App* failing = &app;
        for (auto* sub : app.get_subcommands())
            failing = sub;
        err << failing->help();
        return invalid_arguments;
    }

    const PhysicsParams params = common.params();
    try {
        if (*propagate) {
            const auto potential = load(prop_potential);
            const Grid1D grid = parse_grid(prop_grid);
            PropagatorConfig config;
            config.n_slices = prop_slices;
            config.total_time = prop_t;
            config.mode = prop_mode == "imag" ? TimeMode::imaginary_time : TimeMode::real_time;
            config.edge_taper = prop_taper;
            config.band_limit = prop_band_limit;
            const PotentialFn v = [&potential](double x) { return potential(x); };
            const auto k = step("timeslice_propagator",
                                [&] { return extrapolated_propagator(params, v, grid, config, prop_levels); });
            emit_table(common, out, io::kernel_table(k));
        } else if (*path) {
            SmoothPotential v = SmoothPotential::free();
            std::optional<PiecewisePotential> piecewise;
            if (!path_potential.empty())
                piecewise = load(path_potential);
            const double spring = params.mass * path_omega * path_omega;
            const double g = path_force;
            v.value = [piecewise, spring, g](double x) {
                return (piecewise ? (*piecewise)(x) : 0.0) + g * x + 0.5 * spring * x * x;
            };
            v.gradient = [spring, g](double x) { return g + spring * x; };
            v.curvature = [spring](double) { return spring; };
            const auto p = step("solve_classical_path",
                                [&] { return solve_classical_path(params, v, path_x0, path_x1, path_t, path_steps); });
            emit_table(common, out, io::path_table(p));
        } else if (*wave) {
            const auto potential = load(wave_potential);
            const auto sol = step("build_wavefunction", [&] { return build_wavefunction(params, potential, wave_energy); });
            const auto b = potential.boundaries();
            const double lo = wave_xmin.value_or(b.empty() ? -5.0 : b.front() - 5.0);
            const double hi = wave_xmax.value_or(b.empty() ? 5.0 : b.back() + 5.0);
            if (!(lo < hi))
                throw UsageError("--xmin must be below --xmax");
            emit_table(common, out, io::wavefunction_table(sol, linspace(lo, hi, wave_points)));
        } else if (*scan) {
            const auto potential = load(scan_potential);
            if (scan_emax < scan_emin)
                throw UsageError("--emax must not be below --emin");
            io::Table t{{"E", "T", "R"}, {}};
            for (double e : linspace(scan_emin, scan_emax, scan_steps)) {
                const auto tr = step("transmission_reflection", [&] {
                    return transmission_reflection(build_wavefunction(params, potential, e));
                });
                t.add_row({e, tr.t_prob, tr.r_prob});
            }
            emit_table(common, out, t);
        } else if (*hartman) {
            if (h_wmax < h_wmin)
                throw UsageError("--wmax must not be below --wmin");
            const auto widths = linspace(h_wmin, h_wmax, h_steps);
            const auto result = step("hartman_scan", [&] { return hartman_scan(params, h_v0, h_energy, widths); });
            emit_table(common, out, io::time_scan_table(result));
        } else if (*compare) {
            const auto potential = load(cmp_potential);
            const auto field = step("build_wavefunction", [&] { return build_wavefunction(params, potential, cmp_energy); });
            const auto reference =
                step("reference_wavefunction", [&] { return reference_wavefunction(params, potential, cmp_energy); });
            const double dev = max_relative_deviation(field, reference, comparison_points(potential));
            const std::string line = "max_relative_deviation=" + io::format_number(dev) + "\n";
            if (common.format == "json") {
                io::Table t{{"max_relative_deviation"}, {}};
                t.add_row({dev});
                emit_table(common, out, t);
            } else {
                emit(common, out, [&](std::ostream& s) { s << line; });
            }
            if (!common.output.empty())
                out << line;
            return dev < kCompareThreshold ? ok : comparison_failed;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return invalid_arguments;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return invalid_arguments;
    } catch (const Error& e) {
        err << "numerical failure in " << e.what() << '\n';
        return numerical_failure;
    }
    return ok;
}

}  // namespace qmotion::cli
