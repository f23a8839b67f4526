#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qmotion/cli.hpp"
#include "qmotion/io.hpp"

using namespace qmotion;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "qmotion");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data_path(const std::string& name) { return std::string(QMOTION_TEST_DATA_DIR) + "/" + name; }

std::string write_file(const std::string& name, const std::string& text)
{
    const auto path = data_path(name);
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        out.push_back(l);
    return out;
}

const char* kBarrierJson = R"({"regions":[{"xl":"-inf","xr":0,"v":0},{"xl":0,"xr":1,"v":1},{"xl":1,"xr":"inf","v":0}]})";
const char* kFreeJson = R"({"regions":[{"xl":"-inf","xr":"inf","v":0}]})";

}  // namespace

TEST_CASE("number formatting")
{
    CHECK(io::format_number(0.5) == "0.5");
    CHECK(io::format_number(1.0) == "1");
    CHECK(io::format_number(0.1) == "0.10000000000000001");
    CHECK(io::format_number(-0.25) == "-0.25");
    CHECK(io::format_number(1e300) == "1.0000000000000001e+300");
    CHECK(io::format_number(kInf) == "inf");
}

TEST_CASE("csv and json tables")
{
    io::Table t{{"a", "b"}, {}};
    t.add_row({1.0, 0.25});
    t.add_row({-3.0, kInf});
    CHECK_THROWS_AS(t.add_row({1.0}), InvalidArgument);
    std::ostringstream csv, json;
    io::write_csv(csv, t);
    io::write_json(json, t);
    CHECK(csv.str() == "a,b\n1,0.25\n-3,inf\n");
    CHECK(json.str() == "{\"a\":[1,-3],\"b\":[0.25,null]}\n");
}

TEST_CASE("potential documents")
{
    const auto p = io::parse_potential(kBarrierJson);
    CHECK(p == rectangular_barrier(1.0, 1.0));
    CHECK(io::parse_potential(io::potential_to_json(p)) == p);
    CHECK_THROWS_AS(io::parse_potential("{"), InvalidArgument);
    CHECK_THROWS_AS(io::parse_potential(R"({"regions":[{"xl":"-inf","xr":"inf"}]})"), InvalidArgument);
    CHECK_THROWS_AS(io::parse_potential(R"({"regions":[{"xl":"-oo","xr":"inf","v":0}]})"), InvalidArgument);
    CHECK_THROWS_AS(io::parse_potential(R"({"zones":[]})"), InvalidArgument);
    CHECK_THROWS_AS(io::parse_potential(R"({"regions":[{"xl":"-inf","xr":0,"v":0},{"xl":0.5,"xr":"inf","v":0}]})"),
                    GapError);
    CHECK_THROWS_AS(io::load_potential(data_path("does_not_exist.json")), InvalidArgument);
}

TEST_CASE("cli compare on the rectangular barrier")
{
    const auto pot = write_file("barrier.json", kBarrierJson);
    const auto r = run_cli({"compare", "--potential", pot, "--energy", "0.5"});
    CHECK(r.code == cli::ok);
    REQUIRE(r.out.rfind("max_relative_deviation=", 0) == 0);
    CHECK(std::stod(r.out.substr(23)) < 1e-10);
}

TEST_CASE("cli scan of free space transmits everything")
{
    const auto pot = write_file("free.json", kFreeJson);
    const auto r = run_cli({"scan", "--potential", pot, "--emin", "0.1", "--emax", "3", "--steps", "7"});
    REQUIRE(r.code == cli::ok);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 8);
    CHECK(l[0] == "E,T,R");
    for (std::size_t i = 1; i < l.size(); ++i) {
        const auto first = l[i].find(',');
        const auto second = l[i].find(',', first + 1);
        CHECK(l[i].substr(first + 1, second - first - 1) == "1");
        CHECK(l[i].substr(second + 1) == "0");
    }
}

TEST_CASE("cli missing option prints usage")
{
    const auto pot = write_file("barrier.json", kBarrierJson);
    const auto r = run_cli({"compare", "--potential", pot});
    CHECK(r.code == cli::invalid_arguments);
    CHECK(r.err.find("--energy") != std::string::npos);
    CHECK(r.err.find("Usage") != std::string::npos);
    CHECK(r.out.empty());

    CHECK(run_cli({}).code == cli::invalid_arguments);
    CHECK(run_cli({"fly"}).code == cli::invalid_arguments);
    CHECK(run_cli({"scan", "--potential", pot, "--emin", "1", "--emax", "0", "--steps", "2"}).code ==
          cli::invalid_arguments);
    CHECK(run_cli({"propagate", "--potential", pot, "--t", "1", "--slices", "1", "--grid", "0,1"}).code ==
          cli::invalid_arguments);
    CHECK(run_cli({"compare", "--potential", data_path("nope.json"), "--energy", "1"}).code == cli::invalid_arguments);
    CHECK(run_cli({"compare", "--potential", pot, "--energy", "1", "--mass", "-1"}).code == cli::invalid_arguments);
}

TEST_CASE("cli numerical failure names the operation")
{
    const auto pot = write_file("step_down.json",
                                R"({"regions":[{"xl":"-inf","xr":0,"v":1},{"xl":0,"xr":"inf","v":0}]})");
    const auto r = run_cli({"wavefunction", "--potential", pot, "--energy", "0.5"});
    CHECK(r.code == cli::numerical_failure);
    CHECK(r.err.find("build_wavefunction") != std::string::npos);

    const auto free = write_file("free.json", kFreeJson);
    const auto coarse = run_cli({"propagate", "--potential", free, "--t", "1", "--slices", "100", "--grid", "-8,8,32"});
    CHECK(coarse.code == cli::numerical_failure);
    CHECK(coarse.err.find("timeslice_propagator") != std::string::npos);
}

TEST_CASE("cli compare above threshold exits 3")
{
    // the exit code must follow the printed deviation
    const auto pot = write_file(
        "opaque.json", R"({"regions":[{"xl":"-inf","xr":0,"v":0},{"xl":0,"xr":60,"v":4},{"xl":60,"xr":"inf","v":0}]})");
    const auto r = run_cli({"compare", "--potential", pot, "--energy", "0.5"});
    CHECK((r.code == cli::ok || r.code == cli::comparison_failed));
    const double dev = std::stod(r.out.substr(23));
    CHECK((r.code == cli::ok) == (dev < 1e-10));
}

TEST_CASE("cli wavefunction, path, hartman and propagate outputs")
{
    const auto pot = write_file("barrier.json", kBarrierJson);
    auto r = run_cli({"wavefunction", "--potential", pot, "--energy", "0.5", "--points", "11"});
    REQUIRE(r.code == cli::ok);
    auto l = lines(r.out);
    CHECK(l[0] == "x,re_psi,im_psi,abs2,phase");
    CHECK(l.size() == 12);

    r = run_cli({"path", "--x0", "0", "--x1", "1", "--t", "1", "--steps", "4"});
    REQUIRE(r.code == cli::ok);
    CHECK(r.out == "tau,x\n0,0\n0.25,0.25\n0.5,0.5\n0.75,0.75\n1,1\n");

    r = run_cli({"path", "--x0", "0", "--x1", "0", "--t", "2", "--steps", "2", "--force", "1"});
    REQUIRE(r.code == cli::ok);
    l = lines(r.out);
    CHECK(l[2] == "1,0.5");

    r = run_cli({"hartman", "--v0", "1", "--energy", "0.5", "--wmin", "8", "--wmax", "12", "--steps", "2"});
    REQUIRE(r.code == cli::ok);
    l = lines(r.out);
    REQUIRE(l.size() == 3);
    CHECK(l[0] == "width,tau_phase,t_prob");
    CHECK(l[1].rfind("8,", 0) == 0);

    CHECK(run_cli({"hartman", "--v0", "1", "--energy", "2", "--wmin", "1", "--wmax", "2", "--steps", "2"}).code ==
          cli::numerical_failure);

    r = run_cli({"propagate", "--potential", pot, "--t", "0.5", "--slices", "2", "--grid", "-2,2,5", "--mode", "imag"});
    REQUIRE(r.code == cli::ok);
    l = lines(r.out);
    CHECK(l[0] == "x,x0,re,im");
    CHECK(l.size() == 26);
    CHECK(l[1].rfind("-2,-2,", 0) == 0);
}

TEST_CASE("cli json output and output files")
{
    const auto pot = write_file("free.json", kFreeJson);
    const auto out = data_path("scan.json");
    const auto r = run_cli({"scan", "--potential", pot, "--emin", "1", "--emax", "2", "--steps", "2", "--format", "json",
                            "-o", out});
    REQUIRE(r.code == cli::ok);
    CHECK(r.out.empty());
    CHECK(read_file(out) == "{\"E\":[1,2],\"T\":[1,1],\"R\":[0,0]}\n");
}

TEST_CASE("cli output is byte-identical across runs")
{
    const auto pot = write_file("barrier.json", kBarrierJson);
    const std::vector<std::string> scan{"scan", "--potential", pot, "--emin", "0.1", "--emax", "3", "--steps", "31"};
    CHECK(run_cli(scan).out == run_cli(scan).out);
    const std::vector<std::string> cmp{"compare", "--potential", pot, "--energy", "0.5"};
    CHECK(run_cli(cmp).out == run_cli(cmp).out);
}
