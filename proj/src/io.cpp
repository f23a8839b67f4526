#include "qmotion/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace qmotion::io {

void Table::add_row(std::initializer_list<double> values)
{
    if (values.size() != columns.size())
        throw InvalidArgument("row width does not match the table header");
    if (data.size() != columns.size())
        data.resize(columns.size());
    std::size_t c = 0;
    for (double v : values)
        data[c++].push_back(v);
}

std::string format_number(double value)
{
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const Table& table)
{
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (std::size_t r = 0; r < table.rows(); ++r) {
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << format_number(table.data[c][r]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Table& table)
{
    // hand-written so numbers use the same fixed format as the CSV output
    out << '{';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << nlohmann::json(table.columns[c]).dump() << ":[";
        const auto& col = c < table.data.size() ? table.data[c] : std::vector<double>{};
        for (std::size_t r = 0; r < col.size(); ++r) {
            const double v = col[r];
            // JSON has no inf/nan literals
            out << (r ? "," : "") << (std::isfinite(v) ? format_number(v) : "null");
        }
        out << ']';
    }
    out << "}\n";
}

namespace {

double parse_bound(const nlohmann::json& j, const char* key)
{
    if (!j.contains(key))
        throw InvalidArgument(std::string("region is missing \"") + key + "\"");
    const auto& v = j.at(key);
    if (v.is_number())
        return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "-inf")
            return -kInf;
        if (s == "inf")
            return kInf;
    }
    throw InvalidArgument(std::string("\"") + key + "\" must be a number, \"-inf\" or \"inf\"");
}

}  // namespace

PiecewisePotential parse_potential(std::string_view json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("potential file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("regions") || !doc.at("regions").is_array())
        throw InvalidArgument("potential document needs a \"regions\" array");
    std::vector<Region> regions;
    for (const auto& r : doc.at("regions")) {
        if (!r.is_object())
            throw InvalidArgument("each region must be an object");
        if (!r.contains("v") || !r.at("v").is_number())
            throw InvalidArgument("region is missing numeric \"v\"");
        regions.push_back({parse_bound(r, "xl"), parse_bound(r, "xr"), r.at("v").get<double>()});
    }
    return validate_potential(std::move(regions));
}

PiecewisePotential load_potential(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open potential file " + path);
    std::ostringstream text;
    text << in.rdbuf();
    return parse_potential(text.str());
}

std::string potential_to_json(const PiecewisePotential& potential)
{
    nlohmann::json regions = nlohmann::json::array();
    for (const auto& r : potential.regions()) {
        nlohmann::json j;
        j["xl"] = std::isinf(r.x_left) ? nlohmann::json("-inf") : nlohmann::json(r.x_left);
        j["xr"] = std::isinf(r.x_right) ? nlohmann::json("inf") : nlohmann::json(r.x_right);
        j["v"] = r.v;
        regions.push_back(j);
    }
    return nlohmann::json{{"regions", regions}}.dump();
}

Table kernel_table(const PropagatorMatrix& k)
{
    Table t{{"x", "x0", "re", "im"}, {}};
    const std::size_t n = k.grid.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Complex v = k(i, j);
            t.add_row({k.grid.x(i), k.grid.x(j), v.real(), v.imag()});
        }
    return t;
}

Table path_table(const Path& path)
{
    Table t{{"tau", "x"}, {}};
    for (std::size_t k = 0; k < path.size(); ++k)
        t.add_row({path.times[k], path.positions[k]});
    return t;
}

Table wavefunction_table(const RegionSolution& solution, const std::vector<double>& xs)
{
    Table t{{"x", "re_psi", "im_psi", "abs2", "phase"}, {}};
    for (double x : xs) {
        const Complex psi = evaluate_psi(solution, x);
        t.add_row({x, psi.real(), psi.imag(), std::norm(psi), std::arg(psi)});
    }
    return t;
}

Table time_scan_table(const TimeScanResult& scan)
{
    Table t{{"width", "tau_phase", "t_prob"}, {}};
    for (std::size_t i = 0; i < scan.abscissa.size(); ++i)
        t.add_row({scan.abscissa[i], scan.tau_phase[i], scan.t_prob[i]});
    return t;
}

}  // namespace qmotion::io
