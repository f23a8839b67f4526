#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qmotion/action_field.hpp"
#include "qmotion/core.hpp"
#include "qmotion/least_action.hpp"
#include "qmotion/propagator.hpp"
#include "qmotion/tunneling_time.hpp"

namespace qmotion::io {

/// Column-oriented numeric table; every column has the same length.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> data;

    std::size_t rows() const { return data.empty() ? 0 : data.front().size(); }
    void add_row(std::initializer_list<double> values);
};

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_number(double value);

/// Header line then one line per row, '\n' terminated.
void write_csv(std::ostream& out, const Table& table);
/// {"col": [..], ...} with columns in table order.
void write_json(std::ostream& out, const Table& table);

/// Parses {"regions":[{"xl": number|"-inf", "xr": number|"inf", "v": number}, ...]}
/// and validates the result. Throws InvalidArgument on malformed documents.
PiecewisePotential parse_potential(std::string_view json_text);
PiecewisePotential load_potential(const std::string& path);
std::string potential_to_json(const PiecewisePotential& potential);

Table kernel_table(const PropagatorMatrix& k);
Table path_table(const Path& path);
Table wavefunction_table(const RegionSolution& solution, const std::vector<double>& xs);
Table time_scan_table(const TimeScanResult& scan);

}  // namespace qmotion::io
