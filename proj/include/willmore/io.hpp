#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "willmore/curve.hpp"
#include "willmore/flow.hpp"
#include "willmore/surface.hpp"
#include "willmore/threshold.hpp"

namespace willmore {

/// 17 significant digits; "inf" / "-inf" / "nan" for non-finite values.
std::string format_number(double v);

/// Reads the shared curve format: header `s,x,y`, then one sample per line.
/// Errors carry `source:line`.
SampledCurve read_curve_csv(std::istream& in, std::string_view source = "<input>");
SampledCurve read_curve_file(const std::string& path);

void write_curve_csv(std::ostream& out, const SampledCurve& curve);
void write_curve_file(const std::string& path, const SampledCurve& curve);

/// Generic numeric table with a header row.
void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

/// Initial record as step 0, then one row per accepted step.
void write_monitors_csv(std::ostream& out, const FlowMonitors& monitors);

nlohmann::json to_json(const EnergyReport& report);
nlohmann::json to_json(const ThresholdResult& result);
nlohmann::json to_json(const BoundaryData& bd);
BoundaryData boundary_data_from_json(const nlohmann::json& j);
BoundaryData read_boundary_file(const std::string& path);

struct PlotSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

/// Minimal SVG line plot. The axes span the data range unless explicit
/// limits are given (lo < hi).
void write_svg_plot(std::ostream& out, const std::vector<PlotSeries>& series,
                    const std::string& title, const std::string& x_label,
                    const std::string& y_label, std::pair<double, double> x_range = {0.0, 0.0},
                    std::pair<double, double> y_range = {0.0, 0.0});

}  // namespace willmore
