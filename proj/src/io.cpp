#include "willmore/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "willmore/error.hpp"

namespace willmore {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_error(std::string_view source, std::size_t line, const std::string& msg) {
    throw Error(ErrorKind::Parse, std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

double parse_field(std::string_view field, std::string_view source, std::size_t line,
                   std::string_view name) {
    field = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        parse_error(source, line, "cannot read " + std::string(name) + " from '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) parse_error(source, line, std::string(name) + " is not finite");
    return v;
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

nlohmann::json optional_number(const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SampledCurve read_curve_csv(std::istream& in, std::string_view source) {
    std::string raw;
    std::size_t line = 0;
    bool header = false;
    std::vector<double> s;
    std::vector<Vec2> p;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty()) continue;
        if (!header) {
            if (text != "s,x,y") parse_error(source, line, "expected header 's,x,y'");
            header = true;
            continue;
        }
        const std::size_t c1 = text.find(',');
        const std::size_t c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
        if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos) {
            parse_error(source, line, "expected 3 fields");
        }
        const double sv = parse_field(text.substr(0, c1), source, line, "s");
        const double xv = parse_field(text.substr(c1 + 1, c2 - c1 - 1), source, line, "x");
        const double yv = parse_field(text.substr(c2 + 1), source, line, "y");
        if (!s.empty() && !(sv > s.back())) parse_error(source, line, "s is not strictly increasing");
        s.push_back(sv);
        p.push_back({xv, yv});
    }
    if (!header) parse_error(source, line, "missing header 's,x,y'");
    if (s.size() < 2) parse_error(source, line, "a curve needs at least 2 samples");
    return SampledCurve(std::move(s), std::move(p));
}

SampledCurve read_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    return read_curve_csv(in, path);
}

void write_curve_csv(std::ostream& out, const SampledCurve& curve) {
    out << "s,x,y\n";
    for (std::size_t i = 0; i < curve.size(); ++i) {
        out << format_number(curve.params()[i]) << ',' << format_number(curve[i].x) << ','
            << format_number(curve[i].y) << '\n';
    }
}

void write_curve_file(const std::string& path, const SampledCurve& curve) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    write_curve_csv(out, curve);
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

void write_monitors_csv(std::ostream& out, const FlowMonitors& monitors) {
    std::vector<std::vector<double>> rows;
    auto add = [&](const MonitorRecord& r) {
        rows.push_back({static_cast<double>(r.step), r.energy, r.hyp_length, r.min_height,
                        r.grad_norm, r.accepted_step});
    };
    add(monitors.initial);
    for (const auto& r : monitors.records) add(r);
    write_table_csv(out, {"step", "energy", "hyp_length", "min_height", "grad_norm", "accepted_step"},
                    rows);
}

nlohmann::json to_json(const EnergyReport& r) {
    return {{"willmore", r.willmore},
            {"elastic", r.elastic},
            {"boundary_term", r.boundary_term},
            {"hyp_length", optional_number(r.hyp_length)},
            {"density_infinity", r.density_infinity},
            {"closed_willmore", optional_number(r.closed_willmore)}};
}

nlohmann::json to_json(const ThresholdResult& r) {
    nlohmann::json x = r.x_star.is_infinite() ? nlohmann::json("inf") : nlohmann::json(r.x_star.value());
    return {{"x_star", x},
            {"value", r.value},
            {"schlierf_bound", r.schlierf_bound},
            {"curve_energy", optional_number(r.curve_energy)},
            {"admissible_improved", r.admissible_improved},
            {"admissible_schlierf", r.admissible_schlierf},
            {"margin", r.margin}};
}

nlohmann::json to_json(const BoundaryData& bd) {
    return {{"x_minus", bd.x_minus},         {"x_plus", bd.x_plus},
            {"alpha_minus", bd.alpha_minus}, {"alpha_plus", bd.alpha_plus},
            {"beta_minus", bd.beta_minus},   {"beta_plus", bd.beta_plus}};
}

BoundaryData boundary_data_from_json(const nlohmann::json& j) {
    BoundaryData bd;
    try {
        bd.x_minus = j.at("x_minus").get<double>();
        bd.x_plus = j.at("x_plus").get<double>();
        bd.alpha_minus = j.at("alpha_minus").get<double>();
        bd.alpha_plus = j.at("alpha_plus").get<double>();
        bd.beta_minus = j.at("beta_minus").get<double>();
        bd.beta_plus = j.at("beta_plus").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("boundary data: ") + e.what());
    }
    bd.validate();
    return bd;
}

BoundaryData read_boundary_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
    return boundary_data_from_json(j);
}

void write_svg_plot(std::ostream& out, const std::vector<PlotSeries>& series, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    std::pair<double, double> x_range, std::pair<double, double> y_range) {
    constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
    double x0 = x_range.first, x1 = x_range.second, y0 = y_range.first, y1 = y_range.second;
    const bool auto_x = !(x0 < x1), auto_y = !(y0 < y1);
    if (auto_x || auto_y) {
        double xa = INFINITY, xb = -INFINITY, ya = INFINITY, yb = -INFINITY;
        for (const auto& s : series) {
            for (const auto& [x, y] : s.points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                xa = std::min(xa, x);
                xb = std::max(xb, x);
                ya = std::min(ya, y);
                yb = std::max(yb, y);
            }
        }
        if (!(xa < xb)) { xa -= 1.0; xb += 1.0; }
        if (!(ya < yb)) { ya -= 1.0; yb += 1.0; }
        if (auto_x) { x0 = xa; x1 = xb; }
        if (auto_y) { y0 = ya; y1 = yb; }
    }
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\">" << escape_xml(title) << "</text>\n";
    out << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
        char bx[32], by[32];
        std::snprintf(bx, sizeof bx, "%.4g", xv);
        std::snprintf(by, sizeof by, "%.4g", yv);
        out << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << bx << "</text>\n";
        out << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << by << "</text>\n";
    }
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">" << escape_xml(x_label)
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << H / 2
        << ")\">" << escape_xml(y_label) << "</text>\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << "<polyline fill=\"none\" stroke=\"" << colors[i % 5] << "\" points=\"";
        for (const auto& [x, y] : series[i].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x), py(y));
            out << buf;
        }
        out << "\"/>\n";
        if (!series[i].label.empty()) {
            out << "<text x=\"" << W - R - 6 << "\" y=\"" << T + 16 + 14 * static_cast<double>(i)
                << "\" text-anchor=\"end\" fill=\"" << colors[i % 5] << "\">" << escape_xml(series[i].label)
                << "</text>\n";
        }
    }
    out << "</svg>\n";
}

}  // namespace willmore
