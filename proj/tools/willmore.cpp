// Command line front end: energies, thresholds, figure data and the flow.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "willmore/elastica.hpp"
#include "willmore/error.hpp"
#include "willmore/flow.hpp"
#include "willmore/io.hpp"
#include "willmore/surface.hpp"
#include "willmore/threshold.hpp"

using namespace willmore;
using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kExitInadmissible = 2;

std::string pi_multiple(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10gπ", v / kPi);
    return buf;
}

BoundaryPoint parse_point(const std::string& text) {
    if (text == "inf" || text == "Infinity" || text == "infinity") return BoundaryPoint::infinity();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, "expected a number or 'inf', got '" + text + "'");
    }
    return BoundaryPoint::finite(v);
}

struct Range {
    double lo, hi, step;
};

Range parse_range(const std::string& text) {
    Range r{};
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step, &tail) != 3 ||
        !std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.step > 0.0) || !(r.hi >= r.lo)) {
        throw Error(ErrorKind::InvalidArgument, "range must be lo:hi:step with lo <= hi, step > 0");
    }
    return r;
}

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, std::string(name) + " must be positive");
    }
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

template <typename F>
void with_file(const std::string& path, F&& write) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
    write(out);
}

BoundaryData boundary_or_horizontal(const std::string& path, double am, double ap) {
    if (!path.empty()) return read_boundary_file(path);
    require_positive(am, "--alpha-minus");
    require_positive(ap, "--alpha-plus");
    return BoundaryData::horizontal(am, ap);
}

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::Catenoid: return "catenoid";
        case Branch::InvertedCatenoid: return "inverted_catenoid";
        case Branch::HalfCircle: return "half_circle";
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Willmore energies of surfaces of revolution and hyperbolic elastica"};
    app.require_subcommand(1);

    // elastica
    auto* el = app.add_subcommand("elastica", "sample the critical arc from (0, alpha) to an axis point");
    double el_alpha = 1.0;
    std::string el_x = "inf", el_out = "elastica.csv", el_svg;
    std::size_t el_samples = 2048;
    el->add_option("--alpha", el_alpha, "start height")->required();
    el->add_option("--x", el_x, "target on the axis, a number or 'inf'")->required();
    el->add_option("--samples", el_samples, "number of samples")->capture_default_str();
    el->add_option("--out", el_out, "curve CSV")->capture_default_str();
    el->add_option("--svg", el_svg, "optional SVG plot of the arc");

    // profile-energy
    auto* pe = app.add_subcommand("profile-energy", "energies of a profile curve");
    std::string pe_curve, pe_boundary;
    bool pe_closed = false;
    pe->add_option("curve", pe_curve, "curve CSV")->required();
    pe->add_flag("--closed", pe_closed, "add the caps and report the closed Willmore energy");
    pe->add_option("--boundary", pe_boundary, "boundary data JSON (implies --closed)");

    // threshold
    auto* th = app.add_subcommand("threshold", "infimum of the closed energy of c^x over x");
    double th_am = 1.0, th_ap = 1.0;
    std::string th_boundary;
    th->add_option("--alpha-minus", th_am, "left clamp height")->capture_default_str();
    th->add_option("--alpha-plus", th_ap, "right clamp height")->capture_default_str();
    th->add_option("--boundary", th_boundary, "boundary data JSON instead of horizontal clamps");

    // scan-x
    auto* sx = app.add_subcommand("scan-x", "closed energy of c^x along a grid of x");
    double sx_am = 1.0, sx_ap = 2.0;
    std::string sx_range = "-10:10:0.01", sx_boundary, sx_out = "scan_x.csv", sx_svg;
    sx->add_option("--alpha-minus", sx_am, "left clamp height")->capture_default_str();
    sx->add_option("--alpha-plus", sx_ap, "right clamp height")->capture_default_str();
    sx->add_option("--range", sx_range, "lo:hi:step")->capture_default_str();
    sx->add_option("--boundary", sx_boundary, "boundary data JSON instead of horizontal clamps");
    sx->add_option("--out", sx_out, "CSV output")->capture_default_str();
    sx->add_option("--svg", sx_svg, "optional SVG plot");

    // sweep
    auto* sw = app.add_subcommand("sweep", "threshold as a function of alpha_plus");
    double sw_am = 1.0, sw_lo = 1.0, sw_hi = 1000.0;
    int sw_count = 61;
    std::string sw_out = "sweep.csv", sw_svg;
    sw->add_option("--alpha-minus", sw_am, "left clamp height")->capture_default_str();
    sw->add_option("--alpha-plus-min", sw_lo, "first alpha_plus")->capture_default_str();
    sw->add_option("--alpha-plus-max", sw_hi, "last alpha_plus")->capture_default_str();
    sw->add_option("--count", sw_count, "number of log-spaced points")->capture_default_str();
    sw->add_option("--out", sw_out, "CSV output")->capture_default_str();
    sw->add_option("--svg", sw_svg, "optional SVG plot");

    // flow
    auto* fl = app.add_subcommand("flow", "discrete elastic gradient flow with clamped ends");
    std::string fl_curve, fl_out = "flow_curve.csv", fl_monitors = "flow_monitors.csv";
    FlowConfig cfg;
    int fl_resolution = 0;
    bool fl_plain = false;
    fl->add_option("curve", fl_curve, "initial curve CSV")->required();
    fl->add_option("--out", fl_out, "terminal curve CSV")->capture_default_str();
    fl->add_option("--monitors", fl_monitors, "monitor CSV")->capture_default_str();
    fl->add_option("--max-steps", cfg.max_steps, "step limit")->capture_default_str();
    fl->add_option("--grad-tol", cfg.grad_tol, "stop when the gradient norm drops below")->capture_default_str();
    fl->add_option("--initial-step", cfg.initial_step, "first trial step of plain descent")->capture_default_str();
    fl->add_option("--backtrack", cfg.backtrack_factor, "step reduction factor")->capture_default_str();
    fl->add_option("--armijo", cfg.armijo_c, "sufficient decrease constant")->capture_default_str();
    fl->add_option("--reparam-every", cfg.reparam_every, "resampling period in steps")->capture_default_str();
    fl->add_option("--resolution", fl_resolution, "number of edges (default: input samples - 1)");
    fl->add_flag("--plain", fl_plain, "plain gradient descent instead of Newton directions");

    // check
    auto* ck = app.add_subcommand("check", "admissibility of an initial curve");
    std::string ck_curve;
    ck->add_option("curve", ck_curve, "curve CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*el) {
            require_positive(el_alpha, "--alpha");
            if (el_samples < 16) throw Error(ErrorKind::InvalidArgument, "--samples must be at least 16");
            const UnitTangent start = UnitTangent::along(HPoint(0.0, el_alpha), {1.0, 0.0});
            const BoundaryPoint target = parse_point(el_x);
            const ElasticaArc arc = solve_boundary(start, target);
            const SampledCurve curve = sample_toward_singularity(arc, el_samples);
            write_curve_file(el_out, curve);
            if (!el_svg.empty()) {
                PlotSeries s{"arc", {}};
                for (const Vec2& p : curve.points()) s.points.emplace_back(p.x, p.y);
                with_file(el_svg, [&](std::ostream& o) { write_svg_plot(o, {s}, "elastica", "x", "y"); });
            }
            const BoundaryPoint end = arc.singular_end();
            print_json({{"branch", branch_name(arc.branch())},
                        {"s0", arc.s0()},
                        {"energy", side_energy(start, target)},
                        {"singular_end", end.is_infinite() ? json("inf") : json(end.value())},
                        {"samples", curve.size()},
                        {"csv", el_out}});
            return 0;
        }
        if (*pe) {
            const SampledCurve curve = read_curve_file(pe_curve);
            if (!pe_boundary.empty() || pe_closed) {
                const BoundaryData bd =
                    pe_boundary.empty() ? read_boundary_data(curve) : read_boundary_file(pe_boundary);
                const EnergyReport r = closed_willmore_energy(curve, bd);
                print_json(to_json(r));
                std::cerr << "closed Willmore energy " << pi_multiple(*r.closed_willmore) << '\n';
            } else {
                print_json(to_json(energy_report(curve)));
            }
            return 0;
        }
        if (*th) {
            const BoundaryData bd = boundary_or_horizontal(th_boundary, th_am, th_ap);
            const ThresholdResult r = minimize_threshold(bd);
            print_json(to_json(r));
            std::cerr << "threshold " << pi_multiple(r.value) << '\n';
            return 0;
        }
        if (*sx) {
            const BoundaryData bd = boundary_or_horizontal(sx_boundary, sx_am, sx_ap);
            const Range r = parse_range(sx_range);
            const auto count = static_cast<long>(std::floor((r.hi - r.lo) / r.step + 1e-9)) + 1;
            std::vector<std::vector<double>> rows;
            PlotSeries s{"closed energy", {}};
            rows.reserve(static_cast<std::size_t>(count));
            for (long k = 0; k < count; ++k) {
                const double x = r.lo + static_cast<double>(k) * r.step;
                const double v = closed_energy_of_cx(bd, BoundaryPoint::finite(x));
                rows.push_back({x, v});
                s.points.emplace_back(x, v);
            }
            with_file(sx_out, [&](std::ostream& o) { write_table_csv(o, {"x", "closed_energy"}, rows); });
            if (!sx_svg.empty()) {
                with_file(sx_svg, [&](std::ostream& o) {
                    write_svg_plot(o, {s}, "x -> closed Willmore energy of c^x", "x", "energy");
                });
            }
            print_json({{"rows", rows.size()}, {"csv", sx_out}});
            return 0;
        }
        if (*sw) {
            require_positive(sw_am, "--alpha-minus");
            require_positive(sw_lo, "--alpha-plus-min");
            if (sw_count < 1 || !(sw_hi >= sw_lo) || (sw_count > 1 && !(sw_hi > sw_lo))) {
                throw Error(ErrorKind::InvalidArgument, "sweep needs count >= 1 and a nonempty range");
            }
            std::vector<double> grid(static_cast<std::size_t>(sw_count));
            for (int k = 0; k < sw_count; ++k) {
                const double f = sw_count == 1 ? 0.0 : static_cast<double>(k) / (sw_count - 1);
                grid[static_cast<std::size_t>(k)] = sw_lo * std::pow(sw_hi / sw_lo, f);
            }
            grid.back() = sw_hi;
            const auto probe = asymptotic_probe(sw_am, grid);
            std::vector<std::vector<double>> rows;
            PlotSeries s{"threshold", {}};
            for (const auto& row : probe) {
                rows.push_back({row.alpha_plus, row.value});
                s.points.emplace_back(std::log10(row.alpha_plus), row.value);
            }
            with_file(sw_out, [&](std::ostream& o) { write_table_csv(o, {"alpha_plus", "inf_value"}, rows); });
            if (!sw_svg.empty()) {
                with_file(sw_svg, [&](std::ostream& o) {
                    write_svg_plot(o, {s}, "alpha_plus -> threshold", "log10 alpha_plus", "energy");
                });
            }
            print_json({{"rows", rows.size()}, {"last_value", probe.back().value}, {"csv", sw_out}});
            std::cerr << "last threshold " << pi_multiple(probe.back().value) << '\n';
            return 0;
        }
        if (*fl) {
            const SampledCurve initial = read_curve_file(fl_curve);
            cfg.resolution = fl_resolution > 0 ? fl_resolution : static_cast<int>(initial.size()) - 1;
            cfg.preconditioner = fl_plain ? Preconditioner::None : Preconditioner::Newton;
            const auto [state, monitors] = run(initial, cfg);
            write_curve_file(fl_out, state.curve);
            with_file(fl_monitors, [&](std::ostream& o) { write_monitors_csv(o, monitors); });
            double max_length = monitors.initial.hyp_length;
            for (const auto& r : monitors.records) max_length = std::max(max_length, r.hyp_length);
            json summary{{"steps", state.step_count},
                         {"energy", state.energy},
                         {"grad_norm", state.grad_norm},
                         {"max_hyp_length", max_length},
                         {"converged", monitors.converged}};
            summary["failure"] = monitors.failure ? json(*monitors.failure) : json(nullptr);
            print_json(summary);
            return 0;
        }
        if (*ck) {
            const ThresholdResult r = admissibility(read_curve_file(ck_curve));
            print_json(to_json(r));
            std::cerr << "curve " << pi_multiple(*r.curve_energy) << ", threshold " << pi_multiple(r.value)
                      << ", Schlierf bound 8π\n";
            return r.admissible_improved ? 0 : kExitInadmissible;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
