#include "willmore/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "willmore/error.hpp"

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGrid = 10000;
constexpr double kGolden = 0.6180339887498948482;

// Side energies in the angle variable x = tan(theta). Both numerator and
// denominator of 4 - 8u/(1 + u^2) are homogeneous in (sin, cos), so theta is
// a smooth periodic coordinate on R u {inf} with theta = -pi/2 at infinity.
struct Side {
    MoebiusMap phi;

    std::pair<double, double> nw(double theta) const {
        const double s = std::sin(theta), c = std::cos(theta);
        return {phi.a() * s + phi.b() * c, phi.c() * s + phi.d() * c};
    }
    double energy(double theta) const {
        const auto [n, w] = nw(theta);
        return 4.0 - 8.0 * n * w / (n * n + w * w);
    }
    double slope(double theta) const {
        const auto [n, w] = nw(theta);
        const double r = n * n + w * w;
        return 8.0 * (n * n - w * w) / (r * r);
    }
};

struct Objective {
    Side minus, plus;

    explicit Objective(const BoundaryData& bd)
        : minus{frame_map(1.0, bd.start_minus())}, plus{frame_map(1.0, bd.start_plus())} {}

    double operator()(double theta) const {
        return 0.5 * kPi * (minus.energy(theta) + plus.energy(theta)) + 8.0 * kPi;
    }
    double slope(double theta) const { return 0.5 * kPi * (minus.slope(theta) + plus.slope(theta)); }
};

double grid_theta(int i) { return -0.5 * kPi + kPi * static_cast<double>(i) / kGrid; }

BoundaryPoint point_at(double theta) {
    // Wrap to [-pi/2, pi/2).
    double t = std::remainder(theta, kPi);
    if (t >= 0.5 * kPi) t -= kPi;
    if (t == -0.5 * kPi) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(std::tan(t));
}

// Argument tolerance |dx| < 1e-10 max(1, |x|) expressed in theta.
double theta_tolerance(double theta) {
    const double x = std::abs(std::tan(theta));
    if (!std::isfinite(x)) return 1e-16;
    return std::max(1e-10 * std::max(1.0, x) / (1.0 + x * x), 1e-16);
}

double bisect_slope(const Objective& f, double a, double b) {
    double sa = f.slope(a), sb = f.slope(b);
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double sm = f.slope(m);
        if (sm == 0.0) return m;
        if (sm < 0.0) {
            a = m;
            sa = sm;
        } else {
            b = m;
            sb = sm;
        }
    }
    return std::abs(sa) <= std::abs(sb) ? a : b;
}

double refine(const Objective& f, double lo, double hi) {
    double a = lo, b = hi;
    double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > theta_tolerance(0.5 * (a + b)); ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
    }
    const double golden = f(a) <= f(b) ? a : b;
    // Close to the minimum the objective is flat to rounding, so the golden
    // bracket can drift; the derivative keeps its sign there.
    if (f.slope(lo) < 0.0 && f.slope(hi) > 0.0) {
        const double polished = bisect_slope(f, lo, hi);
        if (f(polished) <= f(golden) + 1e-14 * std::abs(f(golden))) return polished;
    }
    return golden;
}

// Strict weak order: lower value first; among equal values the smaller |x|,
// infinity last.
bool better(double v1, const BoundaryPoint& x1, double v2, const BoundaryPoint& x2) {
    const double tol = 1e-12 * std::max(std::abs(v1), std::abs(v2));
    if (std::abs(v1 - v2) > tol) return v1 < v2;
    if (x1.is_infinite()) return false;
    if (x2.is_infinite()) return true;
    return std::abs(x1.value()) < std::abs(x2.value());
}

}  // namespace

double pair_elastic_energy(const BoundaryData& bd, const BoundaryPoint& x) {
    bd.validate();
    return side_energy(bd.start_minus(), x) + side_energy(bd.start_plus(), x);
}

double closed_energy_of_cx(const BoundaryData& bd, const BoundaryPoint& x) {
    return 0.5 * kPi * pair_elastic_energy(bd, x) + 8.0 * kPi;
}

std::pair<ElasticaArc, ElasticaArc> cx_arcs(const BoundaryData& bd, const BoundaryPoint& x) {
    bd.validate();
    return {solve_boundary(bd.start_minus(), x), solve_boundary(bd.start_plus(), x)};
}

namespace {

// Deeper tails sit at y < 1e-5 where the two principal curvatures cancel in
// floating point; the energy left beyond depth 12 is below 1e-6.
double quadrature_depth(const ElasticaArc& arc) { return arc.truncation() - 8.0; }

}  // namespace

std::vector<SampledCurve> sample_cx(const BoundaryData& bd, const BoundaryPoint& x,
                                    std::size_t samples) {
    const auto [minus, plus] = cx_arcs(bd, x);
    return {sample_toward_singularity(minus, samples, quadrature_depth(minus)),
            sample_toward_singularity(plus, samples, quadrature_depth(plus)).reversed()};
}

ThresholdResult minimize_threshold(const BoundaryData& bd) {
    bd.validate();
    const Objective f(bd);
    std::vector<double> values(kGrid);
    for (int i = 0; i < kGrid; ++i) values[i] = f(grid_theta(i));

    ThresholdResult best;
    best.x_star = BoundaryPoint::infinity();
    best.value = closed_energy_of_cx(bd, best.x_star);
    for (int i = 0; i < kGrid; ++i) {
        const double prev = values[(i + kGrid - 1) % kGrid];
        const double next = values[(i + 1) % kGrid];
        if (!(values[i] <= prev && values[i] <= next)) continue;
        const double theta = refine(f, grid_theta(i) - kPi / kGrid, grid_theta(i) + kPi / kGrid);
        const BoundaryPoint x = point_at(theta);
        const double v = closed_energy_of_cx(bd, x);
        if (better(v, x, best.value, best.x_star)) {
            best.value = v;
            best.x_star = x;
        }
    }
    best.margin = 0.0;
    return best;
}

std::vector<ProbeRow> asymptotic_probe(double alpha_minus, std::span<const double> grid) {
    if (grid.empty()) throw Error(ErrorKind::InvalidArgument, "alpha_plus grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (!(grid[i] > grid[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "alpha_plus grid must be increasing");
        }
    }
    std::vector<ProbeRow> rows;
    rows.reserve(grid.size());
    for (double ap : grid) {
        rows.push_back({ap, minimize_threshold(BoundaryData::horizontal(alpha_minus, ap)).value});
    }
    return rows;
}

ThresholdResult admissibility(const SampledCurve& curve) {
    const BoundaryData bd = read_boundary_data(curve);
    const EnergyReport report = closed_willmore_energy(curve, bd);
    ThresholdResult r = minimize_threshold(bd);
    const double energy = *report.closed_willmore;
    r.curve_energy = energy;
    r.admissible_improved = energy <= r.value;
    r.admissible_schlierf = energy <= r.schlierf_bound;
    r.margin = r.value - energy;
    return r;
}

}  // namespace willmore
