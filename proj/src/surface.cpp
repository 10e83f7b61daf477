#include "willmore/surface.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "willmore/error.hpp"

namespace willmore {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMinEnergySamples = 16;

Vec2 unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

void require_resolution(const SampledCurve& curve) {
    if (curve.size() < kMinEnergySamples) {
        throw Error(ErrorKind::InsufficientResolution,
                    "energies need at least 16 samples, got " + std::to_string(curve.size()));
    }
}

}  // namespace

double normalize_angle(double beta) {
    double b = std::remainder(beta, 2.0 * kPi);
    if (b <= -kPi) b += 2.0 * kPi;
    return b;
}

// ---------------------------------------------------------------------------
// CapSpec / BoundaryData
// ---------------------------------------------------------------------------

CapSpec::CapSpec(double x0, double alpha0, double beta0)
    : x0_(x0), alpha0_(alpha0), beta0_(normalize_angle(beta0)) {
    if (!(alpha0 > 0.0) || !std::isfinite(x0) || !std::isfinite(alpha0) || !std::isfinite(beta0)) {
        throw Error(ErrorKind::InvalidArgument, "cap needs finite data and alpha0 > 0");
    }
    kind_ = std::abs(std::cos(beta0_)) <= 1e-12 ? CapKind::VerticalLine : CapKind::Circle;
}

double CapSpec::center() const {
    if (kind_ != CapKind::Circle) throw Error(ErrorKind::InvalidArgument, "vertical cap has no center");
    return x0_ + alpha0_ * std::tan(beta0_);
}

double CapSpec::radius() const {
    if (kind_ != CapKind::Circle) throw Error(ErrorKind::InvalidArgument, "vertical cap has no radius");
    return alpha0_ / std::abs(std::cos(beta0_));
}

bool CapSpec::unbounded(VerticalRay ray) const {
    if (kind_ != CapKind::VerticalLine) return false;
    switch (ray) {
        case VerticalRay::TowardAxis: return false;
        case VerticalRay::AwayFromAxis: return true;
        case VerticalRay::Auto: break;
    }
    // (alpha0 - y) sin(beta0) > 0 keeps y < alpha0 exactly when sin(beta0) > 0.
    return std::sin(beta0_) < 0.0;
}

void BoundaryData::validate() const {
    for (double v : {x_minus, x_plus, alpha_minus, alpha_plus, beta_minus, beta_plus}) {
        if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "boundary data must be finite");
    }
    if (!(alpha_minus > 0.0) || !(alpha_plus > 0.0)) {
        throw Error(ErrorKind::InvalidArgument, "boundary heights must be positive");
    }
}

BoundaryData BoundaryData::horizontal(double alpha_minus, double alpha_plus) {
    BoundaryData bd{-1.0, 1.0, alpha_minus, alpha_plus, 0.0, kPi};
    bd.validate();
    return bd;
}

UnitTangent BoundaryData::start_minus() const {
    return UnitTangent::along(HPoint(x_minus, alpha_minus), unit(beta_minus));
}

UnitTangent BoundaryData::start_plus() const {
    return UnitTangent::along(HPoint(x_plus, alpha_plus), unit(beta_plus));
}

BoundaryData transform(const MoebiusMap& map, const BoundaryData& bd) {
    const UnitTangent m = apply_tangent(map, bd.start_minus());
    const UnitTangent p = apply_tangent(map, bd.start_plus());
    return {m.base().x(), p.base().x(), m.base().y(), p.base().y(),
            normalize_angle(std::atan2(m.v().y, m.v().x)),
            normalize_angle(std::atan2(p.v().y, p.v().x))};
}

BoundaryData invert_at_circle(double cx, double radius, const BoundaryData& bd) {
    const UnitTangent m = invert_at_circle(cx, radius, bd.start_minus());
    const UnitTangent p = invert_at_circle(cx, radius, bd.start_plus());
    return {m.base().x(), p.base().x(), m.base().y(), p.base().y(),
            normalize_angle(std::atan2(m.v().y, m.v().x)),
            normalize_angle(std::atan2(p.v().y, p.v().x))};
}

// ---------------------------------------------------------------------------
// Energies
// ---------------------------------------------------------------------------

PrincipalCurvatures principal_curvatures(const SampledCurve& curve, std::size_t index) {
    const Derivatives d = centered_derivatives(curve, index);
    const double y = curve[index].y;
    if (!(y > 0.0)) throw Error(ErrorKind::AxisContact, "principal curvatures need y > 0");
    const double speed = norm(d.d1);
    return {-cross(d.d1, d.d2) / (speed * speed * speed), d.d1.x / (y * speed)};
}

double willmore_energy(const SampledCurve& curve) {
    require_resolution(curve);
    std::vector<double> f(curve.size() - 2);
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const Derivatives d = centered_derivatives(curve, i);
        const double y = curve[i].y;
        const double speed = norm(d.d1);
        const double h = -cross(d.d1, d.d2) / (speed * speed * speed) + d.d1.x / (y * speed);
        f[i - 1] = 0.25 * h * h * 2.0 * kPi * y * speed;
    }
    return trapezoid_extrapolated(curve.params(), f);
}

double elastic_energy(const SampledCurve& curve) {
    require_resolution(curve);
    std::vector<double> f(curve.size() - 2);
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
        const Derivatives d = centered_derivatives(curve, i);
        const double y = curve[i].y;
        const double k = geodesic_curvature(y, d.d1, d.d2);
        f[i - 1] = k * k * norm(d.d1) / y;
    }
    return trapezoid_extrapolated(curve.params(), f);
}

double boundary_term(const SampledCurve& curve) {
    const Vec2 t0 = start_derivative(curve);
    const Vec2 t1 = end_derivative(curve);
    return t1.y / norm(t1) - t0.y / norm(t0);
}

BryantGriffiths bryant_griffiths_check(const SampledCurve& curve) {
    return {2.0 / kPi * willmore_energy(curve), elastic_energy(curve) - 4.0 * boundary_term(curve)};
}

// ---------------------------------------------------------------------------
// Caps
// ---------------------------------------------------------------------------

SampledCurve cap_curve(const CapSpec& spec, std::size_t samples, VerticalRay ray) {
    if (samples < kMinEnergySamples) {
        throw Error(ErrorKind::InsufficientResolution, "caps need at least 16 samples");
    }
    std::vector<double> t(samples);
    std::vector<Vec2> p(samples);
    const double last = static_cast<double>(samples - 1);
    if (spec.kind() == CapKind::VerticalLine) {
        const bool up = spec.unbounded(ray);
        const double extent = up ? 9.0 * spec.alpha0() : spec.alpha0();
        for (std::size_t i = 0; i < samples; ++i) {
            const double u = extent * static_cast<double>(i) / last;
            t[i] = u;
            p[i] = {spec.x0(), up ? spec.alpha0() + u : spec.alpha0() - u};
        }
        if (!up) p.back().y = 0.0;
        return SampledCurve(std::move(t), std::move(p));
    }
    const double c = spec.center();
    const double r = spec.radius();
    const double theta0 = std::atan2(spec.alpha0(), spec.x0() - c);
    // The cap leaves along -(cos beta0, sin beta0): toward the left axis
    // point when cos beta0 > 0.
    const double theta1 = std::cos(spec.beta0()) > 0.0 ? kPi : 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double th = theta0 + (theta1 - theta0) * static_cast<double>(i) / last;
        t[i] = r * std::abs(th - theta0);
        p[i] = {c + r * std::cos(th), r * std::sin(th)};
    }
    p.front() = {spec.x0(), spec.alpha0()};
    p.back() = {c + r * std::cos(theta1), 0.0};
    return SampledCurve(std::move(t), std::move(p));
}

double cap_willmore_energy(const CapSpec& spec, VerticalRay) {
    if (spec.kind() == CapKind::VerticalLine) return 0.0;
    return 2.0 * kPi * (1.0 - std::sin(spec.beta0()));
}

int cap_density_infinity(const CapSpec& spec, VerticalRay ray) {
    return spec.unbounded(ray) ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

namespace {

std::optional<double> finite_length(const SampledCurve& curve) {
    if (curve.closed_tag()) return std::nullopt;
    return hyperbolic_length(curve);
}

void check_end(Vec2 position, Vec2 direction, Vec2 expected_pos, Vec2 expected_dir,
               const char* which) {
    const double pos_err = norm(position - expected_pos);
    const double dir_err = norm(normalized(direction) - expected_dir);
    if (pos_err > 1e-8 * std::max(1.0, norm(expected_pos))) {
        throw Error(ErrorKind::BoundaryMismatch,
                    std::string(which) + " endpoint off by " + std::to_string(pos_err));
    }
    if (dir_err > 1e-6) {
        throw Error(ErrorKind::BoundaryMismatch,
                    std::string(which) + " direction off by " + std::to_string(dir_err));
    }
}

}  // namespace

EnergyReport energy_report(const SampledCurve& curve) {
    EnergyReport r;
    r.willmore = willmore_energy(curve);
    r.elastic = elastic_energy(curve);
    r.boundary_term = boundary_term(curve);
    r.hyp_length = finite_length(curve);
    return r;
}

EnergyReport closed_willmore_energy(const SampledCurve& curve, const BoundaryData& bd) {
    return closed_willmore_energy(std::span<const SampledCurve>(&curve, 1), bd);
}

EnergyReport closed_willmore_energy(std::span<const SampledCurve> pieces, const BoundaryData& bd) {
    if (pieces.empty()) throw Error(ErrorKind::InvalidArgument, "no curve given");
    bd.validate();
    const SampledCurve& first = pieces.front();
    const SampledCurve& last = pieces.back();
    check_end(first.front(), start_derivative(first), {bd.x_minus, bd.alpha_minus},
              unit(bd.beta_minus), "start");
    check_end(last.back(), end_derivative(last), {bd.x_plus, bd.alpha_plus},
              -unit(bd.beta_plus), "end");

    EnergyReport r;
    bool finite = true;
    double length = 0.0;
    for (const SampledCurve& piece : pieces) {
        const EnergyReport part = energy_report(piece);
        r.willmore += part.willmore;
        r.elastic += part.elastic;
        r.boundary_term += part.boundary_term;
        if (part.hyp_length) length += *part.hyp_length;
        else finite = false;
    }
    if (finite) r.hyp_length = length;
    const CapSpec minus = bd.cap_minus();
    const CapSpec plus = bd.cap_plus();
    r.cap_minus_willmore = cap_willmore_energy(minus);
    r.cap_plus_willmore = cap_willmore_energy(plus);
    // Bounded input curves contribute no density at infinity.
    r.density_infinity = cap_density_infinity(minus) + cap_density_infinity(plus);
    r.closed_willmore =
        r.willmore + r.cap_minus_willmore + r.cap_plus_willmore + 4.0 * kPi * r.density_infinity;
    return r;
}

BoundaryData read_boundary_data(const SampledCurve& curve) {
    if (!(curve.front().y > 0.0) || !(curve.back().y > 0.0)) {
        throw Error(ErrorKind::AxisContact, "boundary data needs both endpoints off the axis");
    }
    const Vec2 t0 = start_derivative(curve);
    const Vec2 t1 = -end_derivative(curve);
    BoundaryData bd{curve.front().x, curve.back().x, curve.front().y, curve.back().y,
                    normalize_angle(std::atan2(t0.y, t0.x)), normalize_angle(std::atan2(t1.y, t1.x))};
    bd.validate();
    return bd;
}

}  // namespace willmore
