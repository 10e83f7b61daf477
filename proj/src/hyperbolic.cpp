#include "willmore/hyperbolic.hpp"

#include <cmath>
#include <string>

#include "willmore/error.hpp"

namespace willmore {

HPoint::HPoint(double x, double y) : x_(x), y_(y) {
    if (!(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw Error(ErrorKind::InvalidArgument,
                    "half-plane point needs finite x and y > 0, got y = " + std::to_string(y));
    }
}

UnitTangent::UnitTangent(HPoint base, Vec2 v) : base_(base), v_(v) {
    if (std::abs(norm(v) / base.y() - 1.0) > 1e-12) {
        throw Error(ErrorKind::InvalidArgument, "tangent is not of unit hyperbolic length");
    }
}

UnitTangent UnitTangent::along(HPoint base, Vec2 direction) {
    const double n = norm(direction);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidArgument, "tangent direction must be nonzero");
    }
    return UnitTangent(base, (base.y() / n) * direction, 0);
}

double BoundaryPoint::value() const {
    if (!x_) throw Error(ErrorKind::InvalidArgument, "boundary point at infinity has no value");
    return *x_;
}

// ---------------------------------------------------------------------------

MoebiusMap::MoebiusMap(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0) || !std::isfinite(det)) {
        throw Error(ErrorKind::InvalidArgument, "Moebius map needs ad - bc > 0");
    }
    const double s = 1.0 / std::sqrt(det);
    a_ = a * s;
    b_ = b * s;
    c_ = c * s;
    d_ = d * s;
}

MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g) {
    return {f.a_ * g.a_ + f.b_ * g.c_, f.a_ * g.b_ + f.b_ * g.d_,
            f.c_ * g.a_ + f.d_ * g.c_, f.c_ * g.b_ + f.d_ * g.d_};
}

bool MoebiusMap::same_map(const MoebiusMap& o, double tol) const {
    auto close = [&](double s) {
        return std::abs(a_ - s * o.a_) <= tol && std::abs(b_ - s * o.b_) <= tol &&
               std::abs(c_ - s * o.c_) <= tol && std::abs(d_ - s * o.d_) <= tol;
    };
    return close(1.0) || close(-1.0);
}

HPoint apply(const MoebiusMap& map, const HPoint& p) { return HPoint::from_complex(map(p.z())); }

UnitTangent apply_tangent(const MoebiusMap& map, const UnitTangent& t) {
    const Complex z = t.base().z();
    const Complex v = map.derivative(z) * to_complex(t.v());
    return UnitTangent::along(HPoint::from_complex(map(z)), to_vec(v));
}

BoundaryPoint apply_boundary(const MoebiusMap& map, const BoundaryPoint& q) {
    if (q.is_infinite()) {
        if (map.c() == 0.0) return BoundaryPoint::infinity();
        return BoundaryPoint::finite(map.a() / map.c());
    }
    const double x = q.value();
    const double den = map.c() * x + map.d();
    if (den == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite((map.a() * x + map.b()) / den);
}

SampledCurve apply_curve(const MoebiusMap& map, const SampledCurve& curve) {
    std::vector<Vec2> pts;
    pts.reserve(curve.size());
    for (const Vec2& p : curve.points()) {
        const Complex w = map(to_complex(p));
        // Axis points stay on the axis.
        pts.push_back({w.real(), p.y == 0.0 ? 0.0 : w.imag()});
    }
    return SampledCurve(curve.params(), std::move(pts));
}

MoebiusMap frame_map(double alpha, const UnitTangent& t) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "frame height must be positive");
    const double p1 = t.base().x();
    const double p2 = t.base().y();
    const Vec2 v = p2 * t.direction();
    // Both branches are the same closed form, written so that neither divides
    // by a vanishing quantity: (V1 + p2)/V2 = V2/(p2 - V1).
    if (v.x >= 0.0) {
        const double s = v.y / (v.x + p2);
        return {alpha, -alpha * (p2 * s + p1), s, p2 - p1 * s};
    }
    const double r = v.y / (p2 - v.x);
    return {alpha * r, -alpha * (p2 + r * p1), 1.0, p2 * r - p1};
}

MoebiusMap transport_map(const UnitTangent& from, const UnitTangent& to) {
    return frame_map(1.0, to).inverse() * frame_map(1.0, from);
}

// ---------------------------------------------------------------------------

Complex invert_at_circle(double cx, double radius, Complex z) {
    const Complex w = z - cx;
    return cx + radius * radius / std::conj(w);
}

HPoint invert_at_circle(double cx, double radius, const HPoint& p) {
    return HPoint::from_complex(invert_at_circle(cx, radius, p.z()));
}

Vec2 invert_vector_at_circle(double cx, double radius, Complex base, Vec2 v) {
    const Complex w = std::conj(base - cx);
    return to_vec(-radius * radius * std::conj(to_complex(v)) / (w * w));
}

UnitTangent invert_at_circle(double cx, double radius, const UnitTangent& t) {
    const Complex z = t.base().z();
    return UnitTangent::along(HPoint::from_complex(invert_at_circle(cx, radius, z)),
                              invert_vector_at_circle(cx, radius, z, t.v()));
}

BoundaryPoint invert_at_circle(double cx, double radius, const BoundaryPoint& q) {
    if (q.is_infinite()) return BoundaryPoint::finite(cx);
    const double w = q.value() - cx;
    if (w == 0.0) return BoundaryPoint::infinity();
    return BoundaryPoint::finite(cx + radius * radius / w);
}

SampledCurve invert_at_circle(double cx, double radius, const SampledCurve& curve) {
    std::vector<Vec2> pts;
    pts.reserve(curve.size());
    for (const Vec2& p : curve.points()) {
        const Complex w = invert_at_circle(cx, radius, to_complex(p));
        pts.push_back({w.real(), p.y == 0.0 ? 0.0 : w.imag()});
    }
    return SampledCurve(curve.params(), std::move(pts));
}

// ---------------------------------------------------------------------------

double geodesic_curvature(double y, Vec2 d1, Vec2 d2) {
    const double speed = norm(d1);
    return y * cross(d1, d2) / (speed * speed * speed) + d1.x / speed;
}

double geodesic_curvature(const SampledCurve& curve, std::size_t index) {
    if (curve.size() < 3) throw Error(ErrorKind::InsufficientResolution, "need three samples");
    const Derivatives d = centered_derivatives(curve, index);
    return geodesic_curvature(curve[index].y, d.d1, d.d2);
}

double hyperbolic_distance(Vec2 p, Vec2 q) {
    return 2.0 * std::asinh(norm(q - p) / (2.0 * std::sqrt(p.y * q.y)));
}

double hyperbolic_length(const SampledCurve& curve) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (!(curve[i].y > 0.0)) {
            throw Error(ErrorKind::AxisContact,
                        "hyperbolic length diverges: sample " + std::to_string(i) + " on the axis");
        }
    }
    double length = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) length += hyperbolic_distance(curve[i - 1], curve[i]);
    return length;
}

}  // namespace willmore
