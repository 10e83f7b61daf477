#pragma once

#include <complex>
#include <optional>

#include "willmore/curve.hpp"
#include "willmore/vec2.hpp"

namespace willmore {

using Complex = std::complex<double>;

inline Complex to_complex(Vec2 v) { return {v.x, v.y}; }
inline Vec2 to_vec(Complex z) { return {z.real(), z.imag()}; }

// ---------------------------------------------------------------------------
// Points, tangents and boundary points of the half-plane
// ---------------------------------------------------------------------------

/// Point of the open upper half-plane.
class HPoint {
public:
    /// Throws InvalidArgument unless y > 0.
    HPoint(double x, double y);
    static HPoint from_complex(Complex z) { return HPoint(z.real(), z.imag()); }

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    Vec2 vec() const noexcept { return {x_, y_}; }
    Complex z() const noexcept { return {x_, y_}; }

private:
    double x_;
    double y_;
};

/// Tangent vector of hyperbolic length one, |v| = base.y.
class UnitTangent {
public:
    /// Throws InvalidArgument unless |v| / base.y() = 1 within 1e-12.
    UnitTangent(HPoint base, Vec2 v);
    /// Rescales any nonzero direction to unit hyperbolic length.
    static UnitTangent along(HPoint base, Vec2 direction);

    const HPoint& base() const noexcept { return base_; }
    Vec2 v() const noexcept { return v_; }
    /// Euclidean unit vector in the direction of v.
    Vec2 direction() const { return v_ / base_.y(); }

private:
    UnitTangent(HPoint base, Vec2 v, int) : base_(base), v_(v) {}

    HPoint base_;
    Vec2 v_;
};

/// Point of the ideal boundary R u {inf}.
class BoundaryPoint {
public:
    static BoundaryPoint finite(double x) { return BoundaryPoint(x); }
    static BoundaryPoint infinity() { return BoundaryPoint(); }

    bool is_infinite() const noexcept { return !x_.has_value(); }
    bool is_finite() const noexcept { return x_.has_value(); }
    /// Throws InvalidArgument for the point at infinity.
    double value() const;

    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

private:
    BoundaryPoint() = default;
    explicit BoundaryPoint(double x) : x_(x) {}

    std::optional<double> x_;
};

// ---------------------------------------------------------------------------
// MoebiusMap
// ---------------------------------------------------------------------------

/// Orientation preserving isometry z -> (az + b) / (cz + d) of the half-plane.
/// Coefficients are stored scaled so that ad - bc = 1.
class MoebiusMap {
public:
    /// Throws InvalidArgument unless ad - bc > 0.
    MoebiusMap(double a, double b, double c, double d);
    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double d() const noexcept { return d_; }

    /// Evaluates (az + b)/(cz + d). The imaginary part is computed as
    /// y / |cz + d|^2, which keeps full relative accuracy for points close to
    /// the axis.
    Complex operator()(Complex z) const {
        const double x = z.real(), y = z.imag();
        const double wr = c_ * x + d_, wi = c_ * y;
        const double w2 = wr * wr + wi * wi;
        return {((a_ * x + b_) * wr + a_ * wi * y) / w2, y / w2};
    }
    /// Complex derivative (ad - bc) / (cz + d)^2.
    Complex derivative(Complex z) const {
        const Complex w = c_ * z + d_;
        return 1.0 / (w * w);
    }

    MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }

    /// Composition: (f * g)(z) = f(g(z)).
    friend MoebiusMap operator*(const MoebiusMap& f, const MoebiusMap& g);

    /// True when both represent the same map: coefficients agree up to a
    /// common sign within `tol`.
    bool same_map(const MoebiusMap& other, double tol) const;

private:
    double a_, b_, c_, d_;
};

HPoint apply(const MoebiusMap& map, const HPoint& p);
UnitTangent apply_tangent(const MoebiusMap& map, const UnitTangent& t);
BoundaryPoint apply_boundary(const MoebiusMap& map, const BoundaryPoint& q);
/// Image of a sampled curve; parameters are kept.
SampledCurve apply_curve(const MoebiusMap& map, const SampledCurve& curve);

/// Isometry sending t.base to (0, alpha) and t.v to (alpha, 0). Total: a
/// horizontal tangent yields the dilation-translation (forward) or the
/// half-turn about the base point (backward).
MoebiusMap frame_map(double alpha, const UnitTangent& t);

/// Isometry taking `from` to `to`, position and direction.
MoebiusMap transport_map(const UnitTangent& from, const UnitTangent& to);

// ---------------------------------------------------------------------------
// Circle inversion (orientation reversing)
// ---------------------------------------------------------------------------

Complex invert_at_circle(double center_x, double radius, Complex z);
HPoint invert_at_circle(double center_x, double radius, const HPoint& p);
/// Pushes a tangent vector at `base` forward through the inversion.
Vec2 invert_vector_at_circle(double center_x, double radius, Complex base, Vec2 v);
UnitTangent invert_at_circle(double center_x, double radius, const UnitTangent& t);
BoundaryPoint invert_at_circle(double center_x, double radius, const BoundaryPoint& q);
SampledCurve invert_at_circle(double center_x, double radius, const SampledCurve& curve);

// ---------------------------------------------------------------------------
// Curve quantities
// ---------------------------------------------------------------------------

/// Signed geodesic curvature y*k_e + x'/|c'| at an interior sample, with the
/// normal obtained by rotating the tangent by +pi/2. The standard catenoid
/// (s, cosh s) has curvature +2/cosh(s).
double geodesic_curvature(const SampledCurve& curve, std::size_t index);

/// Same formula from given derivatives at a point of height y.
double geodesic_curvature(double y, Vec2 d1, Vec2 d2);

/// Exact hyperbolic distance between two points of the half-plane.
double hyperbolic_distance(Vec2 p, Vec2 q);

/// Sum of geodesic chord lengths between consecutive samples. Throws
/// AxisContact when a sample lies on the axis.
double hyperbolic_length(const SampledCurve& curve);

}  // namespace willmore
