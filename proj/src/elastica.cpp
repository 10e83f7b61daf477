#include "willmore/elastica.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "willmore/error.hpp"

namespace willmore {

namespace {

constexpr double kBranchTol = 1e-12;
constexpr double kTailLength = 20.0;
// Offset used for the target directly behind the start (u = -1): the limit
// of both branches is s0 -> -inf; at -40 the singular point equals -1 to
// double precision.
constexpr double kLoopOffset = -40.0;

UnitTangent catenoid_tangent(double s0) {
    return UnitTangent::along(HPoint(s0, std::cosh(s0)), {1.0, std::sinh(s0)});
}

}  // namespace

ElasticaArc::ElasticaArc(Branch branch, double s0, MoebiusMap frame, Orientation orientation,
                         double alpha)
    : branch_(branch),
      s0_(s0),
      frame_(frame),
      orientation_(orientation),
      alpha_(alpha),
      catenoid_frame_(MoebiusMap::identity()) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
    if (!std::isfinite(s0)) throw Error(ErrorKind::InvalidArgument, "s0 must be finite");
    if (branch != Branch::HalfCircle) catenoid_frame_ = frame_map(alpha, catenoid_tangent(s0));
}

Complex ElasticaArc::normalized_point(double s) const {
    const double sigma = orientation_ == Orientation::Backward ? -s : s;
    Complex q;
    if (branch_ == Branch::HalfCircle) {
        q = {alpha_ * std::tanh(sigma), alpha_ / std::cosh(sigma)};
    } else {
        const double t = sigma + s0_;
        q = catenoid_frame_(Complex(t, std::cosh(t)));
        if (branch_ == Branch::InvertedCatenoid) q = invert_at_circle(0.0, alpha_, q);
    }
    if (orientation_ == Orientation::Backward) q = -std::conj(q);
    return q;
}

Complex ElasticaArc::normalized_velocity(double s) const {
    const bool backward = orientation_ == Orientation::Backward;
    const double sigma = backward ? -s : s;
    Complex v;
    if (branch_ == Branch::HalfCircle) {
        const double sech = 1.0 / std::cosh(sigma);
        v = {alpha_ * sech * sech, -alpha_ * sech * std::tanh(sigma)};
    } else {
        const double t = sigma + s0_;
        const Complex z(t, std::cosh(t));
        v = catenoid_frame_.derivative(z) * Complex(1.0, std::sinh(t));
        if (branch_ == Branch::InvertedCatenoid) {
            v = to_complex(invert_vector_at_circle(0.0, alpha_, catenoid_frame_(z), to_vec(v)));
        }
    }
    if (backward) v = std::conj(v);  // d/ds of -conj(q(-s))
    return v;
}

Vec2 ElasticaArc::point(double s) const { return to_vec(frame_(normalized_point(s))); }

Vec2 ElasticaArc::velocity(double s) const {
    return to_vec(frame_.derivative(normalized_point(s)) * normalized_velocity(s));
}

double ElasticaArc::curvature(double s) const {
    const double sigma = orientation_ == Orientation::Backward ? -s : s;
    switch (branch_) {
        case Branch::Catenoid: return 2.0 / std::cosh(sigma + s0_);
        case Branch::InvertedCatenoid: return -2.0 / std::cosh(sigma + s0_);
        case Branch::HalfCircle: return 0.0;
    }
    return 0.0;
}

UnitTangent ElasticaArc::start() const {
    const Vec2 p = point(0.0);
    return UnitTangent::along(HPoint(p.x, p.y), velocity(0.0));
}

BoundaryPoint ElasticaArc::singular_end() const {
    BoundaryPoint end = BoundaryPoint::infinity();
    switch (branch_) {
        case Branch::Catenoid:
            if (s0_ != 0.0) end = BoundaryPoint::finite(alpha_ / std::tanh(0.5 * s0_));
            break;
        case Branch::InvertedCatenoid:
            end = BoundaryPoint::finite(alpha_ * std::tanh(0.5 * s0_));
            break;
        case Branch::HalfCircle: end = BoundaryPoint::finite(alpha_); break;
    }
    if (orientation_ == Orientation::Backward && end.is_finite()) {
        end = BoundaryPoint::finite(-end.value());
    }
    return apply_boundary(frame_, end);
}

double ElasticaArc::energy_to_singularity() const {
    if (branch_ == Branch::HalfCircle) return 0.0;
    return partial_energies(s0_).e_minus;
}

double ElasticaArc::truncation() const {
    if (branch_ == Branch::HalfCircle) return kTailLength;
    return kTailLength + std::max(0.0, -s0_);
}

// ---------------------------------------------------------------------------

HPoint standard_point(Branch branch, double s) {
    const double c = std::cosh(s);
    switch (branch) {
        case Branch::Catenoid: return HPoint(s, c);
        case Branch::InvertedCatenoid: {
            const double r = s * s + c * c;
            return HPoint(s / r, c / r);
        }
        case Branch::HalfCircle: break;
    }
    throw Error(ErrorKind::InvalidArgument, "half circles have no standard catenoid form");
}

ElasticaArc solve_frenet(double alpha, double s0, int sign) {
    if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidArgument, "sign must be +1 or -1");
    return ElasticaArc(sign > 0 ? Branch::Catenoid : Branch::InvertedCatenoid, s0,
                       MoebiusMap::identity(), Orientation::Forward, alpha);
}

double singularity_x(double alpha, double s0) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
    if (s0 == 0.0) throw Error(ErrorKind::ZeroOffset, "s0 = 0 reaches the point at infinity");
    return alpha / std::tanh(0.5 * s0);
}

double s0_from_x(double alpha, double x, Branch branch) {
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
    const double u = x / alpha;
    if (std::abs(std::abs(u) - 1.0) <= kBranchTol) {
        throw Error(ErrorKind::HalfCircleCase, "|x| = alpha is reached by a half circle");
    }
    switch (branch) {
        case Branch::Catenoid:
            if (std::abs(u) < 1.0) {
                throw Error(ErrorKind::BranchMismatch, "catenoid branch needs |x| > alpha");
            }
            return 2.0 * std::atanh(1.0 / u);
        case Branch::InvertedCatenoid:
            if (std::abs(u) > 1.0) {
                throw Error(ErrorKind::BranchMismatch, "inverted branch needs |x| < alpha");
            }
            return 2.0 * std::atanh(u);
        case Branch::HalfCircle: break;
    }
    throw Error(ErrorKind::BranchMismatch, "half circles have no offset");
}

PartialEnergies partial_energies(double s0) {
    const double t = std::tanh(s0);
    // The larger of the two lies in [4, 8], so 8 minus it is exact.
    if (t >= 0.0) {
        const double e_plus = 4.0 + 4.0 * t;
        return {e_plus, 8.0 - e_plus};
    }
    const double e_minus = 4.0 - 4.0 * t;
    return {8.0 - e_minus, e_minus};
}

ElasticaArc solve_boundary(const UnitTangent& start, const BoundaryPoint& target,
                           double frame_height) {
    const MoebiusMap phi = frame_map(frame_height, start);
    const MoebiusMap back = phi.inverse();
    const BoundaryPoint seen = apply_boundary(phi, target);
    if (seen.is_infinite()) {
        return ElasticaArc(Branch::Catenoid, 0.0, back, Orientation::Forward, frame_height);
    }
    const double u = seen.value() / frame_height;
    if (std::abs(u - 1.0) <= kBranchTol) {
        return ElasticaArc(Branch::HalfCircle, 0.0, back, Orientation::Forward, frame_height);
    }
    if (std::abs(u + 1.0) <= kBranchTol) {
        return ElasticaArc(Branch::Catenoid, kLoopOffset, back, Orientation::Forward, frame_height);
    }
    if (std::abs(u) > 1.0) {
        return ElasticaArc(Branch::Catenoid, 2.0 * std::atanh(1.0 / u), back,
                           Orientation::Forward, frame_height);
    }
    return ElasticaArc(Branch::InvertedCatenoid, 2.0 * std::atanh(u), back, Orientation::Forward,
                       frame_height);
}

double side_energy(const UnitTangent& start, const BoundaryPoint& target) {
    const MoebiusMap phi = frame_map(1.0, start);
    double n = phi.a(), w = phi.c();
    if (target.is_finite()) {
        const double x = target.value();
        n = phi.a() * x + phi.b();
        w = phi.c() * x + phi.d();
    }
    return 4.0 - 8.0 * n * w / (n * n + w * w);
}

SampledCurve sample_toward_singularity(const ElasticaArc& arc, std::size_t samples, double length) {
    const double len = length > 0.0 ? length : arc.truncation();
    const double dir = arc.orientation() == Orientation::Backward ? -1.0 : 1.0;
    return SampledCurve::from_function([&](double t) { return arc.point(dir * t); }, 0.0, len,
                                       samples);
}

SampledCurve sample_range(const ElasticaArc& arc, double lo, double hi, std::size_t samples) {
    return SampledCurve::from_function([&](double s) { return arc.point(s); }, lo, hi, samples);
}

}  // namespace willmore
