#pragma once

#include <cstddef>

#include "willmore/curve.hpp"
#include "willmore/hyperbolic.hpp"

namespace willmore {

enum class Branch { Catenoid, InvertedCatenoid, HalfCircle };

/// Forward arcs reach their singular end as s -> +inf, backward arcs as
/// s -> -inf.
enum class Orientation { Forward, Backward };

/// Exact asymptotic geodesic (Moebius transformed catenoid) or geodesic
/// half circle, parametrized by hyperbolic arclength s with s = 0 at the
/// start point.
///
/// In the normalized picture the arc starts at (0, alpha) with velocity
/// (alpha, 0); `frame` carries that picture to its actual position. The
/// catenoid branches are the standard catenoid (s, cosh s) moved by the
/// isometry that sends its point at s0 to the normalized start; the inverted
/// branch is additionally reflected in the circle of radius alpha about 0,
/// which flips the sign of the curvature.
class ElasticaArc {
public:
    ElasticaArc(Branch branch, double s0, MoebiusMap frame, Orientation orientation,
                double alpha);

    Branch branch() const noexcept { return branch_; }
    double s0() const noexcept { return s0_; }
    const MoebiusMap& frame() const noexcept { return frame_; }
    Orientation orientation() const noexcept { return orientation_; }
    double alpha() const noexcept { return alpha_; }

    Vec2 point(double s) const;
    Vec2 velocity(double s) const;
    /// Exact geodesic curvature: +-2 / cosh(s + s0) on the catenoid branches
    /// (Forward), 0 on half circles.
    double curvature(double s) const;
    UnitTangent start() const;
    /// Axis point approached at the singular end.
    BoundaryPoint singular_end() const;
    /// Elastic energy from the start to the singular end.
    double energy_to_singularity() const;
    /// Intrinsic length after which the sampled tail carries no visible
    /// energy: 20 past the curvature peak.
    double truncation() const;

private:
    Complex normalized_point(double s) const;
    Complex normalized_velocity(double s) const;

    Branch branch_;
    double s0_;
    MoebiusMap frame_;
    Orientation orientation_;
    double alpha_;
    MoebiusMap catenoid_frame_;  // standard catenoid -> normalized picture
};

/// Standard catenoid (s, cosh s) or its inversion (s, cosh s)/(s^2 + cosh^2 s).
HPoint standard_point(Branch branch, double s);

/// Arc starting at (0, alpha) with velocity (alpha, 0) and curvature
/// sign * 2 / cosh(s + s0).
ElasticaArc solve_frenet(double alpha, double s0, int sign);

/// Singular point alpha (1 + cosh s0) / sinh s0 = alpha coth(s0 / 2) of the
/// Catenoid branch. Throws ZeroOffset for s0 = 0 (the point at infinity).
double singularity_x(double alpha, double s0);

/// Inverse of the singularity map on a branch: |x| > alpha for Catenoid,
/// |x| < alpha for InvertedCatenoid. Throws HalfCircleCase at |x| = alpha
/// (within 1e-12) and BranchMismatch when x lies in the other branch's range.
double s0_from_x(double alpha, double x, Branch branch);

struct PartialEnergies {
    double e_plus;   ///< energy on (-inf, s0)
    double e_minus;  ///< energy on (s0, inf)
};
/// 4 tanh(s0) + 4 and 4 - 4 tanh(s0); their floating point sum is exactly 8.
PartialEnergies partial_energies(double s0);

/// Unique finite-energy critical arc from `start` to `target` on the axis.
/// `frame_height` picks the height of the internal normalized frame; the
/// resulting arc does not depend on it.
ElasticaArc solve_boundary(const UnitTangent& start, const BoundaryPoint& target,
                           double frame_height = 1.0);

/// Elastic energy of solve_boundary(start, target): 4 - 8u/(1 + u^2) where u
/// is the target seen from the normalized frame of `start`.
double side_energy(const UnitTangent& start, const BoundaryPoint& target);

/// `samples` points at s = k * length / (samples - 1), walking toward the
/// singular end. length defaults to arc.truncation().
SampledCurve sample_toward_singularity(const ElasticaArc& arc, std::size_t samples,
                                       double length = 0.0);
/// Uniform samples of the intrinsic parameter range [lo, hi].
SampledCurve sample_range(const ElasticaArc& arc, double lo, double hi, std::size_t samples);

}  // namespace willmore
