#pragma once

#include <optional>
#include <span>

#include "willmore/curve.hpp"
#include "willmore/hyperbolic.hpp"

namespace willmore {

// ---------------------------------------------------------------------------
// Boundary data and sphere caps
// ---------------------------------------------------------------------------

/// Normalizes an angle to (-pi, pi].
double normalize_angle(double beta);

enum class CapKind { Circle, VerticalLine };

/// Which vertical ray a vertical-line cap uses. `Auto` picks the ray on the
/// side opposite to (cos beta, sin beta): toward the axis for beta = pi/2,
/// away from it for beta = -pi/2.
enum class VerticalRay { Auto, TowardAxis, AwayFromAxis };

/// Geodesic arc closing a clamped end down to the axis: the circle centered
/// on the axis through (x0, alpha0) tangent to (cos beta0, sin beta0), or a
/// vertical line when cos beta0 = 0.
class CapSpec {
public:
    CapSpec(double x0, double alpha0, double beta0);

    double x0() const noexcept { return x0_; }
    double alpha0() const noexcept { return alpha0_; }
    double beta0() const noexcept { return beta0_; }
    CapKind kind() const noexcept { return kind_; }

    /// Circle caps only.
    double center() const;
    double radius() const;

    /// True for the vertical ray that runs off to infinity.
    bool unbounded(VerticalRay ray = VerticalRay::Auto) const;

private:
    double x0_, alpha0_, beta0_;
    CapKind kind_;
};

/// Clamped positions and directions at the two ends of a profile curve. The
/// curve leaves (x_minus, alpha_minus) in direction (cos beta_minus,
/// sin beta_minus) and arrives at (x_plus, alpha_plus) moving in direction
/// -(cos beta_plus, sin beta_plus).
struct BoundaryData {
    double x_minus = -1.0;
    double x_plus = 1.0;
    double alpha_minus = 1.0;
    double alpha_plus = 1.0;
    double beta_minus = 0.0;
    double beta_plus = 0.0;

    /// Throws InvalidArgument unless both heights are positive and all
    /// values finite.
    void validate() const;

    /// x_plus = -x_minus = 1, beta_minus = 0, beta_plus = pi.
    static BoundaryData horizontal(double alpha_minus, double alpha_plus);

    UnitTangent start_minus() const;
    /// Tangent at the plus end pointing into the curve, i.e. along
    /// (cos beta_plus, sin beta_plus).
    UnitTangent start_plus() const;
    CapSpec cap_minus() const { return {x_minus, alpha_minus, beta_minus}; }
    CapSpec cap_plus() const { return {x_plus, alpha_plus, beta_plus}; }
};

/// Boundary data of the image configuration under an isometry.
BoundaryData transform(const MoebiusMap& map, const BoundaryData& bd);
/// Boundary data of the image under inversion at a circle; the two ends keep
/// their roles.
BoundaryData invert_at_circle(double center_x, double radius, const BoundaryData& bd);

// ---------------------------------------------------------------------------
// Energies
// ---------------------------------------------------------------------------

struct PrincipalCurvatures {
    double meridian;
    double parallel;
};

/// Principal curvatures of the surface of revolution at an interior sample,
/// for the unit normal obtained by rotating the tangent by -pi/2. A sphere
/// profile traversed with increasing x gets (1, 1); the cylinder (s, 1)
/// gets (0, 1).
PrincipalCurvatures principal_curvatures(const SampledCurve& curve, std::size_t index);

/// Willmore energy 1/4 * integral of H^2 over S(curve). Needs 16 samples.
double willmore_energy(const SampledCurve& curve);

/// Hyperbolic elastic energy, the integral of the squared geodesic curvature
/// against hyperbolic arclength.
double elastic_energy(const SampledCurve& curve);

/// The bracket [y' / |c'|] from start to end.
double boundary_term(const SampledCurve& curve);

struct BryantGriffiths {
    double lhs;  ///< (2/pi) W_e
    double rhs;  ///< W_h - 4 [y'/|c'|]
};
BryantGriffiths bryant_griffiths_check(const SampledCurve& curve);

/// Arc of the cap from (x0, alpha0) to the axis, uniformly sampled in
/// arclength. An unbounded vertical ray is truncated at height 10*alpha0.
SampledCurve cap_curve(const CapSpec& spec, std::size_t samples,
                       VerticalRay ray = VerticalRay::Auto);

/// Exact Willmore energy of the revolved cap: 2 pi (1 - sin beta0) for a
/// circle, 0 for either vertical ray.
double cap_willmore_energy(const CapSpec& spec, VerticalRay ray = VerticalRay::Auto);

/// 2-density at infinity: 1 for the unbounded vertical ray, else 0.
int cap_density_infinity(const CapSpec& spec, VerticalRay ray = VerticalRay::Auto);

struct EnergyReport {
    double willmore = 0.0;
    double elastic = 0.0;
    double boundary_term = 0.0;
    /// Empty when the curve touches the axis (length diverges).
    std::optional<double> hyp_length;
    double density_infinity = 0.0;
    std::optional<double> closed_willmore;
    double cap_minus_willmore = 0.0;
    double cap_plus_willmore = 0.0;
};

/// Energies of a single curve, no caps.
EnergyReport energy_report(const SampledCurve& curve);

/// W_e of the curve plus both caps plus 4 pi times the densities at infinity.
/// Inputs must be bounded curves satisfying `bd`: positions within 1e-8,
/// directions within 1e-6, otherwise BoundaryMismatch.
EnergyReport closed_willmore_energy(const SampledCurve& curve, const BoundaryData& bd);

/// Same for a curve given as consecutive pieces meeting on the axis (the
/// assembled two-arc curves do this at their singular point).
EnergyReport closed_willmore_energy(std::span<const SampledCurve> pieces,
                                    const BoundaryData& bd);

/// Positions and end directions of a curve whose endpoints are off the axis.
BoundaryData read_boundary_data(const SampledCurve& curve);

}  // namespace willmore
