#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "willmore/vec2.hpp"

namespace willmore {

/// Polyline approximation of a profile curve in the closed upper half-plane.
///
/// Samples carry a strictly increasing parameter. Interior samples lie
/// strictly above the axis; the two endpoints may sit on the axis, which is
/// how generalized generators that close up on the axis are represented.
class SampledCurve {
public:
    SampledCurve(std::vector<double> params, std::vector<Vec2> points);

    /// Samples `f` on a uniform grid of `samples` parameters in [lo, hi].
    static SampledCurve from_function(const std::function<Vec2(double)>& f, double lo,
                                      double hi, std::size_t samples);

    const std::vector<double>& params() const noexcept { return params_; }
    const std::vector<Vec2>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    const Vec2& operator[](std::size_t i) const { return points_[i]; }
    const Vec2& front() const { return points_.front(); }
    const Vec2& back() const { return points_.back(); }

    bool touches_axis_at_start() const noexcept { return points_.front().y == 0.0; }
    bool touches_axis_at_end() const noexcept { return points_.back().y == 0.0; }
    /// True when either endpoint lies on the axis.
    bool closed_tag() const noexcept { return touches_axis_at_start() || touches_axis_at_end(); }

    /// Same image traversed backwards; parameters are negated and reversed.
    SampledCurve reversed() const;

private:
    std::vector<double> params_;
    std::vector<Vec2> points_;
};

/// First and second parameter derivatives at a sample.
struct Derivatives {
    Vec2 d1;
    Vec2 d2;
};

/// Finite differences at an interior sample: five points on uniformly
/// spaced stretches (fourth order, shifted by one next to the ends),
/// otherwise the centered three-point stencil (second order on smooth
/// grids). Throws BoundaryIndex for the two endpoints.
Derivatives centered_derivatives(const SampledCurve& curve, std::size_t index);

/// One-sided first derivative at the start or end sample from the four
/// nearest samples (third order).
Vec2 start_derivative(const SampledCurve& curve);
Vec2 end_derivative(const SampledCurve& curve);

/// Composite trapezoid of values given at every sample of `params`.
double trapezoid(std::span<const double> params, std::span<const double> values);

/// Trapezoid over the full grid where only interior values are known: the
/// integrand is extended linearly from the two nearest interior samples to
/// each endpoint. `interior` has params.size() - 2 entries.
double trapezoid_extrapolated(std::span<const double> params, std::span<const double> interior);

/// Concatenates curves whose consecutive end/start points coincide; the
/// parameters of each later piece are shifted to continue increasing.
SampledCurve join(std::span<const SampledCurve> pieces);

}  // namespace willmore
