#include "willmore/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "willmore/error.hpp"

namespace willmore {

SampledCurve::SampledCurve(std::vector<double> params, std::vector<Vec2> points)
    : params_(std::move(params)), points_(std::move(points)) {
    if (params_.size() != points_.size()) {
        throw Error(ErrorKind::InvalidCurve, "parameter and point counts differ");
    }
    if (points_.size() < 2) {
        throw Error(ErrorKind::InvalidCurve, "a curve needs at least two samples");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const Vec2 p = points_[i];
        if (!std::isfinite(params_[i]) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorKind::InvalidCurve, "non-finite sample at index " + std::to_string(i));
        }
        if (i > 0 && !(params_[i] > params_[i - 1])) {
            throw Error(ErrorKind::InvalidCurve,
                        "parameters not strictly increasing at index " + std::to_string(i));
        }
        if (i > 0 && p == points_[i - 1]) {
            throw Error(ErrorKind::InvalidCurve,
                        "repeated point at index " + std::to_string(i));
        }
        const bool endpoint = i == 0 || i + 1 == points_.size();
        if (p.y < 0.0 || (!endpoint && p.y == 0.0)) {
            throw Error(ErrorKind::AxisContact,
                        "sample " + std::to_string(i) + " has height " + std::to_string(p.y));
        }
    }
}

SampledCurve SampledCurve::from_function(const std::function<Vec2(double)>& f, double lo,
                                         double hi, std::size_t samples) {
    if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
    std::vector<double> t(samples);
    std::vector<Vec2> p(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        // Endpoints are hit exactly.
        t[i] = i + 1 == samples ? hi
                                : lo + (hi - lo) * static_cast<double>(i) /
                                           static_cast<double>(samples - 1);
        p[i] = f(t[i]);
    }
    return SampledCurve(std::move(t), std::move(p));
}

SampledCurve SampledCurve::reversed() const {
    std::vector<double> t(params_.rbegin(), params_.rend());
    for (double& v : t) v = -v;
    return SampledCurve(std::move(t), std::vector<Vec2>(points_.rbegin(), points_.rend()));
}

Derivatives centered_derivatives(const SampledCurve& curve, std::size_t i) {
    if (i == 0 || i + 1 >= curve.size()) {
        throw Error(ErrorKind::BoundaryIndex,
                    "no centered stencil at index " + std::to_string(i));
    }
    const auto& t = curve.params();
    const double h1 = t[i] - t[i - 1];
    const double h2 = t[i + 1] - t[i];
    const std::size_t n = curve.size();
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        const double h = t[lo + 1] - t[lo];
        for (std::size_t k = lo + 1; k < hi; ++k) {
            if (std::abs(t[k + 1] - t[k] - h) > 1e-9 * h) return false;
        }
        return true;
    };
    if (i >= 2 && i + 2 < n && uniform(i - 2, i + 2)) {
        // Five-point stencils on uniformly spaced stretches.
        const double h = 0.25 * (t[i + 2] - t[i - 2]);
        const Vec2 a = curve[i - 2], b = curve[i - 1], c = curve[i], d = curve[i + 1], e = curve[i + 2];
        return {(1.0 / (12.0 * h)) * ((a - e) + 8.0 * (d - b)),
                (1.0 / (12.0 * h * h)) * (16.0 * (b + d) - (a + e) - 30.0 * c)};
    }
    if (n >= 5 && (i == 1 || i == n - 2)) {
        const bool first = i == 1;
        if (first ? uniform(0, 4) : uniform(n - 5, n - 1)) {
            const double h = first ? 0.25 * (t[4] - t[0]) : -0.25 * (t[n - 1] - t[n - 5]);
            const auto at = [&](int k) { return curve[first ? static_cast<std::size_t>(1 + k) : n - 2 - k]; };
            const Vec2 a = at(-1), b = at(0), c = at(1), d = at(2), e = at(3);
            return {(1.0 / (12.0 * h)) * (-3.0 * a - 10.0 * b + 18.0 * c - 6.0 * d + e),
                    (1.0 / (12.0 * h * h)) * (11.0 * a - 20.0 * b + 6.0 * c + 4.0 * d - e)};
        }
    }
    const Vec2 pm = curve[i - 1], p0 = curve[i], pp = curve[i + 1];
    const Vec2 d1 = (-h2 / (h1 * (h1 + h2))) * pm + ((h2 - h1) / (h1 * h2)) * p0 +
                    (h1 / (h2 * (h1 + h2))) * pp;
    const Vec2 d2 = 2.0 * ((1.0 / (h1 * (h1 + h2))) * pm - (1.0 / (h1 * h2)) * p0 +
                           (1.0 / (h2 * (h1 + h2))) * pp);
    return {d1, d2};
}

namespace {

// Derivative at nodes[0] of the Lagrange interpolant through the given nodes.
Vec2 lagrange_derivative_at_first(std::span<const double> t, std::span<const Vec2> f) {
    const std::size_t m = t.size();
    Vec2 d{};
    double w0 = 0.0;
    for (std::size_t k = 1; k < m; ++k) w0 += 1.0 / (t[0] - t[k]);
    d += w0 * f[0];
    for (std::size_t j = 1; j < m; ++j) {
        double num = 1.0, den = 1.0;
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j) continue;
            den *= t[j] - t[k];
            if (k != 0) num *= t[0] - t[k];
        }
        d += (num / den) * f[j];
    }
    return d;
}

}  // namespace

constexpr std::size_t kEndStencil = 6;

Vec2 start_derivative(const SampledCurve& c) {
    const std::size_t m = std::min<std::size_t>(c.size(), kEndStencil);
    return lagrange_derivative_at_first(std::span(c.params()).first(m),
                                        std::span(c.points()).first(m));
}

Vec2 end_derivative(const SampledCurve& c) {
    const std::size_t m = std::min<std::size_t>(c.size(), kEndStencil);
    const std::size_t n = c.size() - 1;
    double t[kEndStencil];
    Vec2 f[kEndStencil];
    for (std::size_t k = 0; k < m; ++k) {
        t[k] = c.params()[n - k];
        f[k] = c[n - k];
    }
    return lagrange_derivative_at_first(std::span(t, m), std::span(f, m));
}

double trapezoid(std::span<const double> t, std::span<const double> f) {
    double sum = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i) sum += 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
    return sum;
}

double trapezoid_extrapolated(std::span<const double> t, std::span<const double> interior) {
    const std::size_t n = t.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < interior.size(); ++i) f[i + 1] = interior[i];
    if (interior.size() >= 2) {
        const double s0 = (f[2] - f[1]) / (t[2] - t[1]);
        f[0] = f[1] - s0 * (t[1] - t[0]);
        const double s1 = (f[n - 2] - f[n - 3]) / (t[n - 2] - t[n - 3]);
        f[n - 1] = f[n - 2] + s1 * (t[n - 1] - t[n - 2]);
    } else if (interior.size() == 1) {
        f[0] = f[n - 1] = f[1];
    }
    return trapezoid(t, f);
}

SampledCurve join(std::span<const SampledCurve> pieces) {
    if (pieces.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to join");
    std::vector<double> t(pieces[0].params());
    std::vector<Vec2> p(pieces[0].points());
    for (std::size_t k = 1; k < pieces.size(); ++k) {
        const auto& piece = pieces[k];
        const double shift = t.back() - piece.params().front();
        for (std::size_t i = 1; i < piece.size(); ++i) {
            t.push_back(piece.params()[i] + shift);
            p.push_back(piece[i]);
        }
    }
    return SampledCurve(std::move(t), std::move(p));
}

}  // namespace willmore
