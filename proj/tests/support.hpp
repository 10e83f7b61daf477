#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "willmore/curve.hpp"
#include "willmore/hyperbolic.hpp"

namespace willmore::testing {

inline constexpr double kPi = std::numbers::pi;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline MoebiusMap random_isometry(std::mt19937_64& rng) {
    while (true) {
        const double a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
        const double c = uniform(rng, -2, 2), d = uniform(rng, -2, 2);
        if (a * d - b * c > 0.2) return {a, b, c, d};
    }
}

/// Rotation about i by up to pi/4, then a dilation and a translation.
/// Images of curves near i stay at coordinates of order one, where second
/// differences at N = 1e4 are not yet dominated by rounding.
inline MoebiusMap random_mild_isometry(std::mt19937_64& rng) {
    const double t = uniform(rng, -kPi / 4, kPi / 4);
    const double scale = std::exp(uniform(rng, -0.3, 0.3));
    const double shift = uniform(rng, -0.5, 0.5);
    const MoebiusMap rotation(std::cos(t), std::sin(t), -std::sin(t), std::cos(t));
    return MoebiusMap(scale, shift, 0, 1) * rotation;
}

/// Circle of radius r about (c, 0), angles from t0 to t1 (uniform).
inline SampledCurve circle_arc(double c, double r, double t0, double t1, std::size_t n) {
    return SampledCurve::from_function(
        [&](double t) { return Vec2{c + r * std::cos(t), r * std::sin(t)}; }, t0, t1, n);
}

inline SampledCurve catenoid_arc(double lo, double hi, std::size_t n) {
    return SampledCurve::from_function([](double s) { return Vec2{s, std::cosh(s)}; }, lo, hi, n);
}

/// Catenoid arc on [-1, 1] with a random Fourier perturbation of the height,
/// kept well above the axis.
struct FourierCurve {
    std::vector<double> ax, ay;

    static FourierCurve random(std::mt19937_64& rng, double amplitude, int modes = 4) {
        FourierCurve f;
        for (int k = 0; k < modes; ++k) {
            f.ax.push_back(uniform(rng, -amplitude, amplitude) / (k + 1));
            f.ay.push_back(uniform(rng, -amplitude, amplitude) / (k + 1));
        }
        return f;
    }
    Vec2 operator()(double s) const {
        double dx = 0.0, dy = 0.0;
        for (std::size_t k = 0; k < ax.size(); ++k) {
            const double w = kPi * static_cast<double>(k + 1) * (s + 1.0) / 2.0;
            dx += ax[k] * std::sin(w);
            dy += ay[k] * std::sin(w);
        }
        return {s + dx, std::cosh(s) + dy};
    }
    SampledCurve sample(std::size_t n) const {
        return SampledCurve::from_function([this](double s) { return (*this)(s); }, -1.0, 1.0, n);
    }
};

/// Catenoid arc with a bump of relative size `amplitude` in the height that
/// vanishes to second order at both ends, so the clamps are unchanged.
inline SampledCurve perturbed_catenoid(double amplitude, std::size_t n) {
    return SampledCurve::from_function(
        [&](double s) {
            const double w = std::sin(kPi * (s + 1.0) / 2.0);
            const double bump = w * w * std::sin(kPi * (s + 1.0)) / 0.649519052838329;
            return Vec2{s, std::cosh(s) * (1.0 + amplitude * bump)};
        },
        -1.0, 1.0, n);
}

}  // namespace willmore::testing
