#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support.hpp"
#include "willmore/error.hpp"
#include "willmore/flow.hpp"
#include "willmore/hyperbolic.hpp"
#include "willmore/surface.hpp"
#include "willmore/threshold.hpp"

using namespace willmore;
using namespace willmore::testing;

namespace {

Eigen::VectorXd free_variables(const SampledCurve& c) {
    const std::size_t n = c.size() - 1;
    Eigen::VectorXd v(2 * n - 4);
    v[0] = norm(c[1] - c[0]);
    for (std::size_t i = 2; i + 2 <= n; ++i) {
        v[2 * i - 3] = c[i].x;
        v[2 * i - 2] = c[i].y;
    }
    v[2 * n - 5] = norm(c[n - 1] - c[n]);
    return v;
}

SampledCurve with_free_variables(const SampledCurve& c, const Eigen::VectorXd& v) {
    const std::size_t n = c.size() - 1;
    std::vector<Vec2> p = c.points();
    const Vec2 d0 = normalized(c[1] - c[0]);
    const Vec2 d1 = normalized(c[n - 1] - c[n]);
    p[1] = c[0] + v[0] * d0;
    for (std::size_t i = 2; i + 2 <= n; ++i) p[i] = {v[2 * i - 3], v[2 * i - 2]};
    p[n - 1] = c[n] + v[2 * n - 5] * d1;
    return SampledCurve(c.params(), std::move(p));
}

SampledCurve random_smooth(std::mt19937_64& rng, std::size_t n) {
    return FourierCurve::random(rng, 0.1).sample(n);
}

}  // namespace

// Energy of the two end half-edges, which carry no curvature cell.
double end_deficit(const SampledCurve& c) {
    const std::size_t n = c.size() - 1;
    const std::vector<double> k = discrete_curvatures(c);
    const double k0 = k[0], kn = k[n];
    return 0.5 * (hyperbolic_distance(c[0], c[1]) * k0 * k0 + hyperbolic_distance(c[n - 1], c[n]) * kn * kn);
}

TEST_CASE("discrete energy") {
    CHECK(discrete_energy(circle_arc(0.3, 1.7, 0.4, 2.6, 1001)) < 1e-5);
    const double cat = 8 * std::tanh(1.0);
    CHECK(std::abs(discrete_energy(catenoid_arc(-1, 1, 4001)) - cat) < 1e-3);
    const SampledCurve c1000 = catenoid_arc(-1, 1, 1001);
    CHECK(std::abs(discrete_energy(c1000) + end_deficit(c1000) - cat) < 1e-5);

    std::mt19937_64 rng(51);
    const FourierCurve f = FourierCurve::random(rng, 0.1);
    const double reference = elastic_energy(f.sample(20001));
    auto error = [&](std::size_t n) {
        const SampledCurve c = f.sample(n);
        return std::abs(discrete_energy(c) + end_deficit(c) - reference);
    };
    CHECK(error(101) / error(201) == doctest::Approx(4).epsilon(0.25));

    SampledCurve touching = catenoid_arc(-1, 1, 64);
    std::vector<Vec2> p = touching.points();
    p[10].y = 0;
    CHECK_THROWS_AS(discrete_energy(SampledCurve(touching.params(), p)), Error);
}

TEST_CASE("discrete curvatures follow the smooth ones") {
    const SampledCurve c = catenoid_arc(-1, 1, 2001);
    const std::vector<double> k = discrete_curvatures(c);
    REQUIRE(k.size() == c.size());
    for (std::size_t i = 0; i < c.size(); i += 100) CHECK(std::abs(k[i] - 2 / std::cosh(c[i].x)) < 1e-5);
}

TEST_CASE("gradient matches finite differences") {
    std::mt19937_64 rng(52);
    for (int k = 0; k < 100; ++k) {
        const SampledCurve c = random_smooth(rng, 33 + k % 5);
        const Eigen::VectorXd g = discrete_gradient(c);
        const Eigen::VectorXd v = free_variables(c);
        REQUIRE(g.size() == v.size());
        Eigen::VectorXd fd(v.size());
        for (Eigen::Index j = 0; j < v.size(); ++j) {
            Eigen::VectorXd a = v, b = v;
            a[j] += 1e-6;
            b[j] -= 1e-6;
            fd[j] = (discrete_energy(with_free_variables(c, a)) - discrete_energy(with_free_variables(c, b))) / 2e-6;
        }
        CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
    }
}

TEST_CASE("known critical curves") {
    const SampledCurve circle = circle_arc(0.0, 1.0, 0.5, 2.6, 129);
    CHECK(discrete_gradient(circle).norm() < 1e-8);
    CHECK(normal_gradient(circle).norm() < 1e-8);
    CHECK(make_state(circle).grad_norm < 1e-8);

    double prev = 0;
    for (std::size_t n : {64, 128, 256, 512}) {
        const double g = normal_gradient(catenoid_arc(-1, 1, n + 1)).norm();
        if (prev > 0) CHECK(prev / g > 4);
        prev = g;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("steps descend and keep the clamps") {
    FlowConfig config;
    config.resolution = 64;
    config.reparam_every = 3;
    FlowState s = make_state(perturbed_catenoid(0.05, 65));
    const Vec2 first = s.curve.front(), last = s.curve.back();
    const Vec2 d0 = normalized(s.curve[1] - s.curve[0]);
    const Vec2 d1 = normalized(s.curve[63] - s.curve[64]);
    for (int k = 0; k < 10; ++k) {
        const FlowState next = step(s, config);
        if (next.grad_norm <= config.grad_tol) break;
        CHECK(next.energy < s.energy);
        CHECK(next.energy == discrete_energy(next.curve));
        CHECK(next.curve.front() == first);
        CHECK(next.curve.back() == last);
        CHECK(norm(normalized(next.curve[1] - next.curve[0]) - d0) < 1e-12);
        CHECK(norm(normalized(next.curve[63] - next.curve[64]) - d1) < 1e-12);
        s = next;
    }
}

TEST_CASE("plain gradient descent also descends") {
    FlowConfig config;
    config.resolution = 64;
    config.preconditioner = Preconditioner::None;
    config.max_steps = 20;
    const auto [state, monitors] = run(perturbed_catenoid(0.05, 65), config);
    double prev = monitors.initial.energy;
    for (const MonitorRecord& r : monitors.records) {
        CHECK(r.energy < prev);
        prev = r.energy;
    }
    CHECK(monitors.records.size() == 20);
}

TEST_CASE("a geodesic does not move") {
    FlowConfig config;
    config.resolution = 64;
    config.grad_tol = 1e-8;
    const SampledCurve arc = circle_arc(0.0, 1.0, 0.5, 2.6, 65);
    const FlowState s = make_state(arc);
    const FlowState t = step(s, config);
    CHECK(t.step_count == 0);
    CHECK(t.curve.points() == s.curve.points());
    const auto [state, monitors] = run(arc, config);
    CHECK(monitors.records.empty());
    CHECK(monitors.converged);
}

TEST_CASE("perturbed catenoid converges to an elastica") {
    FlowConfig config;
    const auto [state, monitors] = run(perturbed_catenoid(0.05, 513), config);
    CHECK(monitors.converged);
    CHECK_FALSE(monitors.failure);
    CHECK(state.grad_norm <= config.grad_tol);
    CHECK(state.energy <= monitors.initial.energy);
    double prev = monitors.initial.energy;
    for (const MonitorRecord& r : monitors.records) {
        CHECK(r.energy < prev);
        CHECK(r.hyp_length > 0);
        CHECK(std::isfinite(r.hyp_length));
        CHECK(r.min_height > 0);
        prev = r.energy;
    }
    CHECK(monitors.records.size() == static_cast<std::size_t>(state.step_count));
    const CurvatureFit fit = fit_catenoid_profile(state.curve);
    CHECK(fit.residual < 1e-2);
}

TEST_CASE("admissible initial curves keep a bounded hyperbolic length") {
    const SampledCurve initial = perturbed_catenoid(0.05, 257);
    REQUIRE(admissibility(initial).margin > 0);
    FlowConfig config;
    config.resolution = 256;
    const auto [state, monitors] = run(initial, config);
    CHECK(monitors.converged);
    double running = monitors.initial.hyp_length;
    for (const MonitorRecord& r : monitors.records) {
        CHECK(r.hyp_length < 2 * running);
        running = std::max(running, r.hyp_length);
    }
}

TEST_CASE("flow is deterministic") {
    FlowConfig config;
    config.resolution = 64;
    config.max_steps = 15;
    const auto a = run(perturbed_catenoid(0.05, 200), config);
    const auto b = run(perturbed_catenoid(0.05, 200), config);
    CHECK(a.first.curve.points() == b.first.curve.points());
    CHECK(a.second.records.size() == b.second.records.size());
}

TEST_CASE("a curve near the axis stays above it") {
    FlowConfig config;
    config.resolution = 64;
    config.max_steps = 30;
    const SampledCurve dip = SampledCurve::from_function(
        [](double s) { return Vec2{s, 1.0 - (1.0 - 1e-3) * std::pow(std::cos(kPi * s / 2), 8)}; }, -1, 1, 65);
    const auto [state, monitors] = run(dip, config);
    CHECK(monitors.initial.min_height == doctest::Approx(1e-3));
    for (const MonitorRecord& r : monitors.records) CHECK(r.min_height > 0);
    for (const Vec2& p : state.curve.points()) CHECK(p.y > 0);
}

TEST_CASE("config validation") {
    FlowConfig config;
    config.resolution = 16;
    CHECK_THROWS_AS(config.validate(), Error);
    config = FlowConfig{};
    config.backtrack_factor = 1.0;
    CHECK_THROWS_AS(config.validate(), Error);
    config = FlowConfig{};
    config.grad_tol = 0;
    CHECK_THROWS_AS(config.validate(), Error);
}
