#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "willmore/error.hpp"
#include "willmore/hyperbolic.hpp"

using namespace willmore;
using namespace willmore::testing;

namespace {

bool close(Vec2 a, Vec2 b, double tol) { return norm(a - b) <= tol; }

UnitTangent random_tangent(std::mt19937_64& rng) {
    const double angle = uniform(rng, -kPi, kPi);
    return UnitTangent::along(HPoint(uniform(rng, -5, 5), uniform(rng, 0.1, 5)),
                              {std::cos(angle), std::sin(angle)});
}

}  // namespace

TEST_CASE("apply evaluates the fractional linear map") {
    CHECK(close(apply(MoebiusMap::identity(), HPoint(3, 2)).vec(), {3, 2}, 0));
    CHECK(close(apply(MoebiusMap(1, -1, 1, 1), HPoint(0, 1)).vec(), {0, 1}, 1e-15));
    CHECK(close(apply(MoebiusMap(1, 1, 0, 1), HPoint(0, 2)).vec(), {1, 2}, 1e-15));
}

TEST_CASE("moebius maps need a positive determinant") {
    CHECK_THROWS_AS(MoebiusMap(1, 0, 0, -1), Error);
    CHECK_THROWS_AS(MoebiusMap(1, 1, 1, 1), Error);
}

TEST_CASE("apply_tangent pushes forward with the complex derivative") {
    const UnitTangent t(HPoint(0, 1), {0, 1});
    const UnitTangent u = apply_tangent(MoebiusMap(1, -1, 1, 1), t);
    CHECK(close(u.base().vec(), {0, 1}, 1e-15));
    CHECK(close(u.v(), {1, 0}, 1e-15));

    const UnitTangent s = apply_tangent(MoebiusMap(3, 0, 0, 1), UnitTangent(HPoint(0, 1), {1, 0}));
    CHECK(close(s.base().vec(), {0, 3}, 1e-15));
    CHECK(close(s.v(), {3, 0}, 1e-15));

    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        const UnitTangent in = random_tangent(rng);
        const UnitTangent out = apply_tangent(random_isometry(rng), in);
        CHECK(norm(out.v()) / out.base().y() == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("apply_boundary is the extended real action") {
    const MoebiusMap m(1, -1, 1, 1);
    CHECK(apply_boundary(MoebiusMap::identity(), BoundaryPoint::finite(5)) == BoundaryPoint::finite(5));
    CHECK(apply_boundary(m, BoundaryPoint::infinity()) == BoundaryPoint::finite(1));
    CHECK(apply_boundary(m, BoundaryPoint::finite(-1)).is_infinite());
    CHECK(BoundaryPoint::infinity() == BoundaryPoint::infinity());
    CHECK_FALSE(BoundaryPoint::infinity() == BoundaryPoint::finite(0));

    std::mt19937_64 rng(12);
    for (int k = 0; k < 100; ++k) {
        const MoebiusMap f = random_isometry(rng);
        const BoundaryPoint q = k == 0 ? BoundaryPoint::infinity() : BoundaryPoint::finite(uniform(rng, -10, 10));
        const BoundaryPoint back = apply_boundary(f.inverse(), apply_boundary(f, q));
        if (q.is_infinite()) {
            CHECK((back.is_infinite() || std::abs(back.value()) > 1e12));
        } else {
            REQUIRE(back.is_finite());
            CHECK(back.value() == doctest::Approx(q.value()).epsilon(1e-10));
        }
    }
}

TEST_CASE("frame_map sends the tangent to the normalized frame") {
    CHECK(frame_map(1, UnitTangent(HPoint(0, 1), {0, 1})).same_map(MoebiusMap(1, -1, 1, 1), 1e-14));
    CHECK(frame_map(1, UnitTangent(HPoint(0, 2), {2, 0})).same_map(MoebiusMap(0.5, 0, 0, 1), 1e-14));

    std::mt19937_64 rng(13);
    for (int k = 0; k < 1000; ++k) {
        UnitTangent t = random_tangent(rng);
        if (k % 100 == 1) t = UnitTangent::along(t.base(), {-1, 0});  // horizontal, backward
        if (k % 100 == 2) t = UnitTangent::along(t.base(), {1, 0});
        const double alpha = uniform(rng, 0.2, 4);
        const MoebiusMap phi = frame_map(alpha, t);
        const UnitTangent u = apply_tangent(phi, t);
        CHECK(close(u.base().vec(), {0, alpha}, 1e-10 * alpha));
        CHECK(close(u.v(), {alpha, 0}, 1e-10 * alpha));
    }
}

TEST_CASE("transport_map carries one tangent to another") {
    const UnitTangent a(HPoint(0, 1), {1, 0});
    CHECK(transport_map(a, a).same_map(MoebiusMap::identity(), 1e-12));
    CHECK(transport_map(a, UnitTangent(HPoint(0, 2), {2, 0})).same_map(MoebiusMap(2, 0, 0, 1), 1e-12));

    std::mt19937_64 rng(14);
    for (int k = 0; k < 100; ++k) {
        const UnitTangent from = random_tangent(rng), to = random_tangent(rng);
        const UnitTangent got = apply_tangent(transport_map(from, to), from);
        CHECK(close(got.base().vec(), to.base().vec(), 1e-9));
        CHECK(close(got.v(), to.v(), 1e-9));
    }
}

TEST_CASE("composition is associative and the inverse undoes a map") {
    std::mt19937_64 rng(15);
    for (int k = 0; k < 50; ++k) {
        const MoebiusMap f = random_isometry(rng), g = random_isometry(rng), h = random_isometry(rng);
        CHECK(((f * g) * h).same_map(f * (g * h), 1e-10));
        CHECK((f * f.inverse()).same_map(MoebiusMap::identity(), 1e-10));
    }
}

TEST_CASE("circle inversion") {
    CHECK(close(invert_at_circle(0, 1, HPoint(0, 1)).vec(), {0, 1}, 0));
    CHECK(close(invert_at_circle(0, 1, HPoint(0, 2)).vec(), {0, 0.5}, 1e-15));
    CHECK(invert_at_circle(0, 2, BoundaryPoint::finite(8)).value() == doctest::Approx(0.5));
    CHECK(invert_at_circle(1, 2, BoundaryPoint::infinity()) == BoundaryPoint::finite(1));

    std::mt19937_64 rng(16);
    for (int k = 0; k < 100; ++k) {
        const double c = uniform(rng, -3, 3), r = uniform(rng, 0.1, 3);
        const HPoint p(uniform(rng, -5, 5), uniform(rng, 0.1, 5));
        CHECK(close(invert_at_circle(c, r, invert_at_circle(c, r, p)).vec(), p.vec(),
                    1e-12 * std::max(1.0, norm(p.vec()))));
    }

    // Circles through the center become vertical lines.
    struct Case { double c, r, center, radius; };
    for (const Case& k : {Case{0, 1, 1, 1}, Case{2, 3, 0.5, 1.5}, Case{-1, 0.5, -2, 1}}) {
        double xs[5];
        for (int i = 0; i < 5; ++i) {
            const double t = 0.3 + 0.5 * i;
            const Vec2 q{k.center + k.radius * std::cos(t), k.radius * std::sin(t)};
            xs[i] = invert_at_circle(k.c, k.r, HPoint(q.x, q.y)).x();
        }
        for (double x : xs) CHECK(x == doctest::Approx(xs[0]).epsilon(1e-12));
    }
}

TEST_CASE("geodesic curvature") {
    const SampledCurve vertical = SampledCurve::from_function([](double t) { return Vec2{0, t}; }, 1, 2, 50);
    for (std::size_t i = 1; i + 1 < vertical.size(); ++i) CHECK(std::abs(geodesic_curvature(vertical, i)) < 1e-12);

    const SampledCurve arc = circle_arc(0.5, 2.0, kPi / 4, 3 * kPi / 4, 1000);
    for (std::size_t i = 1; i + 1 < arc.size(); ++i) CHECK(std::abs(geodesic_curvature(arc, i)) < 1e-6);

    const SampledCurve cat = catenoid_arc(-3, 3, 10000);
    double worst = 0;
    for (std::size_t i = 1; i + 1 < cat.size(); ++i) {
        worst = std::max(worst, std::abs(geodesic_curvature(cat, i) - 2 / std::cosh(cat.params()[i])));
    }
    CHECK(worst < 1e-4);

    CHECK_THROWS_AS(geodesic_curvature(cat, 0), Error);
    try {
        geodesic_curvature(cat, cat.size() - 1);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundaryIndex);
    }
}

TEST_CASE("hyperbolic length") {
    const SampledCurve vertical =
        SampledCurve::from_function([](double t) { return Vec2{0, std::exp(t)}; }, 0, 1, 100);
    CHECK(hyperbolic_length(vertical) == doctest::Approx(1).epsilon(1e-8));
    CHECK(std::abs(hyperbolic_length(catenoid_arc(0, 2, 10000)) - 2) < 1e-6);

    const SampledCurve touching({0, 1}, {{0, 0}, {0, 1}});
    CHECK_THROWS_AS(hyperbolic_length(touching), Error);
}

TEST_CASE("isometries preserve length and curvature magnitude") {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 10; ++k) {
        const SampledCurve c = FourierCurve::random(rng, 0.1, 2).sample(10000);
        const MoebiusMap m = random_mild_isometry(rng);
        const SampledCurve mc = apply_curve(m, c);
        CHECK(hyperbolic_length(mc) == doctest::Approx(hyperbolic_length(c)).epsilon(1e-8));
        double worst = 0;
        for (std::size_t i = 1; i + 1 < c.size(); i += 37) {
            worst = std::max(worst, std::abs(std::abs(geodesic_curvature(mc, i)) - std::abs(geodesic_curvature(c, i))));
        }
        CHECK(worst < 1e-7);
    }
}
