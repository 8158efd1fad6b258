// Geometry layer: grids, validity checks, curvature fields, boundary
// recovery, integrals, Steiner point, rigid motions.
//
// Closed-form oracles used throughout:
//   ellipse   r h^3 = a^2 b^2        (r the curvature radius)
//   spheroid  K (a^2 c)^2 = h^4
//   ellipse   |F|^2 = (a^4 cos^2 + b^4 sin^2) / h^2
// Tolerances on discretized quantities come from measured errors on this
// grid family (second-order decay), with roughly 2x headroom.

#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gcf/gcf.hpp"

using namespace gcf;

namespace {

double max_abs_diff(const std::vector<double>& a, double target) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x - target));
    return m;
}

}  // namespace

TEST_CASE("curve grid layout") {
    const CurveBody b = circle(16, 1.0);
    REQUIRE(CurveBody::surface_dim == 1);
    REQUIRE(CurveBody::min_samples == 16);
    REQUIRE(b.samples() == 16);
    REQUIRE(b.spacing() == Catch::Approx(2.0 * kPi / 16.0).epsilon(1e-15));
    REQUIRE(b.angle(0) == 0.0);
    REQUIRE(b.angle(3) == Catch::Approx(3.0 * 2.0 * kPi / 16.0).epsilon(1e-15));
    REQUIRE(CurveBody::unit_ball_volume() == Catch::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("axisym grid is cell-centred with no pole samples") {
    const AxisymBody b = sphere(32, 1.0);
    REQUIRE(AxisymBody::surface_dim == 2);
    REQUIRE(AxisymBody::min_samples == 32);
    REQUIRE(b.samples() == 32);
    REQUIRE(b.spacing() == Catch::Approx(kPi / 32.0).epsilon(1e-15));
    REQUIRE(b.angle(0) == Catch::Approx(0.5 * kPi / 32.0).epsilon(1e-15));
    REQUIRE(b.angle(31) < kPi);
    REQUIRE(b.angle(31) == Catch::Approx(31.5 * kPi / 32.0).epsilon(1e-15));
    REQUIRE(AxisymBody::unit_ball_volume() == Catch::Approx(4.0 * kPi / 3.0).epsilon(1e-15));
}

TEST_CASE("construction rejects grids below the minimum size") {
    REQUIRE_THROWS_WITH(CurveBody::from_support(std::vector<double>(15, 1.0)),
                        Catch::Matchers::ContainsSubstring("at least 16 samples, got 15"));
    REQUIRE_THROWS_WITH(AxisymBody::from_support(std::vector<double>(31, 1.0)),
                        Catch::Matchers::ContainsSubstring("at least 32 samples, got 31"));
    REQUIRE_THROWS_AS(CurveBody::from_support(std::vector<double>(15, 1.0)),
                      std::invalid_argument);
}

TEST_CASE("nonpositive support is rejected and reported") {
    std::vector<double> h(64, 1.0);
    h[5] = -0.2;
    const SupportCheck c = CurveBody::check_support(h);
    REQUIRE_FALSE(c.ok);
    REQUIRE(std::string(c.field) == "h");
    REQUIRE(c.index == 5);
    REQUIRE(c.value == -0.2);
    try {
        CurveBody::from_support(h);
        FAIL("expected ConvexityViolation");
    } catch (const ConvexityViolation& e) {
        REQUIRE(e.field() == "h");
        REQUIRE(e.index() == 5);
        REQUIRE(e.value() == -0.2);
    }

    // NaN counts as invalid, not as positive.
    h[5] = 1.0;
    h[3] = std::numeric_limits<double>::quiet_NaN();
    const SupportCheck cn = CurveBody::check_support(h);
    REQUIRE_FALSE(cn.ok);
    REQUIRE(std::string(cn.field) == "h");
    REQUIRE(cn.index == 3);
}

TEST_CASE("non-convex curve support is rejected with the radius field") {
    std::vector<double> h(64, 1.0);
    h[10] += 0.5;  // one-sample spike drives h'' + h negative there
    const SupportCheck c = CurveBody::check_support(h);
    REQUIRE_FALSE(c.ok);
    REQUIRE(std::string(c.field) == "r");
    REQUIRE(c.index == 10);
    REQUIRE(c.value < 0.0);
    REQUIRE_THROWS_AS(CurveBody::from_support(h), ConvexityViolation);
}

TEST_CASE("non-convex axisym support names the failing radius") {
    std::vector<double> h(64, 1.0);
    h[20] += 0.5;
    const SupportCheck c = AxisymBody::check_support(h);
    REQUIRE_FALSE(c.ok);
    REQUIRE(std::string(c.field) == "r1");
    REQUIRE(c.index == 20);
    REQUIRE_THROWS_AS(AxisymBody::from_support(h), ConvexityViolation);
}

TEST_CASE("trig finite differences annihilate the translation modes") {
    // Periodic grid, N = 256.
    {
        const int n = 256;
        const double d = 2.0 * kPi / n;
        std::vector<double> c(n), s(n);
        for (int j = 0; j < n; ++j) {
            c[(std::size_t)j] = std::cos(j * d);
            s[(std::size_t)j] = std::sin(j * d);
        }
        const std::vector<double> dc = fd::d1_periodic(c, d);
        const std::vector<double> d2c = fd::d2_periodic(c, d);
        double e1 = 0.0, e2 = 0.0;
        for (int j = 0; j < n; ++j) {
            e1 = std::max(e1, std::abs(dc[(std::size_t)j] + s[(std::size_t)j]));
            e2 = std::max(e2, std::abs(d2c[(std::size_t)j] + c[(std::size_t)j]));
        }
        REQUIRE(e1 <= 2e-13);   // measured 1.4e-14
        REQUIRE(e2 <= 1e-11);   // measured 1.5e-12
    }
    // Reflecting grid, N = 128: cos(phi) is even across both poles.
    {
        const int n = 128;
        const double d = kPi / n;
        std::vector<double> c(n), s(n);
        for (int j = 0; j < n; ++j) {
            const double phi = (j + 0.5) * d;
            c[(std::size_t)j] = std::cos(phi);
            s[(std::size_t)j] = std::sin(phi);
        }
        const std::vector<double> dc = fd::d1_reflect(c, d, +1);
        const std::vector<double> d2c = fd::d2_reflect(c, d, +1);
        double e1 = 0.0, e2 = 0.0;
        for (int j = 0; j < n; ++j) {
            e1 = std::max(e1, std::abs(dc[(std::size_t)j] + s[(std::size_t)j]));
            e2 = std::max(e2, std::abs(d2c[(std::size_t)j] + c[(std::size_t)j]));
        }
        REQUIRE(e1 <= 1e-13);   // measured 5.8e-15
        REQUIRE(e2 <= 1e-12);
    }
}

TEST_CASE("translating a body leaves its curvature unchanged to rounding") {
    {
        const CurveBody moved = translate(circle(256, 1.0), 0.3, -0.1);
        const CurvatureFields f = curvature_fields(moved);
        REQUIRE(max_abs_diff(f.gauss, 1.0) <= 1e-10);
    }
    {
        const AxisymBody moved = translate(sphere(128, 1.0), 0.25);
        const CurvatureFields f = curvature_fields(moved);
        REQUIRE(max_abs_diff(f.gauss, 1.0) <= 1e-10);
    }
}

TEST_CASE("circle and sphere curvature fields are exact") {
    {
        const CurvatureFields f = curvature_fields(circle(64, 2.0));
        REQUIRE(max_abs_diff(f.r1, 2.0) <= 1e-14);
        REQUIRE(max_abs_diff(f.gauss, 0.5) <= 1e-14);
        REQUIRE(max_abs_diff(f.mean, 0.5) <= 1e-14);
        REQUIRE(f.r2.empty());
        for (std::size_t j = 0; j < f.gauss.size(); ++j) {
            REQUIRE(f.lambda_min[j] == f.gauss[j]);
            REQUIRE(f.lambda_max[j] == f.gauss[j]);
        }
    }
    {
        const CurvatureFields f = curvature_fields(sphere(64, 1.5));
        REQUIRE(max_abs_diff(f.r1, 1.5) <= 1e-13);
        REQUIRE(max_abs_diff(f.r2, 1.5) <= 1e-13);
        REQUIRE(max_abs_diff(f.gauss, 1.0 / 2.25) <= 1e-13);
        REQUIRE(max_abs_diff(f.mean, 2.0 / 1.5) <= 1e-13);
        REQUIRE(max_abs_diff(f.trace_b, 3.0) <= 1e-13);
    }
}

TEST_CASE("ellipse curvature satisfies r h^3 = a^2 b^2 with second-order error") {
    const double a = 2.0, b = 0.5;
    auto worst = [&](int n) {
        const CurveBody e = ellipse(n, a, b);
        const CurvatureFields f = curvature_fields(e);
        const std::vector<double>& h = e.support();
        double m = 0.0;
        for (std::size_t j = 0; j < h.size(); ++j)
            m = std::max(m, std::abs(f.r1[j] * h[j] * h[j] * h[j] - a * a * b * b));
        return m;
    };
    const double e512 = worst(512);
    const double e1024 = worst(1024);
    REQUIRE(e512 <= 1.2e-3);    // measured 5.6e-4
    REQUIRE(e1024 <= 3e-4);     // measured 1.4e-4
    REQUIRE(e512 / e1024 > 3.0);
    REQUIRE(e512 / e1024 < 5.0);
}

TEST_CASE("spheroid curvature satisfies K (a^2 c)^2 = h^4 with second-order error") {
    const double a = 1.4, c = 0.8;
    auto worst = [&](int n) {
        const AxisymBody s = spheroid(n, a, c);
        const CurvatureFields f = curvature_fields(s);
        const std::vector<double>& h = s.support();
        double m = 0.0;
        for (std::size_t j = 0; j < h.size(); ++j) {
            const double h2 = h[j] * h[j];
            m = std::max(m, std::abs(f.gauss[j] * a * a * c * a * a * c - h2 * h2));
        }
        return m;
    };
    const double e512 = worst(512);
    const double e1024 = worst(1024);
    REQUIRE(e512 <= 5e-5);      // measured 2.4e-5
    REQUIRE(e1024 <= 1.3e-5);   // measured 6.1e-6
    REQUIRE(e512 / e1024 > 3.0);
    REQUIRE(e512 / e1024 < 5.0);
}

TEST_CASE("boundary points recover the body") {
    {
        const std::vector<std::array<double, 2>> pts = boundary_points(circle(64, 2.0));
        for (const auto& p : pts)
            REQUIRE(std::abs(std::sqrt(p[0] * p[0] + p[1] * p[1]) - 2.0) <= 1e-13);
    }
    {
        // Meridian of a sphere is the half-circle (R sin, R cos).
        const AxisymBody b = sphere(64, 1.5);
        const std::vector<std::array<double, 2>> pts = boundary_points(b);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const double phi = b.angle(static_cast<int>(j));
            REQUIRE(std::abs(pts[j][0] - 1.5 * std::sin(phi)) <= 1e-13);
            REQUIRE(std::abs(pts[j][1] - 1.5 * std::cos(phi)) <= 1e-13);
        }
    }
    // Implicit-equation residual decays at second order.
    {
        const double a = 1.5, b = 0.75;
        auto worst = [&](int n) {
            double m = 0.0;
            for (const auto& p : boundary_points(ellipse(n, a, b)))
                m = std::max(m, std::abs(p[0] * p[0] / (a * a) +
                                         p[1] * p[1] / (b * b) - 1.0));
            return m;
        };
        const double e256 = worst(256);
        REQUIRE(e256 <= 1e-3);
        REQUIRE(worst(512) <= e256 / 3.0);
    }
    {
        const double a = 1.3, c = 0.8;
        auto worst = [&](int n) {
            double m = 0.0;
            for (const auto& p : boundary_points(spheroid(n, a, c)))
                m = std::max(m, std::abs(p[0] * p[0] / (a * a) +
                                         p[1] * p[1] / (c * c) - 1.0));
            return m;
        };
        const double e256 = worst(256);
        REQUIRE(e256 <= 1e-3);
        REQUIRE(worst(512) <= e256 / 3.0);
    }
}

TEST_CASE("position norm matches h^2 + (h')^2 and the ellipse closed form") {
    {
        const std::vector<double> f2 = position_norm_sq(circle(64, 2.0));
        REQUIRE(max_abs_diff(f2, 4.0) <= 1e-13);
    }
    // |F|^2 equals |boundary point|^2 identically.
    {
        const CurveBody e = ellipse(128, 1.7, 0.9);
        const std::vector<double> f2 = position_norm_sq(e);
        const std::vector<std::array<double, 2>> pts = boundary_points(e);
        for (std::size_t j = 0; j < f2.size(); ++j)
            REQUIRE(std::abs(f2[j] - (pts[j][0] * pts[j][0] + pts[j][1] * pts[j][1])) <=
                    1e-12);
    }
    {
        const AxisymBody s = spheroid(128, 1.3, 0.8);
        const std::vector<double> f2 = position_norm_sq(s);
        const std::vector<std::array<double, 2>> pts = boundary_points(s);
        for (std::size_t j = 0; j < f2.size(); ++j)
            REQUIRE(std::abs(f2[j] - (pts[j][0] * pts[j][0] + pts[j][1] * pts[j][1])) <=
                    1e-12);
    }
    {
        const double a = 2.0, b = 0.5;
        auto worst = [&](int n) {
            const CurveBody e = ellipse(n, a, b);
            const std::vector<double> f2 = position_norm_sq(e);
            double m = 0.0;
            for (std::size_t j = 0; j < f2.size(); ++j) {
                const double t = e.angle(static_cast<int>(j));
                const double ct = std::cos(t), st = std::sin(t);
                const double h2 = a * a * ct * ct + b * b * st * st;
                const double target =
                    (a * a * a * a * ct * ct + b * b * b * b * st * st) / h2;
                m = std::max(m, std::abs(f2[j] - target));
            }
            return m;
        };
        const double e256 = worst(256);
        REQUIRE(e256 <= 2e-3);
        REQUIRE(worst(512) <= e256 / 3.0);
    }
}

TEST_CASE("volume matches closed forms") {
    REQUIRE(std::abs(volume(circle(64, 2.0)) - 4.0 * kPi) <= 1e-13);
    REQUIRE(std::abs(volume(sphere(64, 1.5)) - 4.5 * kPi) <= 1e-12);
    REQUIRE(std::abs(volume(ellipse(512, 1.3, 0.7)) - kPi * 1.3 * 0.7) <= 5e-5);
    REQUIRE(std::abs(volume(spheroid(512, 1.3, 0.8)) -
                     4.0 / 3.0 * kPi * 1.3 * 1.3 * 0.8) <= 3e-5);
}

TEST_CASE("volume is (n+1)-homogeneous under scaling") {
    {
        const CurveBody e = ellipse(128, 1.4, 0.9);
        const double v = volume(e);
        REQUIRE(volume(scale(e, 2.0)) == Catch::Approx(4.0 * v).epsilon(1e-12));
    }
    {
        const AxisymBody s = spheroid(128, 1.2, 0.9);
        const double v = volume(s);
        REQUIRE(volume(scale(s, 2.0)) == Catch::Approx(8.0 * v).epsilon(1e-12));
    }
}

TEST_CASE("scale rejects nonpositive factors") {
    const CurveBody b = circle(16, 1.0);
    REQUIRE_THROWS_AS(scale(b, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(scale(b, -1.0), std::invalid_argument);
}

TEST_CASE("steiner point tracks translation and recenter zeroes it") {
    {
        const std::array<double, 2> s0 = steiner_point(circle(128, 1.0));
        REQUIRE(std::abs(s0[0]) <= 1e-14);
        REQUIRE(std::abs(s0[1]) <= 1e-14);
        const CurveBody moved = translate(circle(128, 1.0), 0.3, -0.2);
        const std::array<double, 2> s1 = steiner_point(moved);
        REQUIRE(std::abs(s1[0] - 0.3) <= 1e-13);
        REQUIRE(std::abs(s1[1] + 0.2) <= 1e-13);
        const std::array<double, 2> s2 = steiner_point(recenter(moved));
        REQUIRE(std::abs(s2[0]) <= 1e-13);
        REQUIRE(std::abs(s2[1]) <= 1e-13);
    }
    {
        const CurveBody bump = random_convex_curve(128, 11);
        const std::array<double, 2> before = steiner_point(bump);
        const std::array<double, 2> after = steiner_point(translate(bump, 0.1, 0.05));
        REQUIRE(std::abs(after[0] - before[0] - 0.1) <= 1e-12);
        REQUIRE(std::abs(after[1] - before[1] - 0.05) <= 1e-12);
    }
    {
        REQUIRE(std::abs(steiner_point_z(sphere(64, 1.0))) <= 1e-14);
        const AxisymBody moved = translate(sphere(64, 1.0), 0.25);
        REQUIRE(std::abs(steiner_point_z(moved) - 0.25) <= 1e-13);
        REQUIRE(std::abs(steiner_point_z(recenter(moved))) <= 1e-13);
        const AxisymBody bump = random_convex_axisym(64, 5);
        const double b0 = steiner_point_z(bump);
        REQUIRE(std::abs(steiner_point_z(translate(bump, 0.1)) - b0 - 0.1) <= 1e-12);
    }
}

TEST_CASE("random bodies are deterministic in the seed") {
    const CurveBody a = random_convex_curve(128, 7);
    const CurveBody b = random_convex_curve(128, 7);
    REQUIRE(a.support() == b.support());
    const CurveBody c = random_convex_curve(128, 8);
    REQUIRE(a.support() != c.support());

    const AxisymBody x = random_convex_axisym(64, 7);
    const AxisymBody y = random_convex_axisym(64, 7);
    REQUIRE(x.support() == y.support());
    REQUIRE(AxisymBody::check_support(x.support()).ok);
    REQUIRE(CurveBody::check_support(a.support()).ok);
}
