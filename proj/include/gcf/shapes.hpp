#pragma once

// Canonical starting bodies: spheres, ellipses/spheroids sampled from their
// exact support functions, cosine-perturbed variants, and seeded random
// convex bodies (low trigonometric modes, rejection-sampled until strictly
// convex).

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "gcf/detail/rng.hpp"
#include "gcf/support.hpp"

namespace gcf {

inline CurveBody circle(int n, double radius = 1.0) {
    return CurveBody::from_support(std::vector<double>(static_cast<std::size_t>(n), radius));
}

inline AxisymBody sphere(int n, double radius = 1.0) {
    return AxisymBody::from_support(std::vector<double>(static_cast<std::size_t>(n), radius));
}

// Ellipse with semi-axes (a, b): h(theta) = sqrt(a^2 cos^2 + b^2 sin^2).
inline CurveBody ellipse(int n, double a, double b) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * kPi * j / n;
        const double c = a * std::cos(t), s = b * std::sin(t);
        h[static_cast<std::size_t>(j)] = std::sqrt(c * c + s * s);
    }
    return CurveBody::from_support(std::move(h));
}

// Spheroid with equatorial semi-axis a and polar semi-axis c:
// h(phi) = sqrt(a^2 sin^2 + c^2 cos^2).
inline AxisymBody spheroid(int n, double a, double c) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double p = (j + 0.5) * kPi / n;
        const double s = a * std::sin(p), q = c * std::cos(p);
        h[static_cast<std::size_t>(j)] = std::sqrt(s * s + q * q);
    }
    return AxisymBody::from_support(std::move(h));
}

// h = base(theta) * (1 + sum_k amp_k cos(k theta)).  A multiplicative bump
// keeps the pole conditions of the base intact on the axisym grid.
inline CurveBody bumped_circle(int n, const std::vector<std::pair<int, double>>& modes,
                               double radius = 1.0) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * kPi * j / n;
        double v = 1.0;
        for (const auto& [k, amp] : modes) v += amp * std::cos(k * t);
        h[static_cast<std::size_t>(j)] = radius * v;
    }
    return CurveBody::from_support(std::move(h));
}

inline AxisymBody bumped_sphere(int n, const std::vector<std::pair<int, double>>& modes,
                                double radius = 1.0) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double p = (j + 0.5) * kPi / n;
        double v = 1.0;
        for (const auto& [k, amp] : modes) v += amp * std::cos(k * p);
        h[static_cast<std::size_t>(j)] = radius * v;
    }
    return AxisymBody::from_support(std::move(h));
}

inline CurveBody bumped_ellipse(int n, double a, double b,
                                const std::vector<std::pair<int, double>>& modes) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double t = 2.0 * kPi * j / n;
        const double c = a * std::cos(t), s = b * std::sin(t);
        double v = 1.0;
        for (const auto& [k, amp] : modes) v += amp * std::cos(k * t);
        h[static_cast<std::size_t>(j)] = std::sqrt(c * c + s * s) * v;
    }
    return CurveBody::from_support(std::move(h));
}

inline AxisymBody bumped_spheroid(int n, double a, double c,
                                  const std::vector<std::pair<int, double>>& modes) {
    std::vector<double> h(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double p = (j + 0.5) * kPi / n;
        const double s = a * std::sin(p), q = c * std::cos(p);
        double v = 1.0;
        for (const auto& [k, amp] : modes) v += amp * std::cos(k * p);
        h[static_cast<std::size_t>(j)] = std::sqrt(s * s + q * q) * v;
    }
    return AxisymBody::from_support(std::move(h));
}

namespace detail {

// Draw cosine (and for curves also sine) coefficients with a 1/k^2 falloff
// and retry with fresh draws until the sampled body is strictly convex.
// Deterministic in (seed); independent of everything else.
template <class Body, class MakeH>
inline Body random_convex(std::uint64_t seed, MakeH make_h) {
    for (std::uint64_t attempt = 0;; ++attempt) {
        rng::SplitMix64 g(rng::stream(seed, attempt));
        std::vector<double> h = make_h(g);
        if (Body::check_support(h).ok) return Body::from_support(std::move(h));
        if (attempt > 200)
            throw std::invalid_argument("random body generation failed to find a convex sample");
    }
}

}  // namespace detail

inline CurveBody random_convex_curve(int n, std::uint64_t seed, int max_mode = 6,
                                     double amplitude = 0.03) {
    return detail::random_convex<CurveBody>(seed, [&](rng::SplitMix64& g) {
        std::vector<std::pair<double, double>> coef;
        for (int k = 2; k <= max_mode; ++k)
            coef.emplace_back(g.uniform(-amplitude, amplitude) / (k * k),
                              g.uniform(-amplitude, amplitude) / (k * k));
        std::vector<double> h(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double t = 2.0 * kPi * j / n;
            double v = 1.0;
            for (int k = 2; k <= max_mode; ++k) {
                const auto& [ca, sa] = coef[static_cast<std::size_t>(k - 2)];
                v += ca * std::cos(k * t) + sa * std::sin(k * t);
            }
            h[static_cast<std::size_t>(j)] = v;
        }
        return h;
    });
}

inline AxisymBody random_convex_axisym(int n, std::uint64_t seed, int max_mode = 6,
                                       double amplitude = 0.03) {
    return detail::random_convex<AxisymBody>(seed, [&](rng::SplitMix64& g) {
        std::vector<double> coef;
        for (int k = 1; k <= max_mode; ++k)
            coef.push_back(g.uniform(-amplitude, amplitude) / (k * k));
        std::vector<double> h(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double p = (j + 0.5) * kPi / n;
            double v = 1.0;
            for (int k = 1; k <= max_mode; ++k)
                v += coef[static_cast<std::size_t>(k - 1)] * std::cos(k * p);
            h[static_cast<std::size_t>(j)] = v;
        }
        return h;
    });
}

}  // namespace gcf
