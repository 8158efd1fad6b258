#pragma once

// Convex bodies in support-function form on fixed angular grids, plus the
// geometric fields and integrals everything else is built from.
//
// CurveBody   closed convex plane curve; h sampled at theta_j = 2 pi j / N
//             on the periodic grid.
// AxisymBody  convex surface of revolution in R^3; h sampled at the
//             cell-centred polar angles phi_j = (j+1/2) pi / N.  The poles
//             carry no sample and reflection ghosts encode h'(0) = h'(pi) = 0.
//
// The boundary point with outward normal u is F = h u + grad h, the principal
// radii are the eigenvalues of (hessian h + h id) on the sphere, and every
// body must satisfy h > 0 and radii > 0 sample-wise.  Construction enforces
// this; bodies are immutable values afterwards.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcf/detail/fd.hpp"
#include "gcf/detail/quadrature.hpp"
#include "gcf/errors.hpp"

namespace gcf {

inline constexpr double kPi = 3.14159265358979323846;

// Result of a non-throwing validity check.  `field` names the quantity that
// failed ("h", "r", "r1", "r2"), `index` the worst sample.
struct SupportCheck {
    bool ok = true;
    const char* field = "";
    int index = -1;
    double value = 0.0;
};

namespace detail {

inline std::vector<double> curve_radius(const std::vector<double>& h, double d) {
    std::vector<double> r = fd::d2_periodic(h, d);
    for (std::size_t j = 0; j < h.size(); ++j) r[j] += h[j];
    return r;
}

struct AxisymRadii {
    std::vector<double> r1;  // meridional: h'' + h
    std::vector<double> r2;  // azimuthal: h' cot(phi) + h
};

inline AxisymRadii axisym_radii(const std::vector<double>& h, double d) {
    AxisymRadii out;
    out.r1 = fd::d2_reflect(h, d, +1);
    const std::vector<double> hp = fd::d1_reflect(h, d, +1);
    out.r2.resize(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) {
        const double phi = (static_cast<double>(j) + 0.5) * d;
        out.r1[j] += h[j];
        out.r2[j] = hp[j] * (std::cos(phi) / std::sin(phi)) + h[j];
    }
    return out;
}

// Track the worst (most negative) sample of a field that must be positive.
struct WorstSample {
    const char* field = "";
    int index = -1;
    double value = 0.0;
    bool any = false;

    void consider(const char* f, const std::vector<double>& v) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            const bool bad = !(v[j] > 0.0);  // catches NaN as well
            if (bad && (!any || !(v[j] >= value))) {
                field = f;
                index = static_cast<int>(j);
                value = v[j];
                any = true;
            }
        }
    }
};

}  // namespace detail

class CurveBody {
public:
    static constexpr int surface_dim = 1;
    static constexpr int min_samples = 16;

    static SupportCheck check_support(const std::vector<double>& h) {
        SupportCheck c;
        detail::WorstSample worst;
        worst.consider("h", h);
        if (!worst.any)
            worst.consider("r", detail::curve_radius(h, 2.0 * kPi /
                                                            static_cast<double>(h.size())));
        if (worst.any) {
            c.ok = false;
            c.field = worst.field;
            c.index = worst.index;
            c.value = worst.value;
        }
        return c;
    }

    static CurveBody from_support(std::vector<double> h) {
        if (h.size() < static_cast<std::size_t>(min_samples))
            throw std::invalid_argument("curve grid needs at least " +
                                        std::to_string(min_samples) + " samples, got " +
                                        std::to_string(h.size()));
        const SupportCheck c = check_support(h);
        if (!c.ok) throw ConvexityViolation(c.field, c.index, c.value);
        return CurveBody(std::move(h));
    }

    int samples() const { return static_cast<int>(h_.size()); }
    double spacing() const { return 2.0 * kPi / static_cast<double>(h_.size()); }
    double angle(int j) const {
        return 2.0 * kPi * static_cast<double>(j) / static_cast<double>(h_.size());
    }
    const std::vector<double>& support() const { return h_; }

    static double unit_ball_volume() { return kPi; }

private:
    explicit CurveBody(std::vector<double> h) : h_(std::move(h)) {}
    std::vector<double> h_;
};

class AxisymBody {
public:
    static constexpr int surface_dim = 2;
    static constexpr int min_samples = 32;

    static SupportCheck check_support(const std::vector<double>& h) {
        SupportCheck c;
        detail::WorstSample worst;
        worst.consider("h", h);
        if (!worst.any) {
            const detail::AxisymRadii rad =
                detail::axisym_radii(h, kPi / static_cast<double>(h.size()));
            worst.consider("r1", rad.r1);
            worst.consider("r2", rad.r2);
        }
        if (worst.any) {
            c.ok = false;
            c.field = worst.field;
            c.index = worst.index;
            c.value = worst.value;
        }
        return c;
    }

    static AxisymBody from_support(std::vector<double> h) {
        if (h.size() < static_cast<std::size_t>(min_samples))
            throw std::invalid_argument("axisym grid needs at least " +
                                        std::to_string(min_samples) + " samples, got " +
                                        std::to_string(h.size()));
        const SupportCheck c = check_support(h);
        if (!c.ok) throw ConvexityViolation(c.field, c.index, c.value);
        return AxisymBody(std::move(h));
    }

    int samples() const { return static_cast<int>(h_.size()); }
    double spacing() const { return kPi / static_cast<double>(h_.size()); }
    double angle(int j) const {
        return (static_cast<double>(j) + 0.5) * kPi / static_cast<double>(h_.size());
    }
    const std::vector<double>& support() const { return h_; }

    static double unit_ball_volume() { return 4.0 * kPi / 3.0; }

private:
    explicit AxisymBody(std::vector<double> h) : h_(std::move(h)) {}
    std::vector<double> h_;
};

// Per-sample curvature data.  r2 is empty for curves; lambda_min/lambda_max
// coincide with 1/r1 there.
struct CurvatureFields {
    std::vector<double> r1;
    std::vector<double> r2;
    std::vector<double> gauss;       // K, product of principal curvatures
    std::vector<double> mean;        // H, sum of principal curvatures
    std::vector<double> trace_b;     // sum of principal radii
    std::vector<double> lambda_min;
    std::vector<double> lambda_max;
};

inline CurvatureFields curvature_fields(const CurveBody& body) {
    CurvatureFields f;
    f.r1 = detail::curve_radius(body.support(), body.spacing());
    const std::size_t n = f.r1.size();
    f.gauss.resize(n);
    f.mean.resize(n);
    f.trace_b = f.r1;
    f.lambda_min.resize(n);
    f.lambda_max.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = 1.0 / f.r1[j];
        f.gauss[j] = k;
        f.mean[j] = k;
        f.lambda_min[j] = k;
        f.lambda_max[j] = k;
    }
    return f;
}

inline CurvatureFields curvature_fields(const AxisymBody& body) {
    CurvatureFields f;
    detail::AxisymRadii rad = detail::axisym_radii(body.support(), body.spacing());
    f.r1 = std::move(rad.r1);
    f.r2 = std::move(rad.r2);
    const std::size_t n = f.r1.size();
    f.gauss.resize(n);
    f.mean.resize(n);
    f.trace_b.resize(n);
    f.lambda_min.resize(n);
    f.lambda_max.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k1 = 1.0 / f.r1[j];
        const double k2 = 1.0 / f.r2[j];
        f.gauss[j] = k1 * k2;
        f.mean[j] = k1 + k2;
        f.trace_b[j] = f.r1[j] + f.r2[j];
        f.lambda_min[j] = std::min(k1, k2);
        f.lambda_max[j] = std::max(k1, k2);
    }
    return f;
}

// |F|^2 = h^2 + |grad h|^2 sample-wise.

inline std::vector<double> position_norm_sq(const CurveBody& body) {
    const std::vector<double> hp = fd::d1_periodic(body.support(), body.spacing());
    std::vector<double> out(body.support().size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = body.support()[j] * body.support()[j] + hp[j] * hp[j];
    return out;
}

inline std::vector<double> position_norm_sq(const AxisymBody& body) {
    const std::vector<double> hp = fd::d1_reflect(body.support(), body.spacing(), +1);
    std::vector<double> out(body.support().size());
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = body.support()[j] * body.support()[j] + hp[j] * hp[j];
    return out;
}

// Boundary samples.  Curves give (x, y); axisymmetric bodies give the
// meridian trace (rho, z) with rho the distance to the symmetry axis.

inline std::vector<std::array<double, 2>> boundary_points(const CurveBody& body) {
    const std::vector<double>& h = body.support();
    const std::vector<double> hp = fd::d1_periodic(h, body.spacing());
    std::vector<std::array<double, 2>> pts(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) {
        const double t = body.angle(static_cast<int>(j));
        const double c = std::cos(t), s = std::sin(t);
        pts[j] = {h[j] * c - hp[j] * s, h[j] * s + hp[j] * c};
    }
    return pts;
}

inline std::vector<std::array<double, 2>> boundary_points(const AxisymBody& body) {
    const std::vector<double>& h = body.support();
    const std::vector<double> hp = fd::d1_reflect(h, body.spacing(), +1);
    std::vector<std::array<double, 2>> pts(h.size());
    for (std::size_t j = 0; j < h.size(); ++j) {
        const double p = body.angle(static_cast<int>(j));
        const double c = std::cos(p), s = std::sin(p);
        pts[j] = {h[j] * s + hp[j] * c, h[j] * c - hp[j] * s};
    }
    return pts;
}

// Enclosed volume: (1/(n+1)) int h det(radii) over the normal sphere.

inline double volume(const CurveBody& body) {
    const std::vector<double>& h = body.support();
    const std::vector<double> r = detail::curve_radius(h, body.spacing());
    double s = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) s += h[j] * r[j];
    return 0.5 * body.spacing() * s;
}

inline double volume(const AxisymBody& body) {
    const std::vector<double>& h = body.support();
    const detail::AxisymRadii rad = detail::axisym_radii(h, body.spacing());
    const std::vector<double>& w = quad::sin_weights(body.samples());
    double s = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) s += h[j] * rad.r1[j] * rad.r2[j] * w[j];
    return (2.0 * kPi / 3.0) * s;
}

// Steiner point (curvature centroid).  Translating the body moves it by the
// same vector.  Axisymmetric bodies can only be off-centre along the axis,
// so only the z component is reported there.

inline std::array<double, 2> steiner_point(const CurveBody& body) {
    const std::vector<double>& h = body.support();
    double sx = 0.0, sy = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j) {
        const double t = body.angle(static_cast<int>(j));
        sx += h[j] * std::cos(t);
        sy += h[j] * std::sin(t);
    }
    const double f = body.spacing() / kPi;
    return {f * sx, f * sy};
}

inline double steiner_point_z(const AxisymBody& body) {
    const std::vector<double>& h = body.support();
    const std::vector<double>& w = quad::sin_weights(body.samples());
    double s = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j)
        s += h[j] * std::cos(body.angle(static_cast<int>(j))) * w[j];
    return 1.5 * s;
}

// Rigid translation acts on the support function as h += <v, u>.  Curvature
// is unchanged; positivity of h can fail if the new origin leaves the body,
// and that is reported rather than repaired.  recenter() moves the Steiner
// point to the origin; it always succeeds on valid bodies because the
// Steiner point lies in the interior.

inline CurveBody translate(const CurveBody& body, double vx, double vy) {
    std::vector<double> h = body.support();
    for (std::size_t j = 0; j < h.size(); ++j) {
        const double t = body.angle(static_cast<int>(j));
        h[j] += vx * std::cos(t) + vy * std::sin(t);
    }
    return CurveBody::from_support(std::move(h));
}

inline AxisymBody translate(const AxisymBody& body, double vz) {
    std::vector<double> h = body.support();
    for (std::size_t j = 0; j < h.size(); ++j)
        h[j] += vz * std::cos(body.angle(static_cast<int>(j)));
    return AxisymBody::from_support(std::move(h));
}

inline CurveBody recenter(const CurveBody& body) {
    const std::array<double, 2> s = steiner_point(body);
    return translate(body, -s[0], -s[1]);
}

inline AxisymBody recenter(const AxisymBody& body) {
    return translate(body, -steiner_point_z(body));
}

template <class Body>
inline Body scale(const Body& body, double factor) {
    if (!(factor > 0.0))
        throw std::invalid_argument("scale factor must be > 0, got " +
                                    std::to_string(factor));
    std::vector<double> h = body.support();
    for (double& x : h) x *= factor;
    return Body::from_support(std::move(h));
}

}  // namespace gcf
