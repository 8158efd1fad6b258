#pragma once

// Scalar and field diagnostics evaluated on a body at a given exponent
// alpha: the two second-order quantities Z and W, roundness, the quadric
// fit, the cubic-form norm (axisym only), entropy, and the finite-difference
// residuals of the structure identities that hold along self-similar
// solutions.
//
// With n the surface dimension, b the inverse second fundamental form and
// lambda_1 the smallest principal curvature:
//
//   Z = K^a tr(b) - (n a - 1)/(2 a)   |F|^2
//   W = K^a / lambda_1 - (n a - 1)/(2 n a) |F|^2
//
// Pointwise Z <= n W, with equality at umbilic points; on a curve the two
// coincide identically.  On centred ellipsoids at the critical exponent
// a = 1/(n+2), Z is constant equal to the sum of the squared semi-axes.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "gcf/errors.hpp"
#include "gcf/soliton_residual.hpp"
#include "gcf/support.hpp"

namespace gcf {

namespace detail {

// Shared intermediate fields so that every caller (one-off diagnostics, flow
// records, the diagnose report) computes identical bits for the same body.
struct FieldSet {
    CurvatureFields curv;
    std::vector<double> f_sq;     // |F|^2
    std::vector<double> k_alpha;  // K^alpha
};

template <class Body>
inline FieldSet make_fields(const Body& body, double alpha) {
    FieldSet fs;
    fs.curv = curvature_fields(body);
    fs.f_sq = position_norm_sq(body);
    fs.k_alpha = pow_alpha(fs.curv.gauss, alpha);
    return fs;
}

inline std::vector<double> z_from(const FieldSet& fs, int n, double alpha) {
    const double coef = (n * alpha - 1.0) / (2.0 * alpha);
    std::vector<double> z(fs.f_sq.size());
    for (std::size_t j = 0; j < z.size(); ++j)
        z[j] = fs.k_alpha[j] * fs.curv.trace_b[j] - coef * fs.f_sq[j];
    return z;
}

inline std::vector<double> w_from(const FieldSet& fs, int n, double alpha) {
    const double coef = (n * alpha - 1.0) / (2.0 * n * alpha);
    std::vector<double> w(fs.f_sq.size());
    for (std::size_t j = 0; j < w.size(); ++j)
        w[j] = fs.k_alpha[j] / fs.curv.lambda_min[j] - coef * fs.f_sq[j];
    return w;
}

inline double roundness_from(const CurvatureFields& c) {
    const double lo = *std::min_element(c.lambda_min.begin(), c.lambda_min.end());
    const double hi = *std::max_element(c.lambda_max.begin(), c.lambda_max.end());
    return hi / lo;
}

inline double residual_max_from(const FieldSet& fs, const std::vector<double>& h) {
    double res = 0.0;
    for (std::size_t j = 0; j < h.size(); ++j)
        res = std::max(res, std::abs(fs.k_alpha[j] - h[j]));
    return res;
}

}  // namespace detail

template <class Body>
inline std::vector<double> z_field(const Body& body, double alpha) {
    return detail::z_from(detail::make_fields(body, alpha), Body::surface_dim, alpha);
}

template <class Body>
inline std::vector<double> w_field(const Body& body, double alpha) {
    return detail::w_from(detail::make_fields(body, alpha), Body::surface_dim, alpha);
}

// Ratio of the largest to the smallest principal curvature over the whole
// body; 1 exactly on a round sphere.
template <class Body>
inline double roundness(const Body& body) {
    return detail::roundness_from(curvature_fields(body));
}

// Least-squares fit of a centred quadric <S F, F> = 1 through the boundary
// samples.  Curves fit a full symmetric 2x2; axisymmetric bodies fit
// diag(srr, srr, szz) in cylindrical coordinates.  rms is the root mean
// square of <S F_j, F_j> - 1 over the grid.

struct CurveQuadricFit {
    double sxx, sxy, syy;
    double rms;

    double trace_inverse() const {
        return (sxx + syy) / (sxx * syy - sxy * sxy);
    }
};

struct AxisymQuadricFit {
    double srr, szz;
    double rms;

    double trace_inverse() const { return 2.0 / srr + 1.0 / szz; }
};

inline CurveQuadricFit ellipsoid_fit(const CurveBody& body) {
    const auto pts = boundary_points(body);
    const Eigen::Index m = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd a(m, 3);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double x = pts[static_cast<std::size_t>(i)][0];
        const double y = pts[static_cast<std::size_t>(i)][1];
        a(i, 0) = x * x;
        a(i, 1) = 2.0 * x * y;
        a(i, 2) = y * y;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 3) throw FitDegenerate("quadric design matrix rank " +
                                           std::to_string(qr.rank()) + " < 3");
    const Eigen::Vector3d s = qr.solve(Eigen::VectorXd::Ones(m));
    const double rms = std::sqrt((a * s - Eigen::VectorXd::Ones(m)).squaredNorm() /
                                 static_cast<double>(m));
    return CurveQuadricFit{s(0), s(1), s(2), rms};
}

inline AxisymQuadricFit ellipsoid_fit(const AxisymBody& body) {
    const auto pts = boundary_points(body);
    const Eigen::Index m = static_cast<Eigen::Index>(pts.size());
    Eigen::MatrixXd a(m, 2);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double rho = pts[static_cast<std::size_t>(i)][0];
        const double z = pts[static_cast<std::size_t>(i)][1];
        a(i, 0) = rho * rho;
        a(i, 1) = z * z;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 2) throw FitDegenerate("quadric design matrix rank " +
                                           std::to_string(qr.rank()) + " < 2");
    const Eigen::Vector2d s = qr.solve(Eigen::VectorXd::Ones(m));
    const double rms = std::sqrt((a * s - Eigen::VectorXd::Ones(m)).squaredNorm() /
                                 static_cast<double>(m));
    return AxisymQuadricFit{s(0), s(1), rms};
}

// Normalised entropy of the support function over the unit normal sphere:
// the surface mean of log h at alpha = 1, otherwise
// a/(a-1) * log(mean of h^((a-1)/a)).  Zero on the unit sphere; adds log(c)
// under scaling by c.  The value is meant for Steiner-centred bodies, so the
// body is re-centred before evaluating.

inline double entropy(const CurveBody& body, double alpha) {
    const CurveBody centred = recenter(body);
    const std::vector<double>& h = centred.support();
    double s = 0.0;
    if (alpha == 1.0) {
        for (double x : h) s += std::log(x);
        return s / static_cast<double>(h.size());
    }
    const double p = (alpha - 1.0) / alpha;
    for (double x : h) s += std::pow(x, p);
    return alpha / (alpha - 1.0) * std::log(s / static_cast<double>(h.size()));
}

inline double entropy(const AxisymBody& body, double alpha) {
    const AxisymBody centred = recenter(body);
    const std::vector<double>& h = centred.support();
    const std::vector<double>& w = quad::sin_weights(centred.samples());
    double s = 0.0;
    if (alpha == 1.0) {
        for (std::size_t j = 0; j < h.size(); ++j) s += w[j] * std::log(h[j]);
        return 0.5 * s;
    }
    const double p = (alpha - 1.0) / alpha;
    for (std::size_t j = 0; j < h.size(); ++j) s += w[j] * std::pow(h[j], p);
    return alpha / (alpha - 1.0) * std::log(0.5 * s);
}

// Squared norm of the cubic form C_ijk built from K^(-1/4) and the second
// fundamental form (surface dimension 2 only; the curve analogue vanishes
// identically).  In the orthonormal frame of an axisymmetric surface the
// only independent components are
//
//   C_111 = 1/2 K^(-1/4) d(lambda_1)/ds + 3/2 lambda_1 d(K^(-1/4))/ds
//   C_122 = 1/2 K^(-1/4) (cot(phi)/R2) (lambda_1 - lambda_2)
//           + 1/2 lambda_2 d(K^(-1/4))/ds
//
// with s meridian arclength (d/ds = (1/R1) d/dphi), giving
// |C|^2 = C_111^2 + 3 C_122^2.  It vanishes on every exact spheroid and is
// bounded away from zero on non-quadric bodies.

inline std::vector<double> cubic_form_norm(const AxisymBody& body) {
    const double d = body.spacing();
    const detail::AxisymRadii rad = detail::axisym_radii(body.support(), d);
    const std::size_t n = rad.r1.size();

    std::vector<double> lam1(n), lam2(n), k4(n);
    for (std::size_t j = 0; j < n; ++j) {
        lam1[j] = 1.0 / rad.r1[j];
        lam2[j] = 1.0 / rad.r2[j];
        k4[j] = std::pow(lam1[j] * lam2[j], -0.25);
    }

    const std::vector<double> dlam1 = fd::d1_reflect(lam1, d, +1);
    const std::vector<double> dk4 = fd::d1_reflect(k4, d, +1);

    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = body.angle(static_cast<int>(j));
        const double lam1_s = dlam1[j] / rad.r1[j];
        const double k4_s = dk4[j] / rad.r1[j];
        const double c = (std::cos(phi) / std::sin(phi)) / rad.r2[j];
        const double c111 = 0.5 * k4[j] * lam1_s + 1.5 * lam1[j] * k4_s;
        const double c122 = 0.5 * k4[j] * c * (lam1[j] - lam2[j]) + 0.5 * lam2[j] * k4_s;
        out[j] = c111 * c111 + 3.0 * c122 * c122;
    }
    return out;
}

// Finite-difference residuals of the three structure identities, reported
// as max-norms.  lf2 is a pure geometric identity and must decay at second
// order on any smooth body; dka and lka additionally use K^alpha = h and are
// meaningful only near solitons, hence the `applicable` flag (max-norm
// soliton residual <= 1e-3).
//
// The elliptic operator is L f = alpha K^alpha b^{ij} grad_i grad_j f; on
// our one-dimensional reductions
//
//   curve:  L f = alpha K^a  d/dtheta((1/r) df/dtheta)
//   axisym: L f = alpha K^a (R1 f'' + cot(phi) f'),  ' = d/ds
//
// and the identities are
//
//   dka:  grad K^a = (second fundamental form) <F, tangent>
//   lf2:  L |F|^2  = 2 a K^a tr(b) - 2 n a K^a h
//   lka:  L K^a    = <F, grad F> grad K^a + n a K^a - a K^{2a} H

struct IdentityResiduals {
    double dka;
    double lf2;
    double lka;
    bool applicable;
};

inline IdentityResiduals identity_residuals(const CurveBody& body, double alpha) {
    const double d = body.spacing();
    const std::vector<double>& h = body.support();
    const std::vector<double> r = detail::curve_radius(h, d);
    const std::size_t n = r.size();

    std::vector<double> ka(n);
    for (std::size_t j = 0; j < n; ++j) ka[j] = std::pow(1.0 / r[j], alpha);

    const std::vector<double> dka_num = fd::d1_periodic(ka, d);
    const std::vector<double> hp = fd::d1_periodic(h, d);

    std::vector<double> f_sq(n);
    for (std::size_t j = 0; j < n; ++j) f_sq[j] = h[j] * h[j] + hp[j] * hp[j];

    auto elliptic = [&](const std::vector<double>& f) {
        std::vector<double> g = fd::d1_periodic(f, d);
        for (std::size_t j = 0; j < n; ++j) g[j] /= r[j];
        std::vector<double> out = fd::d1_periodic(g, d);
        for (std::size_t j = 0; j < n; ++j) out[j] *= alpha * ka[j];
        return out;
    };

    const std::vector<double> lf = elliptic(f_sq);
    const std::vector<double> lk = elliptic(ka);

    double dka = 0.0, lf2 = 0.0, lka = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        dka = std::max(dka, std::abs((dka_num[j] - hp[j]) / r[j]));
        lf2 = std::max(lf2, std::abs(lf[j] - 2.0 * alpha * ka[j] * (r[j] - h[j])));
        const double rhs = hp[j] * (dka_num[j] / r[j]) + alpha * ka[j] -
                           alpha * ka[j] * ka[j] / r[j];
        lka = std::max(lka, std::abs(lk[j] - rhs));
    }

    double res = 0.0;
    for (std::size_t j = 0; j < n; ++j) res = std::max(res, std::abs(ka[j] - h[j]));
    return IdentityResiduals{dka, lf2, lka, res <= 1e-3};
}

inline IdentityResiduals identity_residuals(const AxisymBody& body, double alpha) {
    const double d = body.spacing();
    const std::vector<double>& h = body.support();
    const detail::AxisymRadii rad = detail::axisym_radii(h, d);
    const std::size_t n = h.size();

    std::vector<double> ka(n), cotphi(n);
    for (std::size_t j = 0; j < n; ++j) {
        ka[j] = std::pow(1.0 / (rad.r1[j] * rad.r2[j]), alpha);
        const double phi = body.angle(static_cast<int>(j));
        cotphi[j] = std::cos(phi) / std::sin(phi);
    }

    const std::vector<double> hp = fd::d1_reflect(h, d, +1);
    const std::vector<double> dka_num = fd::d1_reflect(ka, d, +1);

    std::vector<double> f_sq(n);
    for (std::size_t j = 0; j < n; ++j) f_sq[j] = h[j] * h[j] + hp[j] * hp[j];

    // f is even across the poles, its arclength derivative odd.
    auto elliptic = [&](const std::vector<double>& f) {
        std::vector<double> fp = fd::d1_reflect(f, d, +1);
        for (std::size_t j = 0; j < n; ++j) fp[j] /= rad.r1[j];
        std::vector<double> fpp = fd::d1_reflect(fp, d, -1);
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j) {
            fpp[j] /= rad.r1[j];
            out[j] = alpha * ka[j] * (rad.r1[j] * fpp[j] + cotphi[j] * fp[j]);
        }
        return out;
    };

    const std::vector<double> lf = elliptic(f_sq);
    const std::vector<double> lk = elliptic(ka);

    double dka = 0.0, lf2 = 0.0, lka = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        dka = std::max(dka, std::abs((dka_num[j] - hp[j]) / rad.r1[j]));
        const double trb = rad.r1[j] + rad.r2[j];
        lf2 = std::max(lf2,
                       std::abs(lf[j] - 2.0 * alpha * ka[j] * (trb - 2.0 * h[j])));
        const double hmean = 1.0 / rad.r1[j] + 1.0 / rad.r2[j];
        const double rhs = hp[j] * (dka_num[j] / rad.r1[j]) + 2.0 * alpha * ka[j] -
                           alpha * ka[j] * ka[j] * hmean;
        lka = std::max(lka, std::abs(lk[j] - rhs));
    }

    double res = 0.0;
    for (std::size_t j = 0; j < n; ++j) res = std::max(res, std::abs(ka[j] - h[j]));
    return IdentityResiduals{dka, lf2, lka, res <= 1e-3};
}

// One row of the flow's record stream.  cubic_norm is the grid maximum of
// |C|^2 and is present for axisymmetric bodies only.

struct DiagnosticsRecord {
    long step = 0;
    double t = 0.0;
    double dt = 0.0;
    double volume = 0.0;
    double h_min = 0.0;
    double h_max = 0.0;
    double roundness = 0.0;
    double soliton_residual = 0.0;
    double z_min = 0.0;
    double z_max = 0.0;
    double w_max = 0.0;
    double entropy = 0.0;
    double ellipsoid_fit = 0.0;
    std::optional<double> cubic_norm;
};

template <class Body>
inline DiagnosticsRecord compute_record(const Body& body, double alpha, long step,
                                        double t, double dt) {
    const detail::FieldSet fs = detail::make_fields(body, alpha);
    const int n = Body::surface_dim;

    DiagnosticsRecord rec;
    rec.step = step;
    rec.t = t;
    rec.dt = dt;
    rec.volume = volume(body);

    const std::vector<double>& h = body.support();
    rec.h_min = *std::min_element(h.begin(), h.end());
    rec.h_max = *std::max_element(h.begin(), h.end());
    rec.roundness = detail::roundness_from(fs.curv);
    rec.soliton_residual = detail::residual_max_from(fs, h);

    const std::vector<double> z = detail::z_from(fs, n, alpha);
    const std::vector<double> w = detail::w_from(fs, n, alpha);
    rec.z_min = *std::min_element(z.begin(), z.end());
    rec.z_max = *std::max_element(z.begin(), z.end());
    rec.w_max = *std::max_element(w.begin(), w.end());

    rec.entropy = entropy(body, alpha);
    rec.ellipsoid_fit = ellipsoid_fit(body).rms;

    if constexpr (std::is_same_v<Body, AxisymBody>) {
        const std::vector<double> c = cubic_form_norm(body);
        rec.cubic_norm = *std::max_element(c.begin(), c.end());
    }
    return rec;
}

// Rows of the standalone diagnostics report: per-sample fields with their
// grid min/max/mean, then scalar quantities repeated across the three
// columns.  Field values come from the same shared evaluation as
// compute_record, so a report taken on a round-tripped snapshot matches the
// flow record bit for bit.

struct ReportRow {
    std::string quantity;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

namespace detail {

inline ReportRow field_row(std::string name, const std::vector<double>& v) {
    ReportRow row;
    row.quantity = std::move(name);
    row.min = *std::min_element(v.begin(), v.end());
    row.max = *std::max_element(v.begin(), v.end());
    double s = 0.0;
    for (double x : v) s += x;
    row.mean = s / static_cast<double>(v.size());
    return row;
}

inline ReportRow scalar_row(std::string name, double v) {
    return ReportRow{std::move(name), v, v, v};
}

}  // namespace detail

template <class Body>
inline std::vector<ReportRow> diagnose_rows(const Body& body, double alpha) {
    const detail::FieldSet fs = detail::make_fields(body, alpha);
    const int n = Body::surface_dim;
    const std::vector<double>& h = body.support();

    std::vector<ReportRow> rows;
    rows.push_back(detail::field_row("h", h));
    rows.push_back(detail::field_row("gauss_curvature", fs.curv.gauss));
    rows.push_back(detail::field_row("Z", detail::z_from(fs, n, alpha)));
    rows.push_back(detail::field_row("W", detail::w_from(fs, n, alpha)));
    if constexpr (std::is_same_v<Body, AxisymBody>)
        rows.push_back(detail::field_row("cubic_form", cubic_form_norm(body)));
    rows.push_back(detail::scalar_row("volume", volume(body)));
    rows.push_back(detail::scalar_row("roundness", detail::roundness_from(fs.curv)));
    rows.push_back(detail::scalar_row("soliton_residual",
                                      detail::residual_max_from(fs, h)));
    rows.push_back(detail::scalar_row("entropy", entropy(body, alpha)));
    rows.push_back(detail::scalar_row("ellipsoid_fit", ellipsoid_fit(body).rms));
    return rows;
}

}  // namespace gcf
