#pragma once

// Direct solver for the self-similar equation K^alpha = h: damped Newton on
// the per-sample residual map h -> K(h)^alpha - h with a dense
// finite-difference Jacobian, optional Tikhonov regularization, and
// continuation in alpha.
//
// At alpha = 1/(n+2) the solutions form a family (the centred ellipsoids of
// unit-ball volume), so the Jacobian is singular along the family's tangent
// directions; the regularized normal equations (J^T J + t I) d = -J^T g keep
// the step well defined there and never move along an exact null direction.
// Away from that exponent the plain square system is solved by LU.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gcf/errors.hpp"
#include "gcf/soliton_residual.hpp"
#include "gcf/support.hpp"

namespace gcf {

struct SolveOptions {
    double tol = 1e-10;              // max-norm residual target
    int max_iters = 50;
    double damping = 1.0;            // initial step fraction in (0, 1]
    std::optional<double> tikhonov;  // unset: 1e-8 at alpha = 1/(n+2), else 0

    void validate() const {
        if (!(tol > 0.0))
            throw std::invalid_argument("tol must be > 0, got " + std::to_string(tol));
        if (max_iters < 0) throw std::invalid_argument("max_iters must be >= 0");
        if (!(damping > 0.0 && damping <= 1.0))
            throw std::invalid_argument("damping must be in (0,1], got " +
                                        std::to_string(damping));
        if (tikhonov && !(*tikhonov >= 0.0))
            throw std::invalid_argument("tikhonov must be >= 0");
    }
};

// One line of the solver report.  Iteration 0 carries the initial residual
// and no damping value.
struct SolveIter {
    int iter = 0;
    double residual_maxnorm = 0.0;
    std::optional<double> damping_used;
};

template <class Body>
struct SolveResult {
    Body body;
    std::vector<SolveIter> history;
};

namespace detail {

inline double default_tikhonov(double alpha, int surface_dim) {
    const double critical = 1.0 / (surface_dim + 2.0);
    return std::abs(alpha - critical) <= 1e-12 ? 1e-8 : 0.0;
}

// Residual evaluated straight from a support vector, bypassing body
// validation: Jacobian columns perturb single samples and may graze the
// cone boundary, which is harmless for a difference quotient.
inline std::vector<double> residual_raw_curve(const std::vector<double>& h, double d,
                                              double alpha) {
    const std::vector<double> r = curve_radius(h, d);
    std::vector<double> g(h.size());
    for (std::size_t j = 0; j < h.size(); ++j)
        g[j] = std::pow(1.0 / r[j], alpha) - h[j];
    return g;
}

inline std::vector<double> residual_raw_axisym(const std::vector<double>& h, double d,
                                               double alpha) {
    const AxisymRadii rad = axisym_radii(h, d);
    std::vector<double> g(h.size());
    for (std::size_t j = 0; j < h.size(); ++j)
        g[j] = std::pow(1.0 / (rad.r1[j] * rad.r2[j]), alpha) - h[j];
    return g;
}

inline std::vector<double> residual_raw(const CurveBody&, const std::vector<double>& h,
                                        double d, double alpha) {
    return residual_raw_curve(h, d, alpha);
}

inline std::vector<double> residual_raw(const AxisymBody&, const std::vector<double>& h,
                                        double d, double alpha) {
    return residual_raw_axisym(h, d, alpha);
}

}  // namespace detail

template <class Body>
inline SolveResult<Body> solve(const Body& initial, double alpha,
                               const SolveOptions& opts = {}) {
    opts.validate();
    if (!(alpha > 0.0))
        throw std::invalid_argument("alpha must be > 0, got " + std::to_string(alpha));
    const double tik = opts.tikhonov
                           ? *opts.tikhonov
                           : detail::default_tikhonov(alpha, Body::surface_dim);

    Body current = recenter(initial);
    std::vector<double> g = soliton_residual(current, alpha);
    double res = detail::max_abs(g);

    std::vector<SolveIter> history;
    history.push_back(SolveIter{0, res, std::nullopt});
    std::vector<double> res_history{res};

    const double d = current.spacing();
    const std::size_t n = current.support().size();
    const Eigen::Index ni = static_cast<Eigen::Index>(n);

    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        if (res <= opts.tol) return SolveResult<Body>{std::move(current), std::move(history)};

        const std::vector<double>& h = current.support();
        Eigen::MatrixXd jac(ni, ni);
        Eigen::VectorXd rhs(ni);
        std::vector<double> h_pert(n);
        for (Eigen::Index j = 0; j < ni; ++j) {
            const std::size_t js = static_cast<std::size_t>(j);
            const double eps = 1e-6 * (1.0 + std::abs(h[js]));
            // Central quotient: the forward one carries a truncation term
            // amplified by the squared second-difference denominator, large
            // enough to cap Newton progress well above tol.
            h_pert = h;
            h_pert[js] += eps;
            const std::vector<double> g_plus = detail::residual_raw(current, h_pert, d, alpha);
            h_pert[js] = h[js] - eps;
            const std::vector<double> g_minus = detail::residual_raw(current, h_pert, d, alpha);
            for (Eigen::Index i = 0; i < ni; ++i)
                jac(i, j) = (g_plus[static_cast<std::size_t>(i)] -
                             g_minus[static_cast<std::size_t>(i)]) / (2.0 * eps);
            rhs(j) = -g[js];
        }

        Eigen::VectorXd delta;
        if (tik > 0.0) {
            const Eigen::MatrixXd normal =
                jac.transpose() * jac + tik * Eigen::MatrixXd::Identity(ni, ni);
            delta = normal.llt().solve(jac.transpose() * rhs);
        } else {
            delta = jac.partialPivLu().solve(rhs);
        }

        bool accepted = false;
        bool any_valid = false;
        SupportCheck last_bad;
        double fraction = opts.damping;
        for (int cut = 0; cut <= 20 && !accepted; ++cut, fraction *= 0.5) {
            std::vector<double> h_trial(n);
            for (std::size_t k = 0; k < n; ++k)
                h_trial[k] = h[k] + fraction * delta(static_cast<Eigen::Index>(k));
            const SupportCheck check = Body::check_support(h_trial);
            if (!check.ok) {
                last_bad = check;
                continue;
            }
            any_valid = true;
            Body trial = Body::from_support(std::move(h_trial));
            const double res_trial = soliton_residual_maxnorm(trial, alpha);
            if (res_trial < res) {
                // Trials stay un-centered: the Newton correction for
                // first-harmonic residual content is a translation, and
                // stripping it from the trial pins that component.
                current = recenter(std::move(trial));
                g = soliton_residual(current, alpha);
                res = detail::max_abs(g);
                history.push_back(SolveIter{iter, res, fraction});
                res_history.push_back(res);
                accepted = true;
            }
        }
        if (!accepted) {
            if (!any_valid)
                throw ConvexityViolation(last_bad.field, last_bad.index, last_bad.value);
            throw NoConvergence("Newton line search stalled at iteration " +
                                    std::to_string(iter),
                                std::move(res_history));
        }
    }

    if (res <= opts.tol) return SolveResult<Body>{std::move(current), std::move(history)};
    throw NoConvergence("iteration cap " + std::to_string(opts.max_iters) +
                            " reached with residual " + std::to_string(res),
                        std::move(res_history));
}

// Family tracing in alpha: solve on a ladder of exponents from alpha_from to
// alpha_to (inclusive, `steps` equal intervals), warm-starting every rung
// from the previous solution.  A rung that fails to converge ends the walk;
// the completed rungs and the failing rung's index are both returned rather
// than thrown, since partial families are useful output.

template <class Body>
struct ContinuationRung {
    double alpha = 0.0;
    Body body;
    double residual = 0.0;
};

template <class Body>
struct ContinuationResult {
    std::vector<ContinuationRung<Body>> rungs;
    std::optional<std::size_t> failed_rung;
};

template <class Body>
inline ContinuationResult<Body> continuation(const Body& start, double alpha_from,
                                             double alpha_to, int steps,
                                             const SolveOptions& opts = {}) {
    if (steps < 1) throw std::invalid_argument("continuation needs steps >= 1");
    ContinuationResult<Body> out;
    Body current = start;
    for (int i = 0; i <= steps; ++i) {
        const double a =
            alpha_from + (alpha_to - alpha_from) * static_cast<double>(i) /
                             static_cast<double>(steps);
        try {
            SolveResult<Body> solved = solve(current, a, opts);
            const double res = soliton_residual_maxnorm(solved.body, a);
            current = solved.body;
            out.rungs.push_back(ContinuationRung<Body>{a, std::move(solved.body), res});
        } catch (const NoConvergence&) {
            out.failed_rung = static_cast<std::size_t>(i);
            break;
        }
    }
    return out;
}

}  // namespace gcf
