#pragma once

// Pointwise residual of the self-similar shape equation K^alpha = h in
// support form.  A body is a soliton of the contracting flow exactly when
// this vanishes; the max-norm is the convergence measure used by the Newton
// solver, the flow records, and the identity checks.

#include <cmath>
#include <vector>

#include "gcf/support.hpp"

namespace gcf {

namespace detail {

// K^alpha sample-wise, with exact shortcuts for the common exponents.
// (IEEE pow agrees with these shortcuts bit-for-bit; they just skip the
// slow path.)
inline std::vector<double> pow_alpha(const std::vector<double>& k, double alpha) {
    std::vector<double> out(k.size());
    if (alpha == 1.0) {
        out = k;
    } else if (alpha == 0.5) {
        for (std::size_t j = 0; j < k.size(); ++j) out[j] = std::sqrt(k[j]);
    } else if (alpha == 2.0) {
        for (std::size_t j = 0; j < k.size(); ++j) out[j] = k[j] * k[j];
    } else {
        for (std::size_t j = 0; j < k.size(); ++j) out[j] = std::pow(k[j], alpha);
    }
    return out;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace detail

template <class Body>
inline std::vector<double> soliton_residual(const Body& body, double alpha) {
    const CurvatureFields f = curvature_fields(body);
    std::vector<double> res = detail::pow_alpha(f.gauss, alpha);
    const std::vector<double>& h = body.support();
    for (std::size_t j = 0; j < res.size(); ++j) res[j] -= h[j];
    return res;
}

template <class Body>
inline double soliton_residual_maxnorm(const Body& body, double alpha) {
    return detail::max_abs(soliton_residual(body, alpha));
}

}  // namespace gcf
