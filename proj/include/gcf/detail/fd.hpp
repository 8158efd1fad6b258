#pragma once

// Second-order central differences on the two angular grids.
//
// The denominators are 2*sin(d) and 2*(1-cos(d)) rather than the textbook
// 2*d and d*d.  Both choices are second-order consistent; the trigonometric
// ones make the stencils annihilate the rigid-translation modes cos/sin
// exactly, so translating a body leaves its discrete curvature unchanged to
// rounding instead of to O(d^2).

#include <cmath>
#include <cstddef>
#include <vector>

namespace gcf::fd {

inline double d1_denom(double d) { return 2.0 * std::sin(d); }
inline double d2_denom(double d) { return 2.0 * (1.0 - std::cos(d)); }

// Periodic grid (closed curve).

inline std::vector<double> d1_periodic(const std::vector<double>& v, double d) {
    const std::size_t n = v.size();
    const double inv = 1.0 / d1_denom(d);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double vp = v[j + 1 < n ? j + 1 : 0];
        const double vm = v[j > 0 ? j - 1 : n - 1];
        out[j] = (vp - vm) * inv;
    }
    return out;
}

inline std::vector<double> d2_periodic(const std::vector<double>& v, double d) {
    const std::size_t n = v.size();
    const double inv = 1.0 / d2_denom(d);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double vp = v[j + 1 < n ? j + 1 : 0];
        const double vm = v[j > 0 ? j - 1 : n - 1];
        out[j] = (vp - 2.0 * v[j] + vm) * inv;
    }
    return out;
}

// Cell-centred grid on (0, pi): samples at (j+1/2)*pi/n, no sample on either
// pole.  Ghost values come from reflection across the poles: parity +1 for
// even fields (any smooth axisymmetric scalar), parity -1 for odd fields
// (first derivatives of even fields).

inline std::vector<double> d1_reflect(const std::vector<double>& v, double d,
                                      int parity) {
    const std::size_t n = v.size();
    const double inv = 1.0 / d1_denom(d);
    const double p = static_cast<double>(parity);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double vp = (j + 1 < n) ? v[j + 1] : p * v[n - 1];
        const double vm = (j > 0) ? v[j - 1] : p * v[0];
        out[j] = (vp - vm) * inv;
    }
    return out;
}

inline std::vector<double> d2_reflect(const std::vector<double>& v, double d,
                                      int parity) {
    const std::size_t n = v.size();
    const double inv = 1.0 / d2_denom(d);
    const double p = static_cast<double>(parity);
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double vp = (j + 1 < n) ? v[j + 1] : p * v[n - 1];
        const double vm = (j > 0) ? v[j - 1] : p * v[0];
        out[j] = (vp - 2.0 * v[j] + vm) * inv;
    }
    return out;
}

}  // namespace gcf::fd
