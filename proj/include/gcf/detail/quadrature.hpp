#pragma once

// Quadrature weights for the axisymmetric grid.
//
// Surface integrals over the sphere reduce to int_0^pi f(phi) sin(phi) dphi.
// With x = cos(phi) the cell centres phi_j = (j+1/2)*pi/n are exactly the
// order-n Chebyshev nodes, so we use Fejer's first rule: sum_j w_j f(phi_j)
// equals int_{-1}^{1} f dx exactly whenever f is a polynomial of degree < n
// in x.  In particular the unit-sphere volume and the translate identities
// for the Steiner point come out exact instead of O(n^-2).

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

namespace gcf::quad {

inline std::vector<double> make_fejer1(int n) {
    std::vector<double> w(static_cast<std::size_t>(n));
    const double pi = std::acos(-1.0);
    for (int j = 0; j < n; ++j) {
        const double phi = (j + 0.5) * pi / n;
        double s = 0.0;
        for (int m = n / 2; m >= 1; --m)
            s += std::cos(2.0 * m * phi) / (4.0 * m * m - 1.0);
        w[static_cast<std::size_t>(j)] = (2.0 / n) * (1.0 - 2.0 * s);
    }
    return w;
}

// Cached per grid size; the cache is guarded so bodies can be integrated
// from several threads.
inline const std::vector<double>& sin_weights(int n) {
    static std::map<int, std::vector<double>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_fejer1(n)).first;
    return it->second;
}

}  // namespace gcf::quad
