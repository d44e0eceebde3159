#pragma once

#include <array>
#include <cmath>
#include <vector>

#include <gifnet/error.hpp>

namespace gifnet {

struct integral_config {
    double rel_tol = 1e-9;
    int nodes_per_unit = 8;
    int refinement_limit = 24;
};

void check(const integral_config& cfg);

// Gauss-Legendre rule mapped to [0, 1].
struct gl_rule {
    std::vector<double> x, w;
    std::size_t size() const { return x.size(); }
};

gl_rule gauss_legendre(int n);

namespace detail {

template <std::size_t K, typename F>
std::array<double, K> gl_apply(F& f, const gl_rule& rule, double a, double b, std::array<double, K>& mag) {
    std::array<double, K> s{};
    mag = {};
    const double h = b - a;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        auto v = f(a + h*rule.x[q]);
        for (std::size_t i = 0; i < K; ++i) {
            s[i] += rule.w[q]*v[i];
            mag[i] += rule.w[q]*std::abs(v[i]);
        }
    }
    for (std::size_t i = 0; i < K; ++i) {
        s[i] *= h;
        mag[i] *= h;
    }
    return s;
}

template <std::size_t K, typename F>
std::array<double, K> adapt(F& f, const gl_rule& rule, double a, double b, const std::array<double, K>& coarse,
                            const integral_config& cfg, int depth)
{
    const double m = 0.5*(a + b);
    std::array<double, K> ml, mr;
    auto l = gl_apply<K>(f, rule, a, m, ml);
    auto r = gl_apply<K>(f, rule, m, b, mr);
    bool ok = true;
    for (std::size_t i = 0; i < K; ++i) {
        double fine = l[i] + r[i];
        if (!(std::abs(fine - coarse[i]) <= cfg.rel_tol*(ml[i] + mr[i]))) ok = false;
    }
    if (ok) {
        std::array<double, K> out;
        for (std::size_t i = 0; i < K; ++i) out[i] = l[i] + r[i];
        return out;
    }
    if (depth >= cfg.refinement_limit) {
        throw error(errc::quadrature_non_convergence, "Richardson check failed at the refinement limit");
    }
    auto lo = adapt<K>(f, rule, a, m, l, cfg, depth + 1);
    auto hi = adapt<K>(f, rule, m, b, r, cfg, depth + 1);
    for (std::size_t i = 0; i < K; ++i) lo[i] += hi[i];
    return lo;
}

} // namespace detail

// Integral of a K-vector valued smooth f over [a, b]. One coarse rule against
// two halves; halves are refined recursively until the difference is below
// rel_tol times the L1 mass of each component.
template <std::size_t K, typename F>
std::array<double, K> integrate(F&& f, double a, double b, const gl_rule& rule, const integral_config& cfg) {
    if (!(b > a)) return {};
    std::array<double, K> mag;
    auto coarse = detail::gl_apply<K>(f, rule, a, b, mag);
    return detail::adapt<K>(f, rule, a, b, coarse, cfg, 0);
}

} // namespace gifnet
