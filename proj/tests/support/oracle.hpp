#pragma once

// Reference evaluations that share no code with the library: long double,
// composite Simpson on a fixed fine grid, spikes summed by brute force.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace oracle {

using real = long double;

inline real gauss_tail(real x) { return 0.5L*std::erfc(x/std::sqrt(2.0L)); }

inline real factorial(int d) {
    real f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

// (t/tau)^d e^{-t/tau}, t >= 0
inline real alpha(int d, real tau, real t) {
    if (t < 0) return 0;
    return std::pow(t/tau, real(d))*std::exp(-t/tau);
}

template <typename F>
real simpson(F f, real a, real b, int n) {
    if (n % 2) ++n;
    const real h = (b - a)/n;
    real s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i*h)*(i % 2? 4: 2);
    return s*h/3;
}

struct synapse {
    real g = 0, w = 0, tau = 1;
};

struct neuron {
    real c = 1, gl = 1, el = 0;
    real sigma_b = 1, sigma_r = 1;
    int degree = 0;
    std::vector<synapse> in;                       // indexed by presynaptic j
    std::function<real(real)> current = [](real) { return 0.0L; };
};

struct membrane {
    real v_syn = 0, v_ext = 0, sigma_sq = 0;
};

// Integrals of neuron k from s (spike of k, or below `lo` meaning never) to t.
// spikes[j] lists integer spike times of neuron j; alpha acts for r < u.
// Steps of the current must sit on the integer grid.
inline membrane evaluate(const neuron& nr, const std::vector<std::vector<long>>& spikes, real s, real t, real lo,
                         int per_unit = 256)
{
    const bool reset = s >= lo;
    const real a = reset? s: lo;
    // left (u -> r+) and right (u -> r-) limits differ at spike times
    auto syn = [&](real u, bool incl, real& g, real& drive) {
        g = nr.gl;
        drive = 0;
        for (std::size_t j = 0; j < nr.in.size(); ++j) {
            const auto& sp = nr.in[j];
            if (sp.g == 0) continue;
            real acc = 0;
            for (long r: spikes[j]) {
                if (r < u || (incl && r == u)) acc += alpha(nr.degree, sp.tau, u - r);
            }
            g += sp.g*acc;
            drive += sp.w*acc;
        }
    };
    const long cells = std::lround((t - a)*per_unit);
    const real h = (t - a)/cells;
    // K at quarter-step resolution, cumulative Simpson over half steps
    const long pts = 2*cells;
    std::vector<real> kk(std::size_t(pts) + 1, 0.0L);
    auto on_grid = [](real u) { return std::abs(u - std::round(u)) < 1e-12L; };
    for (long i = 0; i < pts; ++i) {
        const real u0 = a + i*h/2, u1 = u0 + h/2;
        real g0, g1, gm, d;
        syn(u0, on_grid(u0), g0, d);
        syn(u1, false, g1, d);
        syn(u0 + h/4, false, gm, d);
        kk[std::size_t(i) + 1] = kk[std::size_t(i)] + (h/2)/6*(g0 + 4*gm + g1);
    }
    const real kt = kk.back();
    auto gamma = [&](long half) { return std::exp(-(kt - kk[std::size_t(half)])/nr.c); };

    membrane out;
    real i_syn = 0, i_one = 0, i_cur = 0, i_sq = 0;
    for (long i = 0; i < cells; ++i) {
        const real u0 = a + i*h, um = u0 + h/2, u1 = u0 + h;
        const real g0 = gamma(2*i), gm = gamma(2*i + 1), g1 = gamma(2*i + 2);
        real c0, d0, cm, dm, c1, d1;
        syn(u0, on_grid(u0), c0, d0);
        syn(um, false, cm, dm);
        syn(u1, false, c1, d1);
        const bool edge0 = on_grid(u0), edge1 = on_grid(u1);
        const real e = 1e-15L;
        const real j0 = nr.current(edge0? u0 + e: u0), jm = nr.current(um), j1 = nr.current(edge1? u1 - e: u1);
        i_syn += h/6*(g0*d0 + 4*gm*dm + g1*d1);
        i_one += h/6*(g0 + 4*gm + g1);
        i_cur += h/6*(g0*j0 + 4*gm*jm + g1*j1);
        i_sq += h/6*(g0*g0 + 4*gm*gm + g1*g1);
    }
    out.v_syn = i_syn/nr.c;
    out.v_ext = nr.el*nr.gl/nr.c*i_one + i_cur/nr.c;
    const real gs = reset? gamma(0): 0.0L;
    out.sigma_sq = gs*gs*nr.sigma_r*nr.sigma_r + nr.sigma_b*nr.sigma_b/(nr.c*nr.c)*i_sq;
    return out;
}

} // namespace oracle
