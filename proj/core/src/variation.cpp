#include <algorithm>
#include <cmath>
#include <numbers>

#include <gifnet/error.hpp>
#include <gifnet/profile.hpp>
#include <gifnet/variation.hpp>

namespace gifnet {

std::string_view to_string(quantity q) {
    switch (q) {
    case quantity::conductance: return "conductance";
    case quantity::v_syn: return "v_syn";
    case quantity::v_ext: return "v_ext";
    case quantity::sigma_sq: return "sigma_sq";
    case quantity::kernel: return "kernel";
    }
    return "?";
}

double variation_constants::syn_decay(std::size_t k, std::size_t j, double m) const {
    double t = tau[k*n + j];
    double y = m/t;
    return tail_polynomial(degree, t, y)*std::exp(-y);
}

variation_constants make_variation_constants(const validated_params& vp) {
    variation_constants c;
    const std::size_t n = vp.size();
    c.n = n;
    c.degree = vp.degree();
    c.bounds = derive_bounds(vp);
    const auto& b = c.bounds;
    const double ap = b.alpha_plus;
    const double ip = vp.current_sup();
    const double sb = vp.noise_amplitude(), sr = vp.reset_std(), theta = vp.threshold();

    auto nn = [n](auto&... v) { (v.assign(n*n, 0.0), ...); };
    auto n1 = [n](auto&... v) { (v.assign(n, 0.0), ...); };
    nn(c.tau, c.g, c.a_syn, c.a_ext, c.a_sig, c.a_x);
    n1(c.b_syn, c.b_ext, c.c_sig, c.b_x, c.c_x, c.tau_leak);

    for (std::size_t k = 0; k < n; ++k) {
        const double gl = vp.leak_conductance(k), cap = vp.capacitance(k);
        const double tl = vp.tau_leak(k);
        c.tau_leak[k] = tl;
        double wabs = 0;
        for (std::size_t j = 0; j < n; ++j) wabs += std::abs(vp.weight(k, j));

        c.b_syn[k] = ap/gl*wabs;
        c.b_ext[k] = std::abs(vp.leak_reversal()) + ip/gl;
        const double noise = sb*sb*tl/(cap*cap);
        c.c_sig[k] = 0.5*noise + 2*sr*sr;

        const double s_lo = b.sigma_lo[k];
        const double mtheta = std::max(std::abs(theta - b.v_lo[k]), std::abs(theta - b.v_hi[k]));
        const double vfac = 1/s_lo;
        const double sfac = mtheta/(2*s_lo*s_lo*s_lo);

        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t kj = k*n + j;
            const double g = vp.g(k, j);
            c.tau[kj] = vp.tau(k, j);
            c.g[kj] = g;
            // The synaptic constant keeps the factor 2 that the Gamma-variation
            // step produces on both summands.
            c.a_syn[kj] = (2*std::abs(vp.weight(k, j)) + 2*ap*g/gl*wabs)/gl;
            c.a_ext[kj] = 2*g/gl*c.b_ext[k];
            c.a_sig[kj] = g/gl*noise;
            c.a_x[kj] = (c.a_syn[kj] + c.a_ext[kj])*vfac + c.a_sig[kj]*sfac;
        }
        c.b_x[k] = (c.b_syn[k] + c.b_ext[k])*vfac;
        c.c_x[k] = c.c_sig[k]*sfac;
    }
    return c;
}

namespace {

double x_bound(const variation_constants& c, std::size_t k, double m) {
    double s = 0;
    for (std::size_t j = 0; j < c.n; ++j) {
        if (c.a_x[k*c.n + j] != 0) s += c.a_x[k*c.n + j]*c.syn_decay(k, j, m);
    }
    const double tl = c.tau_leak[k];
    return s + c.b_x[k]*std::exp(-m/tl) + c.c_x[k]*std::exp(-2*m/tl);
}

} // namespace

double variation_bound(const variation_constants& c, quantity q, int m, std::size_t k) {
    if (m < 0) throw error(errc::invalid_argument, "variation depth must be >= 0");
    const double dm = m;
    const std::size_t n = c.n;
    double s = 0;
    switch (q) {
    case quantity::conductance:
        for (std::size_t j = 0; j < n; ++j) {
            if (c.g[k*n + j] != 0) s += 2*c.g[k*n + j]*c.syn_decay(k, j, dm);
        }
        return s;
    case quantity::v_syn:
        for (std::size_t j = 0; j < n; ++j) {
            if (c.a_syn[k*n + j] != 0) s += c.a_syn[k*n + j]*c.syn_decay(k, j, dm);
        }
        return s + c.b_syn[k]*std::exp(-dm/c.tau_leak[k]);
    case quantity::v_ext:
        for (std::size_t j = 0; j < n; ++j) {
            if (c.a_ext[k*n + j] != 0) s += c.a_ext[k*n + j]*c.syn_decay(k, j, dm);
        }
        return s + c.b_ext[k]*std::exp(-dm/c.tau_leak[k]);
    case quantity::sigma_sq:
        for (std::size_t j = 0; j < n; ++j) {
            if (c.a_sig[k*n + j] != 0) s += c.a_sig[k*n + j]*c.syn_decay(k, j, dm);
        }
        return s + c.c_sig[k]*std::exp(-2*dm/c.tau_leak[k]);
    case quantity::kernel:
        // p(n, .) reads X at n-1, so agreement on {n-m..n} is an (m-1)-agreement
        // for X. With m = 0 only the pi+/pi- spread is left.
        if (m == 0) {
            for (std::size_t i = 0; i < n; ++i) s += c.bounds.pi_hi[i] - c.bounds.pi_lo[i];
            return s;
        }
        for (std::size_t i = 0; i < n; ++i) s += x_bound(c, i, dm - 1);
        return s/std::sqrt(2*std::numbers::pi);
    }
    return s;
}

std::vector<double> variation_bound(const validated_params& vp, quantity q, int m) {
    auto c = make_variation_constants(vp);
    if (q == quantity::kernel) return {variation_bound(c, q, m)};
    std::vector<double> out(vp.size());
    for (std::size_t k = 0; k < vp.size(); ++k) out[k] = variation_bound(c, q, m, k);
    return out;
}

} // namespace gifnet
