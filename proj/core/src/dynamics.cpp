#include <algorithm>
#include <cmath>
#include <numbers>

#include <gifnet/dynamics.hpp>
#include <gifnet/error.hpp>
#include <gifnet/variation.hpp>

namespace gifnet {

double alpha_value(const alpha_profile& p, double t) {
    return p.value(t);
}

double alpha_sum(const alpha_profile& p, double t, const spike_time_list& spikes) {
    double s = 0;
    for (auto r: spikes) {
        if (double(r) < t) s += p.value(t - double(r));
    }
    return s;
}

double alpha_tail_bound(const alpha_profile& p, double depth) {
    return p.tail_integral(depth);
}

spike_history spike_history::from_raster(const raster& r, tick upto, tick horizon) {
    spike_history h;
    h.spikes.resize(r.size());
    const tick lo = upto - horizon;
    for (std::size_t j = 0; j < r.size(); ++j) {
        for (tick n = lo; n <= upto; ++n) {
            if (r.bit(j, n)) h.spikes[j].push_back(n);
        }
    }
    h.earliest = double(lo);
    return h;
}

double conductance(const validated_params& vp, std::size_t k, double t, const spike_history& h) {
    double g = vp.leak_conductance(k);
    for (std::size_t j = 0; j < vp.size(); ++j) {
        if (vp.g(k, j) == 0) continue;
        g += vp.g(k, j)*alpha_sum(vp.profile(k, j), t, h.spikes[j]);
    }
    return g;
}

std::vector<double> conductance(const validated_params& vp, double t, const raster& r, tick horizon, double tol) {
    const tick ft = tick(std::floor(t));
    // spikes dropped by the horizon sit at offsets >= horizon + 1 from t
    const double depth = double(horizon) + 1;
    std::vector<double> out(vp.size());
    if (ft > r.last() + 1) throw error(errc::invalid_argument, "conductance queried past the raster window");
    const tick upto = std::min(ft, r.last());
    auto h = spike_history::from_raster(r, upto, std::max<tick>(horizon - (ft - upto), 0));
    for (std::size_t k = 0; k < vp.size(); ++k) {
        double dropped = 0;
        for (std::size_t j = 0; j < vp.size(); ++j) {
            if (vp.g(k, j) == 0) continue;
            auto p = vp.profile(k, j);
            double tail = depth > p.peak_time()? p.value(depth) + p.tail_integral(depth): alpha_plus(p);
            dropped += vp.g(k, j)*tail;
        }
        if (dropped > tol) {
            throw error(errc::horizon_too_shallow, "conductance tail bound " + std::to_string(dropped)
                + " exceeds the tolerance", k);
        }
        out[k] = conductance(vp, k, t, h);
    }
    return out;
}

double integrated_conductance(const validated_params& vp, std::size_t k, double a, double b, const spike_history& h) {
    if (b <= a) return 0;
    double s = vp.leak_conductance(k)*(b - a);
    for (std::size_t j = 0; j < vp.size(); ++j) {
        const double g = vp.g(k, j);
        if (g == 0) continue;
        auto p = vp.profile(k, j);
        double acc = 0;
        for (auto r: h.spikes[j]) {
            if (double(r) >= b) break;
            acc += p.integral(a - double(r), b - double(r));
        }
        s += g*acc;
    }
    return s;
}

double effective_leak(const validated_params& vp, std::size_t k, double t1, double t2, const spike_history& h) {
    if (t2 < t1) throw error(errc::invalid_argument, "effective_leak needs t1 <= t2");
    return std::exp(-integrated_conductance(vp, k, t1, t2, h)/vp.capacitance(k));
}

double ext_current_memory(const validated_params& vp, std::size_t k, double a, double tau) {
    const auto& spec = vp.current();
    if (spec.empty(k)) return 0;
    double s = 0;
    for (auto& c: spec.terms[k]) {
        switch (c.type) {
        case current_term::kind::constant:
            s += c.value*tau;
            break;
        case current_term::kind::step:
            if (a > c.t_on) {
                double hi = std::min(c.t_off, a);
                s += c.value*tau*(std::exp(-(a - hi)/tau) - std::exp(-(a - c.t_on)/tau));
            }
            break;
        case current_term::kind::sinusoid: {
            double w = 2*std::numbers::pi/c.period;
            double psi = w*a + c.phase;
            s += c.value*tau*(std::sin(psi) - w*tau*std::cos(psi))/(1 + w*w*tau*tau);
            break;
        }
        }
    }
    return s;
}

namespace {

// interior breakpoints of neuron k's integrand on (a, b): integers and step edges
std::vector<double> breakpoints(const validated_params& vp, std::size_t k, double a, double b) {
    std::vector<double> pts{a};
    for (double x = std::floor(a) + 1; x < b; x += 1) pts.push_back(x);
    if (!vp.current().empty(k)) {
        for (auto& c: vp.current().terms[k]) {
            if (c.type != current_term::kind::step) continue;
            for (double e: {c.t_on, c.t_off}) {
                if (e > a && e < b) pts.push_back(e);
            }
        }
    }
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace

membrane_terms membrane(const validated_params& vp, std::size_t k, double s, double t, const spike_history& h,
                        const integral_config& cfg)
{
    check(cfg);
    if (s > t) throw error(errc::invalid_argument, "membrane integrals need s <= t");
    const double cap = vp.capacitance(k);
    const double tl = vp.tau_leak(k);

    // Before `earliest` (or the first recorded spike) g_k = g_L.
    double quiet = h.earliest;
    if (!std::isfinite(quiet)) {
        quiet = t;
        for (auto& sp: h.spikes) {
            if (!sp.empty()) quiet = std::min(quiet, double(sp.front()));
        }
    }
    quiet = std::min(quiet, t);
    const double lo = std::max(s, quiet);

    std::array<double, 4> acc{};
    if (lo < t) {
        auto rule = gauss_legendre(cfg.nodes_per_unit);
        auto f = [&](double t1) -> std::array<double, 4> {
            double gam = std::exp(-integrated_conductance(vp, k, t1, t, h)/cap);
            double a = 0;
            for (std::size_t j = 0; j < vp.size(); ++j) {
                if (vp.g(k, j) != 0) a += vp.weight(k, j)*alpha_sum(vp.profile(k, j), t1, h.spikes[j]);
            }
            return {gam, gam*gam, gam*a, gam*vp.current_at(k, t1)};
        };
        auto pts = breakpoints(vp, k, lo, t);
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            auto piece = integrate<4>(f, pts[i], pts[i + 1], rule, cfg);
            for (int q = 0; q < 4; ++q) acc[q] += piece[q];
        }
    }

    double gamma_s = 1;
    if (s < lo) {
        // silent stretch [s, lo]: Gamma(t1, t) = Gamma(lo, t) e^{-(lo - t1)/tau_L}
        const double gl = std::exp(-integrated_conductance(vp, k, lo, t, h)/cap);
        const double e1 = std::isfinite(s)? std::exp(-(lo - s)/tl): 0.0;
        acc[0] += gl*tl*(1 - e1);
        acc[1] += gl*gl*0.5*tl*(1 - e1*e1);
        double mem = ext_current_memory(vp, k, lo, tl);
        if (std::isfinite(s)) mem -= e1*ext_current_memory(vp, k, s, tl);
        acc[3] += gl*mem;
        gamma_s = gl*e1;
    }
    else {
        gamma_s = std::exp(-integrated_conductance(vp, k, s, t, h)/cap);
    }

    membrane_terms m;
    m.v_syn = acc[2]/cap;
    m.v_ext = vp.leak_reversal()/tl*acc[0] + acc[3]/cap;
    m.v_det = m.v_syn + m.v_ext;
    const double sr = vp.reset_std(), sb = vp.noise_amplitude()/cap;
    m.sigma_sq = gamma_s*gamma_s*sr*sr + sb*sb*acc[1];
    m.gamma = gamma_s;
    return m;
}

double v_syn(const validated_params& vp, std::size_t k, double s, double t, const spike_history& h,
             const integral_config& cfg)
{
    return membrane(vp, k, s, t, h, cfg).v_syn;
}

double v_ext(const validated_params& vp, std::size_t k, double s, double t, const spike_history& h,
             const integral_config& cfg)
{
    return membrane(vp, k, s, t, h, cfg).v_ext;
}

namespace {

membrane_terms at_integer(const validated_params& vp, std::size_t k, tick n, const raster& r, tick horizon,
                          const integral_config& cfg)
{
    if (horizon < 0) throw error(errc::invalid_argument, "horizon must be >= 0");
    auto h = spike_history::from_raster(r, n, horizon);
    double s = minus_infinity;
    if (!h.spikes[k].empty()) s = double(h.spikes[k].back());
    return membrane(vp, k, s, double(n), h, cfg);
}

} // namespace

double v_det(const validated_params& vp, std::size_t k, tick n, const raster& r, tick horizon,
             const integral_config& cfg)
{
    return at_integer(vp, k, n, r, horizon, cfg).v_det;
}

double sigma_sq(const validated_params& vp, std::size_t k, tick n, const raster& r, tick horizon,
                const integral_config& cfg)
{
    return at_integer(vp, k, n, r, horizon, cfg).sigma_sq;
}

tick history_horizon(const validated_params& vp, double eps) {
    if (!(eps > 0)) throw error(errc::invalid_argument, "history_horizon needs eps > 0");
    if (eps >= 1) return 0;
    auto c = make_variation_constants(vp);
    auto bound = [&](tick m) { return variation_bound(c, quantity::kernel, int(m)); };
    // for m >= 1 every term is a tail integral or an exponential, so the bound
    // is nonincreasing; bracket then bisect.
    tick hi = 1;
    while (!(bound(hi) < eps)) {
        if (hi > (tick(1) << 28)) throw error(errc::series_divergence, "kernel bound does not decay");
        hi *= 2;
    }
    tick lo = hi/2;
    while (hi - lo > 1) {
        tick mid = lo + (hi - lo)/2;
        if (bound(mid) < eps) hi = mid; else lo = mid;
    }
    if (hi == 1 && bound(0) < eps) return 0;
    return hi;
}

} // namespace gifnet
