#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <gifnet/dynamics.hpp>
#include <gifnet/error.hpp>
#include <gifnet/kernel.hpp>
#include <gifnet/parallel.hpp>
#include <gifnet/trace.hpp>
#include <gifnet/variation.hpp>

namespace gifnet {

conditional_law law_from_trace(const validated_params& vp, const network_trace& tr) {
    conditional_law law;
    law.time = tr.time() + 1;
    law.neurons.resize(vp.size());
    for (std::size_t k = 0; k < vp.size(); ++k) {
        auto& nl = law.neurons[k];
        nl.v_det = tr.v_det(k);
        nl.sigma = std::sqrt(tr.sigma_sq(k));
        nl.x = (vp.threshold() - nl.v_det)/nl.sigma;
        nl.p_fire = gaussian_tail(nl.x);
        nl.p_silent = gaussian_tail(-nl.x);
    }
    return law;
}

conditional_law conditional_law_at(const validated_params& vp, tick n, const raster& r, tick horizon,
                                   const integral_config& cfg)
{
    if (horizon < 0) throw error(errc::invalid_argument, "horizon must be >= 0");
    network_trace tr(vp, cfg);
    tr.replay(r, n - horizon, n - 1);
    auto law = law_from_trace(vp, tr);
#ifndef NDEBUG
    auto b = derive_bounds(vp);
    for (std::size_t k = 0; k < vp.size(); ++k) {
        const auto& nl = law.neurons[k];
        const double budget = 1e-8*(1 + std::abs(nl.v_det));
        if (nl.v_det < b.v_lo[k] - budget || nl.v_det > b.v_hi[k] + budget
            || nl.sigma < b.sigma_lo[k]*(1 - 1e-8) || nl.sigma > b.sigma_hi[k]*(1 + 1e-8))
        {
            throw error(errc::invalid_argument, "conditional law left its uniform bounds", k);
        }
    }
#endif
    return law;
}

double transition_prob(const conditional_law& law, std::span<const std::uint8_t> omega) {
    double p = 1;
    for (std::size_t k = 0; k < law.neurons.size(); ++k) {
        p *= omega[k]? law.neurons[k].p_fire: law.neurons[k].p_silent;
    }
    return p;
}

potential_value potential(const conditional_law& law, std::span<const std::uint8_t> omega) {
    potential_value v;
    v.n = law.time;
    v.terms.resize(law.neurons.size());
    for (std::size_t k = 0; k < law.neurons.size(); ++k) {
        v.terms[k] = std::log(omega[k]? law.neurons[k].p_fire: law.neurons[k].p_silent);
        v.total += v.terms[k];
    }
    return v;
}

pattern decode_pattern(std::uint64_t code, std::size_t n) {
    pattern p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = (code >> k) & 1;
    return p;
}

std::vector<double> truncated_law(const validated_params& vp, int depth, std::span<const std::uint8_t> context,
                                  const integral_config& cfg)
{
    const std::size_t n = vp.size();
    if (depth < 0) throw error(errc::invalid_argument, "depth must be >= 0");
    if (context.size() != std::size_t(depth)*n) {
        throw error(errc::invalid_argument, "context must hold depth rows of N bits");
    }
    if (n > 24) throw error(errc::enumeration_too_large, "2^N patterns with N > 24");
    network_trace tr(vp, cfg);
    tr.reset_silent(-depth - 1);
    for (int s = 0; s < depth; ++s) tr.advance(context.subspan(std::size_t(s)*n, n));
    auto law = law_from_trace(vp, tr);

    const std::uint64_t np = std::uint64_t(1) << n;
    std::vector<double> out(np);
    double z = 0;
    for (std::uint64_t c = 0; c < np; ++c) {
        auto pat = decode_pattern(c, n);
        out[c] = std::exp(potential(law, pat).total);
        z += out[c];
    }
    for (auto& v: out) v /= z;
    return out;
}

double truncated_conditional(const validated_params& vp, int depth, std::span<const std::uint8_t> context,
                             std::span<const std::uint8_t> omega0, const integral_config& cfg)
{
    auto law = truncated_law(vp, depth, context, cfg);
    std::uint64_t code = 0;
    for (std::size_t k = 0; k < vp.size(); ++k) code |= std::uint64_t(omega0[k] != 0) << k;
    return law[code];
}

namespace {

struct series_result {
    double sum = 0;
    double last_ratio = 0;
};

// sum_{l>=0} term(l) for a log-concave, eventually decreasing term. Stops
// when a term is below 1e-16 of the partial sum and adds the geometric tail
// implied by the current (nonincreasing) ratio.
template <typename F>
series_result log_concave_series(F term) {
    series_result r;
    double prev = term(0);
    r.sum = prev;
    for (long l = 1; l < 100'000'000; ++l) {
        double t = term(double(l));
        r.sum += t;
        if (t <= prev && t < 1e-16*r.sum) {
            const double rho = prev > 0? t/prev: 0.0;
            r.last_ratio = t/r.sum;
            if (rho < 1) r.sum += t*rho/(1 - rho);
            return r;
        }
        prev = t;
    }
    throw error(errc::series_divergence, "certificate series did not converge");
}

} // namespace

uniqueness_certificate make_certificate(const validated_params& vp) {
    auto c = make_variation_constants(vp);
    uniqueness_certificate cert;
    cert.m_p_lower = c.bounds.m_p_lower;
    cert.log_m_p_lower = c.bounds.log_m_p_lower;
    const std::size_t n = vp.size();
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double tl = c.tau_leak[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (c.a_x[k*n + j] == 0) continue;
            auto s = log_concave_series([&](double l) { return c.syn_decay(k, j, l); });
            cert.last_term_ratio = std::max(cert.last_term_ratio, s.last_ratio);
            total += c.a_x[k*n + j]*s.sum;
        }
        auto sb = log_concave_series([&](double l) { return std::exp(-l/tl); });
        auto sc = log_concave_series([&](double l) { return std::exp(-2*l/tl); });
        cert.last_term_ratio = std::max({cert.last_term_ratio, sb.last_ratio, sc.last_ratio});
        total += c.b_x[k]*sb.sum + c.c_x[k]*sc.sum;
    }
    cert.v_p_upper = total/std::sqrt(2*std::numbers::pi);
    if (!std::isfinite(cert.v_p_upper)) throw error(errc::series_divergence, "v(p) bound is not finite");
    return cert;
}

pattern sample_step(const conditional_law& law, const step_stream& rng) {
    pattern p(law.neurons.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double pf = std::clamp(law.neurons[k].p_fire, 0.0, 1.0);
        p[k] = rng.uniform(k) < pf? 1: 0;
    }
    return p;
}

std::vector<raster> simulate(const validated_params& vp, const simulation_options& opt) {
    if (opt.steps < 1) throw error(errc::invalid_argument, "steps must be >= 1");
    if (opt.trials < 1) throw error(errc::invalid_argument, "trials must be >= 1");
    if (opt.memory && *opt.memory < 0) throw error(errc::invalid_argument, "memory must be >= 0");
    const std::size_t n = vp.size();
    std::vector<raster> out(opt.trials);

    // Warm-up depth for a repeat past under exact memory.
    tick repeat_depth = 0;
    if (opt.past.kind == past_kind::repeat && !opt.memory) repeat_depth = history_horizon(vp, 1e-12) + 1;

    auto run = [&](std::size_t trial) {
        raster r(n, 0, opt.steps - 1, opt.past);
        network_trace tr(vp, opt.integrals);
        network_trace window(vp, opt.integrals);
        if (!opt.memory) {
            switch (opt.past.kind) {
            case past_kind::empty: tr.reset_silent(-1); break;
            case past_kind::all_ones: tr.reset_all_ones(-1); break;
            case past_kind::repeat: tr.replay(r, -repeat_depth, -1); break;
            }
        }
        for (tick t = 0; t < opt.steps; ++t) {
            conditional_law law;
            if (opt.memory) {
                window.replay(r, t - *opt.memory, t - 1);
                law = law_from_trace(vp, window);
            }
            else law = law_from_trace(vp, tr);
            auto pat = sample_step(law, step_stream(opt.seed, trial, std::uint64_t(t)));
            r.set_pattern(t, pat);
            if (!opt.memory) tr.advance(pat);
        }
        out[trial] = std::move(r);
    };
    parallel_for(opt.trials, worker_count(opt.workers), run);
    return out;
}

} // namespace gifnet
