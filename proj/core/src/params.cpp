#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <gifnet/error.hpp>
#include <gifnet/gauss.hpp>
#include <gifnet/params.hpp>

namespace gifnet {

std::string_view to_string(population p) {
    return p == population::excitatory? "excitatory": "inhibitory";
}

population population_from_string(std::string_view s) {
    if (s == "excitatory" || s == "E") return population::excitatory;
    if (s == "inhibitory" || s == "I") return population::inhibitory;
    throw error(errc::invalid_argument, "unknown population '" + std::string(s) + "'");
}

double current_term::at(double t) const {
    switch (type) {
    case kind::constant: return value;
    case kind::step: return (t >= t_on && t < t_off)? value: 0.0;
    case kind::sinusoid: return value*std::sin(2*std::numbers::pi*t/period + phase);
    }
    return 0;
}

double current_spec::at(std::size_t k, double t) const {
    if (k >= terms.size()) return 0;
    double s = 0;
    for (auto& c: terms[k]) s += c.at(t);
    return s;
}

double current_spec::sup(std::size_t k) const {
    if (k >= terms.size()) return 0;
    double s = 0;
    for (auto& c: terms[k]) s += std::abs(c.value);
    return s;
}

double current_spec::sup() const {
    double s = 0;
    for (std::size_t k = 0; k < terms.size(); ++k) s = std::max(s, sup(k));
    return s;
}

double external_current_at(const current_spec& spec, std::size_t k, double t) {
    return spec.at(k, t);
}

namespace {

void require_finite(double v, const char* what, std::size_t idx = error::npos) {
    if (!std::isfinite(v)) throw error(errc::non_finite_value, std::string(what) + " is not finite", idx);
}

void require_size(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw error(errc::shape_mismatch, std::string(what) + ": expected " + std::to_string(want)
            + " entries, got " + std::to_string(got));
    }
}

} // namespace

validated_params validate(const network_params& p) {
    const std::size_t n = p.n_neurons;
    if (n == 0) throw error(errc::shape_mismatch, "n_neurons must be positive");
    require_size(p.capacitance.size(), n, "capacitance");
    require_size(p.leak_conductance.size(), n, "leak_conductance");
    require_size(p.population.size(), n, "population");
    require_size(p.max_conductance.size(), n, "max_conductance");
    require_size(p.synapse_tau.size(), n, "synapse_tau");
    for (std::size_t k = 0; k < n; ++k) {
        require_size(p.max_conductance[k].size(), n, "max_conductance row");
        require_size(p.synapse_tau[k].size(), n, "synapse_tau row");
    }
    if (p.external_current.terms.size() > n) {
        throw error(errc::shape_mismatch, "external_current has more rows than neurons");
    }

    require_finite(p.threshold, "threshold");
    require_finite(p.leak_reversal, "leak_reversal");
    require_finite(p.excitatory_reversal, "excitatory_reversal");
    require_finite(p.inhibitory_reversal, "inhibitory_reversal");
    require_finite(p.noise_amplitude, "noise_amplitude");
    require_finite(p.reset_std, "reset_std");
    require_finite(p.refractory, "refractory");

    for (std::size_t k = 0; k < n; ++k) {
        require_finite(p.capacitance[k], "capacitance", k);
        if (p.capacitance[k] <= 0) throw error(errc::non_positive_capacitance, "capacitance must be > 0", k);
        require_finite(p.leak_conductance[k], "leak_conductance", k);
        if (p.leak_conductance[k] <= 0) throw error(errc::non_positive_leak, "leak_conductance must be > 0", k);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t idx = k*n + j;
            require_finite(p.max_conductance[k][j], "max_conductance", idx);
            if (p.max_conductance[k][j] < 0) {
                throw error(errc::negative_conductance,
                    "max_conductance[" + std::to_string(k) + "][" + std::to_string(j) + "] < 0", idx);
            }
            require_finite(p.synapse_tau[k][j], "synapse_tau", idx);
            if (p.synapse_tau[k][j] <= 0) throw error(errc::non_positive_tau, "synapse_tau must be > 0", idx);
        }
    }
    if (p.noise_amplitude <= 0) throw error(errc::non_positive_sigma, "noise_amplitude must be > 0");
    if (p.reset_std <= 0) throw error(errc::non_positive_sigma, "reset_std must be > 0");
    if (p.refractory < 0 || p.refractory >= 1) {
        throw error(errc::refractory_out_of_range, "refractory must lie in [0, 1)");
    }

    int degree = profile_degree_of(p.profile_kind, p.profile_degree);
    if (degree < 0 || degree > 20) throw error(errc::bad_profile, "profile_degree must lie in [0, 20]");

    for (std::size_t k = 0; k < p.external_current.terms.size(); ++k) {
        for (auto& c: p.external_current.terms[k]) {
            require_finite(c.value, "external_current value", k);
            if (c.type == current_term::kind::step) {
                require_finite(c.t_on, "external_current t_on", k);
                require_finite(c.t_off, "external_current t_off", k);
                if (c.t_off < c.t_on) throw error(errc::invalid_argument, "step current t_off < t_on", k);
            }
            if (c.type == current_term::kind::sinusoid) {
                require_finite(c.phase, "external_current phase", k);
                if (!(c.period > 0) || !std::isfinite(c.period)) {
                    throw error(errc::invalid_argument, "sinusoid period must be > 0", k);
                }
            }
        }
    }

    validated_params vp;
    vp.p_ = p;
    vp.degree_ = degree;
    vp.i_plus_ = p.external_current.sup();
    vp.g_.resize(n*n);
    vp.w_.resize(n*n);
    vp.tau_.resize(n*n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            double e = p.population[j] == population::excitatory? p.excitatory_reversal: p.inhibitory_reversal;
            vp.g_[k*n + j] = p.max_conductance[k][j];
            vp.w_[k*n + j] = e*p.max_conductance[k][j];
            vp.tau_[k*n + j] = p.synapse_tau[k][j];
        }
    }
    return vp;
}

double network_alpha_plus(const validated_params& vp) {
    const std::size_t n = vp.size();
    double best = 0, fallback = 0;
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            double a = alpha_plus(vp.profile(k, j));
            fallback = std::max(fallback, a);
            if (vp.g(k, j) > 0) {
                best = std::max(best, a);
                any = true;
            }
        }
    }
    return any? best: fallback;
}

bounds_table derive_bounds(const validated_params& vp) {
    const std::size_t n = vp.size();
    bounds_table b;
    b.alpha_plus = network_alpha_plus(vp);
    const double ip = vp.current_sup();
    const double theta = vp.threshold();
    const double sb = vp.noise_amplitude(), sr = vp.reset_std();

    auto resize = [n](auto&... v) { (v.resize(n), ...); };
    resize(b.g_max, b.tau_leak, b.tau_min, b.v_lo, b.v_hi, b.sigma_lo, b.sigma_hi,
           b.pi_lo, b.pi_hi, b.cap_lo, b.cap_hi, b.log_cap_lo);

    b.m_p_lower = 1;
    for (std::size_t k = 0; k < n; ++k) {
        const double gl = vp.leak_conductance(k), c = vp.capacitance(k);
        double gsum = 0, wneg = 0, wpos = 0;
        for (std::size_t j = 0; j < n; ++j) {
            gsum += vp.g(k, j);
            double w = vp.weight(k, j);
            if (w < 0) wneg += w; else wpos += w;
        }
        b.g_max[k] = gl + b.alpha_plus*gsum;
        b.tau_leak[k] = c/gl;
        b.tau_min[k] = c/b.g_max[k];

        // V- and V+ take the sign of each weight into account, so they hold
        // for mixed and for negative reversal potentials alike.
        const double ext = std::abs(vp.leak_reversal()) + ip/gl;
        b.v_lo[k] = b.alpha_plus/gl*wneg - ext;
        b.v_hi[k] = b.alpha_plus/gl*wpos + ext;

        b.sigma_lo[k] = std::min(sb/c*std::sqrt(b.tau_min[k]/2), sr);
        b.sigma_hi[k] = std::max(sb/c*std::sqrt(b.tau_leak[k]/2), sr);

        // X = (theta - V)/sigma over the box [V-, V+] x [sigma-, sigma+];
        // extremes sit at the corners whatever the sign of theta - V.
        const double x_lo = std::min((theta - b.v_hi[k])/b.sigma_lo[k], (theta - b.v_hi[k])/b.sigma_hi[k]);
        const double x_hi = std::max((theta - b.v_lo[k])/b.sigma_lo[k], (theta - b.v_lo[k])/b.sigma_hi[k]);
        b.pi_lo[k] = gaussian_tail(x_hi);
        b.pi_hi[k] = gaussian_tail(x_lo);
        b.cap_lo[k] = std::min(b.pi_lo[k], gaussian_tail(-x_lo));
        b.cap_hi[k] = std::max(b.pi_hi[k], gaussian_tail(-x_hi));
        b.m_p_lower *= b.cap_lo[k];
        b.log_cap_lo[k] = std::min(log_gaussian_tail(x_hi), log_gaussian_tail(-x_lo));
        b.log_m_p_lower += b.log_cap_lo[k];
    }
    return b;
}

} // namespace gifnet
