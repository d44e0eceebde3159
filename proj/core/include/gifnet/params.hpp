#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include <gifnet/profile.hpp>

namespace gifnet {

enum class population { excitatory, inhibitory };

std::string_view to_string(population p);
population population_from_string(std::string_view s);

struct current_term {
    enum class kind { constant, step, sinusoid };
    kind type = kind::constant;
    double value = 0;       // constant/step value, sinusoid amplitude
    double t_on = 0;        // step
    double t_off = 0;       // step
    double period = 1;      // sinusoid
    double phase = 0;       // sinusoid, radians

    double at(double t) const;
};

// Per-neuron list of additive terms. Neurons without an entry get no current.
struct current_spec {
    std::vector<std::vector<current_term>> terms;

    double at(std::size_t k, double t) const;
    // closed-form bound on |i_k(t)|: the sum of term magnitudes
    double sup(std::size_t k) const;
    double sup() const;
    bool empty(std::size_t k) const { return k >= terms.size() || terms[k].empty(); }
};

double external_current_at(const current_spec& spec, std::size_t k, double t);

struct network_params {
    std::size_t n_neurons = 1;
    std::vector<double> capacitance;
    double threshold = 1;
    double leak_reversal = 0;
    double excitatory_reversal = 0;
    double inhibitory_reversal = 0;
    std::vector<double> leak_conductance;
    std::vector<gifnet::population> population;
    std::vector<std::vector<double>> max_conductance;  // [k][j]
    std::vector<std::vector<double>> synapse_tau;      // [k][j]
    int profile_degree = 0;
    gifnet::profile_kind profile_kind = gifnet::profile_kind::exponential;
    double noise_amplitude = 1;
    double reset_std = 1;
    double refractory = 0;
    current_spec external_current;
};

class validated_params;
validated_params validate(const network_params& p);

// Immutable, checked parameter set with flattened per-synapse tables.
class validated_params {
public:
    const network_params& raw() const { return p_; }
    std::size_t size() const { return p_.n_neurons; }

    double capacitance(std::size_t k) const { return p_.capacitance[k]; }
    double leak_conductance(std::size_t k) const { return p_.leak_conductance[k]; }
    double tau_leak(std::size_t k) const { return p_.capacitance[k]/p_.leak_conductance[k]; }
    double threshold() const { return p_.threshold; }
    double leak_reversal() const { return p_.leak_reversal; }
    double noise_amplitude() const { return p_.noise_amplitude; }
    double reset_std() const { return p_.reset_std; }
    int degree() const { return degree_; }

    double g(std::size_t k, std::size_t j) const { return g_[k*p_.n_neurons + j]; }
    // W_kj = E^{+/-} G_kj
    double weight(std::size_t k, std::size_t j) const { return w_[k*p_.n_neurons + j]; }
    double tau(std::size_t k, std::size_t j) const { return tau_[k*p_.n_neurons + j]; }
    alpha_profile profile(std::size_t k, std::size_t j) const { return {degree_, tau(k, j)}; }

    double current_at(std::size_t k, double t) const { return p_.external_current.at(k, t); }
    // i+ shared by all neurons
    double current_sup() const { return i_plus_; }
    const current_spec& current() const { return p_.external_current; }

private:
    friend validated_params validate(const network_params&);
    validated_params() = default;

    network_params p_;
    int degree_ = 0;
    double i_plus_ = 0;
    std::vector<double> g_, w_, tau_;
};

struct bounds_table {
    double alpha_plus = 0;
    std::vector<double> g_max, tau_leak, tau_min;
    std::vector<double> v_lo, v_hi;
    std::vector<double> sigma_lo, sigma_hi;
    std::vector<double> pi_lo, pi_hi;
    std::vector<double> cap_lo, cap_hi;
    double m_p_lower = 0;
    // logs stay finite where the loose corners underflow cap_lo to 0
    std::vector<double> log_cap_lo;
    double log_m_p_lower = 0;
};

bounds_table derive_bounds(const validated_params& vp);

// Largest alpha+ over the synapse profiles in use (conservative shared value).
double network_alpha_plus(const validated_params& vp);

} // namespace gifnet
