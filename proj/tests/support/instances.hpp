#pragma once

#include <cstdint>
#include <random>

#include <gifnet/params.hpp>
#include <gifnet/raster.hpp>

#include "oracle.hpp"

namespace fixtures {

using namespace gifnet;

// Single neuron with an excitatory autapse.
inline network_params autapse() {
    network_params p;
    p.n_neurons = 1;
    p.capacitance = {1};
    p.leak_conductance = {0.4};
    p.threshold = 1;
    p.leak_reversal = -0.5;
    p.excitatory_reversal = 2;
    p.inhibitory_reversal = -1;
    p.population = {population::excitatory};
    p.max_conductance = {{0.5}};
    p.synapse_tau = {{1.5}};
    p.profile_kind = profile_kind::exponential;
    p.noise_amplitude = 0.8;
    p.reset_std = 0.3;
    return p;
}

// Coupled E/I pair, alpha profile, constant drive on neuron 0.
inline network_params pair() {
    network_params p;
    p.n_neurons = 2;
    p.capacitance = {1, 1.5};
    p.leak_conductance = {0.5, 0.3};
    p.threshold = 1;
    p.leak_reversal = -0.5;
    p.excitatory_reversal = 2;
    p.inhibitory_reversal = -1;
    p.population = {population::excitatory, population::inhibitory};
    p.max_conductance = {{0.4, 0.3}, {0.5, 0.2}};
    p.synapse_tau = {{1.5, 2.0}, {0.7, 1.5}};
    p.profile_kind = profile_kind::alpha;
    p.noise_amplitude = 0.8;
    p.reset_std = 0.3;
    p.external_current.terms = {{{current_term::kind::constant, 0.2}}, {}};
    return p;
}

// No synapses, E_L = 0, tau_L = 2: v_det = 0 and
// sigma^2(a) = e^{-a} sigma_R^2 + (1 - e^{-a}) at age a.
inline network_params isolated() {
    network_params p;
    p.n_neurons = 1;
    p.capacitance = {1};
    p.leak_conductance = {0.5};
    p.threshold = 1;
    p.leak_reversal = 0;
    p.excitatory_reversal = 2;
    p.inhibitory_reversal = -1;
    p.population = {population::excitatory};
    p.max_conductance = {{0}};
    p.synapse_tau = {{1}};
    p.profile_kind = profile_kind::exponential;
    p.noise_amplitude = 1;
    p.reset_std = 0.5;
    return p;
}

inline network_params random_params(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(0, 1);
    network_params p;
    p.n_neurons = n;
    p.threshold = 0.5 + u(rng);
    p.leak_reversal = -0.8 + 0.8*u(rng);
    p.excitatory_reversal = 1.5 + 1.5*u(rng);
    p.inhibitory_reversal = -1.5*u(rng) - 0.2;
    p.noise_amplitude = 0.3 + u(rng);
    p.reset_std = 0.2 + 0.6*u(rng);
    const int kind = int(u(rng)*3);
    p.profile_kind = kind == 0? profile_kind::exponential: kind == 1? profile_kind::alpha: profile_kind::power_exponential;
    p.profile_degree = 2;
    p.external_current.terms.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        p.capacitance.push_back(0.5 + u(rng));
        p.leak_conductance.push_back(0.2 + 0.6*u(rng));
        p.population.push_back(u(rng) < 0.7? population::excitatory: population::inhibitory);
        const double r = u(rng);
        if (r < 0.3) p.external_current.terms[k].push_back({current_term::kind::constant, 0.4*u(rng) - 0.1});
        else if (r < 0.5) p.external_current.terms[k].push_back({current_term::kind::step, 0.3, -3, 2});
        else if (r < 0.7) p.external_current.terms[k].push_back({current_term::kind::sinusoid, 0.2, 0, 0, 5 + 5*u(rng), u(rng)});
    }
    p.max_conductance.assign(n, std::vector<double>(n));
    p.synapse_tau.assign(n, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            p.max_conductance[k][j] = u(rng) < 0.25? 0.0: 0.6*u(rng);
            p.synapse_tau[k][j] = 0.5 + 2*u(rng);
        }
    }
    return p;
}

inline raster random_raster(std::mt19937_64& rng, std::size_t n, tick n0, tick n1, double density) {
    std::bernoulli_distribution b(density);
    raster r(n, n0, n1);
    for (tick t = n0; t <= n1; ++t) {
        for (std::size_t k = 0; k < n; ++k) r.set(k, t, b(rng));
    }
    return r;
}

inline oracle::neuron oracle_neuron(const validated_params& vp, std::size_t k) {
    oracle::neuron nr;
    nr.c = vp.capacitance(k);
    nr.gl = vp.leak_conductance(k);
    nr.el = vp.leak_reversal();
    nr.sigma_b = vp.noise_amplitude();
    nr.sigma_r = vp.reset_std();
    nr.degree = vp.degree();
    for (std::size_t j = 0; j < vp.size(); ++j) nr.in.push_back({vp.g(k, j), vp.weight(k, j), vp.tau(k, j)});
    const auto cur = vp.current();
    nr.current = [cur, k](oracle::real t) { return oracle::real(cur.at(k, double(t))); };
    return nr;
}

} // namespace fixtures
