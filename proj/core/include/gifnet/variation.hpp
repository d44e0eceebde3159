#pragma once

// Analytic m-variation bounds: constants of the conductance, synaptic,
// external and variance estimates, and their assembly into the kernel bound.

#include <cstddef>
#include <string_view>
#include <vector>

#include <gifnet/params.hpp>

namespace gifnet {

enum class quantity { conductance, v_syn, v_ext, sigma_sq, kernel };

std::string_view to_string(quantity q);

struct variation_constants {
    std::size_t n = 0;
    int degree = 0;
    bounds_table bounds;
    std::vector<double> tau, g;                  // [k*N + j]
    std::vector<double> a_syn, a_ext, a_sig, a_x; // [k*N + j]
    std::vector<double> b_syn, b_ext, c_sig, b_x, c_x, tau_leak;

    // P_d(m/tau) e^{-m/tau} for synapse (k, j)
    double syn_decay(std::size_t k, std::size_t j, double m) const;
};

variation_constants make_variation_constants(const validated_params& vp);

// Bound for neuron k at depth m. The kernel bound covers all neurons and
// ignores k.
double variation_bound(const variation_constants& c, quantity q, int m, std::size_t k = 0);

// One entry per neuron, or a single entry for quantity::kernel.
std::vector<double> variation_bound(const validated_params& vp, quantity q, int m);

} // namespace gifnet
