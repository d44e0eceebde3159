#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gifnet/gauss.hpp>
#include <gifnet/params.hpp>
#include <gifnet/quadrature.hpp>
#include <gifnet/raster.hpp>
#include <gifnet/rng.hpp>

namespace gifnet {

class network_trace;

struct neuron_law {
    double v_det = 0;
    double sigma = 0;
    double x = 0;
    double p_fire = 0;
    double p_silent = 0;    // pi(-x), kept separately to avoid 1 - p cancellation
};

struct conditional_law {
    tick time = 0;
    std::vector<neuron_law> neurons;
};

using pattern = std::vector<std::uint8_t>;

// Law of omega(n) from the state of `tr` at time n-1.
conditional_law law_from_trace(const validated_params& vp, const network_trace& tr);
// Law of omega(n) given raster bits on [n - horizon, n-1] (Omega_0 before).
conditional_law conditional_law_at(const validated_params& vp, tick n, const raster& r, tick horizon,
                                   const integral_config& cfg = {});

double transition_prob(const conditional_law& law, std::span<const std::uint8_t> omega);

struct potential_value {
    tick n = 0;
    double total = 0;
    std::vector<double> terms;
};

potential_value potential(const conditional_law& law, std::span<const std::uint8_t> omega);

// pattern code c <-> bits: omega_k = (c >> k) & 1
pattern decode_pattern(std::uint64_t code, std::size_t n);

// Depth-D truncated conditional of omega(0) given the D rows of `context`
// (time-major, oldest first, Omega_0 before). Returns all 2^N probabilities
// indexed by pattern code.
std::vector<double> truncated_law(const validated_params& vp, int depth, std::span<const std::uint8_t> context,
                                  const integral_config& cfg = {});
double truncated_conditional(const validated_params& vp, int depth, std::span<const std::uint8_t> context,
                             std::span<const std::uint8_t> omega0, const integral_config& cfg = {});

struct uniqueness_certificate {
    double m_p_lower = 0;
    double log_m_p_lower = 0;   // finite even when m_p_lower underflows
    double v_p_upper = 0;
    // largest last-term / partial-sum ratio over the summed series
    double last_term_ratio = 0;
};

uniqueness_certificate make_certificate(const validated_params& vp);

// p_fire clamped to [0, 1] is used, so test hooks may pass 0 or 1 directly.
pattern sample_step(const conditional_law& law, const step_stream& rng);

struct simulation_options {
    tick steps = 1;
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    past_convention past = past_convention::empty();
    // unset: exact infinite memory. set: history truncated to this many steps.
    std::optional<tick> memory;
    std::size_t workers = 0;    // 0: from GIFNET_THREADS / hardware
    integral_config integrals = {};
};

// Trial t has window [0, steps-1] and uses the stream (seed, t, step).
std::vector<raster> simulate(const validated_params& vp, const simulation_options& opt);

} // namespace gifnet
