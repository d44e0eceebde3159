#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <gifnet/kernel.hpp>
#include <gifnet/params.hpp>
#include <gifnet/quadrature.hpp>
#include <gifnet/raster.hpp>
#include <gifnet/variation.hpp>

namespace gifnet {

struct variation_report {
    quantity q = quantity::kernel;
    int m = 0;
    int tail_horizon = 0;
    // per neuron; a single entry for the kernel
    std::vector<double> measured;
    std::vector<double> bound;
    std::vector<double> budget;     // additive quadrature allowance
    std::uint64_t pairs = 0;        // cylinder pairs covered
    bool product_bound_holds = true;        // product-difference check, kernel only

    bool holds() const;
    double worst_ratio() const;     // max measured/bound
};

struct enumeration_options {
    std::size_t workers = 0;
    integral_config integrals = {};
    // guard on evaluated leaves (agreement blocks x tails x final patterns)
    std::uint64_t max_leaves = std::uint64_t(1) << 26;
};

// Measured (lower) and analytic (upper) m-variation of all five quantities at
// time 0, over tails on {-m-h..-m-1} plus the Omega_0 / Omega_1 tails.
std::vector<variation_report> measure_variation(const validated_params& vp, int m, int tail_horizon,
                                                const enumeration_options& opt = {});
variation_report measure_variation(const validated_params& vp, quantity q, int m, int tail_horizon,
                                   const enumeration_options& opt = {});

struct markov_error_result {
    int depth = 0;
    tick reference_depth = 0;
    double max_tv = 0;
    double mean_kl = 0;
};

// Depth-D truncated law against a deep reference (history_horizon(1e-10), and
// at least tail_horizon rows past D) over probe histories: silent, saturated,
// alternating, neuron-0-only and random ones.
markov_error_result markov_error(const validated_params& vp, int depth, std::size_t probe_count, int tail_horizon,
                                 std::uint64_t seed = 1, const integral_config& cfg = {});

struct monomial_expansion {
    int depth = 0;
    std::size_t n = 0;
    // lambda[mask], bit (t + depth)*N + k stands for omega_k(t), t in [-depth, 0]
    std::vector<double> lambda;
    double residual = 0;    // max |reconstruction - phi| over all blocks

    double constant() const { return lambda[0]; }
    double coefficient(const std::vector<std::pair<std::size_t, int>>& factors) const;
    std::size_t bit(std::size_t k, int t) const { return std::size_t(t + depth)*n + k; }
};

monomial_expansion expand_monomials(const validated_params& vp, int depth, const integral_config& cfg = {});

struct silent_interval_result {
    double empirical = 0;
    double stderr_ = 0;
    double lower = 0;
    double upper = 0;           // (Pi_k^+)^T0
    double upper_product = 0;   // (prod_k Pi_k^+)^T0, the product form
    bool within = false;        // lower - 3SE <= empirical <= upper + 3SE
};

silent_interval_result silent_interval_check(const validated_params& vp, std::size_t k, int t0, std::size_t trials,
                                             std::uint64_t seed, tick burn_in = 16, std::size_t workers = 0);

struct spike_stats {
    std::size_t n = 0;
    int max_lag = 0;
    int width = 0;
    std::vector<double> rates, rate_se;
    std::vector<double> pairwise, pairwise_se;      // [(k*N + j)*(L+1) + lag]
    std::vector<std::vector<double>> blocks, block_se;  // [w-1][code]

    double pair(std::size_t k, std::size_t j, int lag) const {
        return pairwise[(k*n + j)*std::size_t(max_lag + 1) + std::size_t(lag)];
    }
};

spike_stats empirical_stats(const std::vector<raster>& rasters, int max_lag, int width = 1);

raster bin_raster(const raster& r, int width);

void write_variation_csv(std::ostream& os, const std::vector<variation_report>& reports);
void write_markov_csv(std::ostream& os, const std::vector<markov_error_result>& rows);
void write_monomials_csv(std::ostream& os, const monomial_expansion& e);
void write_stats_csv(std::ostream& os, const spike_stats& s);
void write_law_csv(std::ostream& os, const std::vector<conditional_law>& laws);

} // namespace gifnet
