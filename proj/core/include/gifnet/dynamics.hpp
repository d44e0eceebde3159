#pragma once

// Direct evaluation of the membrane integrals from explicit spike lists.
// Each call rebuilds everything from the history; network_trace (trace.hpp)
// is the incremental engine used for long runs and enumerations.

#include <cstddef>
#include <limits>
#include <vector>

#include <gifnet/params.hpp>
#include <gifnet/profile.hpp>
#include <gifnet/quadrature.hpp>
#include <gifnet/raster.hpp>

namespace gifnet {

constexpr double minus_infinity = -std::numeric_limits<double>::infinity();

double alpha_value(const alpha_profile& p, double t);
// sum over spikes r < t of alpha(t - r)
double alpha_sum(const alpha_profile& p, double t, const spike_time_list& spikes);
// bound on the mass of alpha beyond `depth`
double alpha_tail_bound(const alpha_profile& p, double depth);

// Spikes per neuron, everything before `earliest` is silent.
struct spike_history {
    std::vector<spike_time_list> spikes;
    double earliest = minus_infinity;

    // bits on [upto - horizon, upto]
    static spike_history from_raster(const raster& r, tick upto, tick horizon);
};

double conductance(const validated_params& vp, std::size_t k, double t, const spike_history& h);
// all neurons; HorizonTooShallow when the dropped tail could exceed `tol`
std::vector<double> conductance(const validated_params& vp, double t, const raster& r, tick horizon,
                                double tol = 1e-9);

// integral of g_k over [a, b], exact per-spike antiderivatives
double integrated_conductance(const validated_params& vp, std::size_t k, double a, double b, const spike_history& h);
double effective_leak(const validated_params& vp, std::size_t k, double t1, double t2, const spike_history& h);

// Integral of the external current against exp(-(a-u)/tau) over (-inf, a].
double ext_current_memory(const validated_params& vp, std::size_t k, double a, double tau);

struct membrane_terms {
    double v_syn = 0;
    double v_ext = 0;
    double v_det = 0;
    double sigma_sq = 0;
    double gamma = 0;   // Gamma_k(s, t), 0 for s = -inf
};

// All integrals from s (reset time, possibly -inf) to t for neuron k.
membrane_terms membrane(const validated_params& vp, std::size_t k, double s, double t, const spike_history& h,
                        const integral_config& cfg = {});

double v_syn(const validated_params& vp, std::size_t k, double s, double t, const spike_history& h,
             const integral_config& cfg = {});
double v_ext(const validated_params& vp, std::size_t k, double s, double t, const spike_history& h,
             const integral_config& cfg = {});

// Integer-time versions reading the raster over [n - horizon, n]; the reset
// time comes from last_reset, Omega_0 is assumed before the horizon.
double v_det(const validated_params& vp, std::size_t k, tick n, const raster& r, tick horizon,
             const integral_config& cfg = {});
double sigma_sq(const validated_params& vp, std::size_t k, tick n, const raster& r, tick horizon,
                const integral_config& cfg = {});

// Smallest depth past which the analytic kernel variation bound stays below eps.
tick history_horizon(const validated_params& vp, double eps);

} // namespace gifnet
