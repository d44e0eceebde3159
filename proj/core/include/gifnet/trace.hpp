#pragma once

// Incremental evaluation of the membrane integrals along a raster.
//
// For every synapse (k, j) the engine keeps the moments
//   M_i = sum_{r <= b, omega_j(r) = 1} ((b-r)/tau)^i e^{-(b-r)/tau},  i = 0..d
// which give alpha_kj and its integral at any b + x in closed form. For every
// neuron it keeps the Gamma-weighted integrals since the last reset, so one
// time step costs one unit-interval quadrature regardless of history length.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include <gifnet/params.hpp>
#include <gifnet/quadrature.hpp>
#include <gifnet/raster.hpp>

namespace gifnet {

namespace detail { struct trace_tables; }

class network_trace {
public:
    explicit network_trace(const validated_params& vp, const integral_config& cfg = {});

    std::size_t size() const { return n_; }
    tick time() const { return time_; }

    // Omega_0 through time t
    void reset_silent(tick t);
    // Omega_1 through time t
    void reset_all_ones(tick t);
    // Omega_0 before `from`, then the raster bits on [from, to]
    void replay(const raster& r, tick from, tick to);

    // Integrate over (time, time+1]. apply() then places the pattern at time+1.
    void integrate();
    void apply(std::span<const std::uint8_t> pattern);
    void advance(std::span<const std::uint8_t> pattern) {
        integrate();
        apply(pattern);
    }

    // state at time()
    double v_syn(std::size_t k) const;
    double v_ext(std::size_t k) const;
    double v_det(std::size_t k) const { return v_syn(k) + v_ext(k); }
    double sigma_sq(std::size_t k) const;
    // g_k(time()), spikes strictly before time()
    double conductance(std::size_t k) const { return g_now_[k]; }
    // Gamma_k(last reset, time()); 0 when the neuron never fired
    double reset_gamma(std::size_t k) const { return gs_[k]; }

    // After integrate(), before apply(): values at time()+1 if neuron k
    // does (fired) or does not fire at time()+1.
    double peek_v_syn(std::size_t k, bool fired) const;
    double peek_v_ext(std::size_t k, bool fired) const;
    double peek_v_det(std::size_t k, bool fired) const { return peek_v_syn(k, fired) + peek_v_ext(k, fired); }
    double peek_sigma_sq(std::size_t k, bool fired) const;
    double peek_conductance(std::size_t k) const { return g_next_[k]; }

    // Copy the dynamic state of another trace built on the same tables.
    void load_state(const network_trace& o);

private:
    std::shared_ptr<const detail::trace_tables> tab_;
    std::size_t n_ = 0;
    tick time_ = 0;
    bool integrated_ = false;

    std::vector<double> mom_;          // per synapse, d+1 each
    std::vector<double> r0_, r2_, rsyn_, rext_, gs_;
    std::vector<double> g_now_;
    // pending unit integrals
    std::vector<double> u0_, u2_, usyn_, uext_, gam_, g_next_;
    std::vector<double> scratch_;

    void integrate_neuron(std::size_t k);
    void integrate_generic(std::size_t k, const std::vector<double>& cuts);
};

} // namespace gifnet
