#pragma once

// Synaptic response kernels alpha(t) = (t/tau)^d exp(-t/tau) H(t), H(0) = 1.
// d = 0 is the exponential profile, d = 1 the alpha profile.

#include <string_view>

namespace gifnet {

enum class profile_kind { exponential, alpha, power_exponential };

std::string_view to_string(profile_kind k);
profile_kind profile_kind_from_string(std::string_view s);

// Degree implied by the kind. power_exponential takes it from the caller.
int profile_degree_of(profile_kind k, int requested);

struct alpha_profile {
    int degree = 0;
    double tau = 1.0;

    double value(double t) const;

    // integral of alpha over [x, inf) for x >= 0; tau * d! * e^{-y} sum_{q<=d} y^q/q!, y = x/tau
    double tail_integral(double x) const;

    // integral of alpha over [a, b]
    double integral(double a, double b) const;

    // sup of alpha over [n, n+1)
    double unit_sup(long n) const;

    double peak_time() const { return degree*tau; }
};

// Tail polynomial factor: tau * d! * sum_{q<=d} y^q/q!
double tail_polynomial(int degree, double tau, double y);

// Conservative sum over n >= 0 of unit_sup(n). Throws series_divergence.
double alpha_plus(const alpha_profile& p);

} // namespace gifnet
