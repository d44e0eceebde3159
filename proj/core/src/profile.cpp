#include <cmath>
#include <string>

#include <gifnet/error.hpp>
#include <gifnet/profile.hpp>

namespace gifnet {

std::string_view to_string(profile_kind k) {
    switch (k) {
    case profile_kind::exponential: return "exponential";
    case profile_kind::alpha: return "alpha";
    case profile_kind::power_exponential: return "power_exponential";
    }
    return "?";
}

profile_kind profile_kind_from_string(std::string_view s) {
    if (s == "exponential") return profile_kind::exponential;
    if (s == "alpha") return profile_kind::alpha;
    if (s == "power_exponential") return profile_kind::power_exponential;
    throw error(errc::bad_profile, "unknown profile_kind '" + std::string(s) + "'");
}

int profile_degree_of(profile_kind k, int requested) {
    switch (k) {
    case profile_kind::exponential: return 0;
    case profile_kind::alpha: return 1;
    case profile_kind::power_exponential: return requested;
    }
    return requested;
}

double alpha_profile::value(double t) const {
    if (t < 0) return 0.0;
    double y = t/tau;
    double e = std::exp(-y);
    if (degree == 0) return e;
    return std::pow(y, degree)*e;
}

double tail_polynomial(int degree, double tau, double y) {
    // d! * sum y^q/q!  ==  sum_{q} y^q * d!/q!, evaluated Horner style from q = d down
    double acc = 1.0;
    for (int q = degree; q >= 1; --q) acc = 1.0 + acc*y/q;
    double fact = 1.0;
    for (int q = 2; q <= degree; ++q) fact *= q;
    return tau*fact*acc;
}

double alpha_profile::tail_integral(double x) const {
    if (x < 0) x = 0;
    double y = x/tau;
    return tail_polynomial(degree, tau, y)*std::exp(-y);
}

double alpha_profile::integral(double a, double b) const {
    if (b <= 0 || b <= a) return 0.0;
    if (a < 0) a = 0;
    return tail_integral(a) - tail_integral(b);
}

double alpha_profile::unit_sup(long n) const {
    double lo = double(n), hi = double(n + 1);
    if (hi <= 0) return 0.0;
    double pk = peak_time();
    if (pk < lo) return value(lo);
    if (pk < hi) return value(pk);
    return value(hi);
}

double alpha_plus(const alpha_profile& p) {
    if (!(p.tau > 0) || !std::isfinite(p.tau) || p.degree < 0) {
        throw error(errc::series_divergence, "profile tail test failed: tau must be positive and finite");
    }
    constexpr long max_terms = 50'000'000;
    double sum = 0;
    for (long n = 0; n < max_terms; ++n) {
        double term = p.unit_sup(n);
        if (!std::isfinite(term)) break;
        sum += term;
        // past the peak alpha is decreasing, so sum_{m>n} alpha(m) <= int_n^inf alpha
        if (n > p.peak_time() + 1 && term < 1e-17*sum) {
            return sum + p.tail_integral(double(n));
        }
    }
    throw error(errc::series_divergence, "alpha+ series did not converge");
}

} // namespace gifnet
