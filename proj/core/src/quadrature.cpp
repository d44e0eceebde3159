#include <cmath>
#include <numbers>

#include <gifnet/quadrature.hpp>

namespace gifnet {

void check(const integral_config& cfg) {
    if (!(cfg.rel_tol > 0)) throw error(errc::invalid_argument, "rel_tol must be > 0");
    if (cfg.nodes_per_unit < 1 || cfg.nodes_per_unit > 64) {
        throw error(errc::invalid_argument, "nodes_per_unit must lie in [1, 64]");
    }
    if (cfg.refinement_limit < 0) throw error(errc::invalid_argument, "refinement_limit must be >= 0");
}

gl_rule gauss_legendre(int n) {
    gl_rule r;
    r.x.resize(n);
    r.w.resize(n);
    // Newton on P_n from the Chebyshev-like initial guesses, symmetric pairs.
    for (int i = 0; i < (n + 1)/2; ++i) {
        double z = std::cos(std::numbers::pi*(i + 0.75)/(n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            if (n == 0) break;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2*k - 1)*z*p1 - (k - 1)*p0)/k;
                p0 = p1;
                p1 = p2;
            }
            double pn = n == 1? z: p1;
            double pm = n == 1? 1.0: p0;
            dp = n*(z*pn - pm)/(z*z - 1);
            double dz = pn/dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                // one more derivative at the converged point
                p0 = 1; p1 = z;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2*k - 1)*z*p1 - (k - 1)*p0)/k;
                    p0 = p1;
                    p1 = p2;
                }
                pn = n == 1? z: p1;
                pm = n == 1? 1.0: p0;
                dp = n*(z*pn - pm)/(z*z - 1);
                break;
            }
        }
        double w = 2/((1 - z*z)*dp*dp);
        // map [-1,1] -> [0,1]
        r.x[i] = 0.5*(1 - z);
        r.x[n - 1 - i] = 0.5*(1 + z);
        r.w[i] = r.w[n - 1 - i] = 0.5*w;
    }
    return r;
}

} // namespace gifnet
