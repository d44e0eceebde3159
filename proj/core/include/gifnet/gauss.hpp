#pragma once

#include <cmath>

namespace gifnet {

// pi(x) = P(N(0,1) > x)
inline double gaussian_tail(double x) {
    return 0.5*std::erfc(x*0.70710678118654752440);
}

// log pi(x) without underflow. Far in the upper tail pi(x) = phi(x)/CF(x)
// with the Laplace continued fraction CF = x + 1/(x + 2/(x + 3/(x + ...))).
inline double log_gaussian_tail(double x) {
    if (x < -5) return std::log1p(-gaussian_tail(-x));
    if (x < 30) return std::log(gaussian_tail(x));
    double cf = x;
    for (int i = 60; i >= 1; --i) cf = x + i/cf;
    return -0.5*x*x - 0.91893853320467274178 - std::log(cf);
}

} // namespace gifnet
