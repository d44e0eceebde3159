#include <cmath>

#include <gtest/gtest.h>

#include <gifnet/error.hpp>
#include <gifnet/gauss.hpp>
#include <gifnet/profile.hpp>
#include <gifnet/quadrature.hpp>

#include "oracle.hpp"

using namespace gifnet;

TEST(Profile, HeavisideAtZero) {
    EXPECT_EQ(alpha_profile({0, 2.0}).value(0), 1.0);
    EXPECT_EQ(alpha_profile({1, 2.0}).value(0), 0.0);
    EXPECT_EQ(alpha_profile({0, 2.0}).value(-1e-12), 0.0);
}

TEST(Profile, KindsAndDegrees) {
    EXPECT_EQ(profile_degree_of(profile_kind::exponential, 7), 0);
    EXPECT_EQ(profile_degree_of(profile_kind::alpha, 7), 1);
    EXPECT_EQ(profile_degree_of(profile_kind::power_exponential, 3), 3);
    EXPECT_EQ(profile_kind_from_string("alpha"), profile_kind::alpha);
    EXPECT_EQ(to_string(profile_kind::power_exponential), "power_exponential");
    EXPECT_THROW(profile_kind_from_string("gamma"), error);
}

TEST(Profile, TailIntegralAgainstSimpson) {
    for (int d = 0; d <= 3; ++d) {
        for (double tau: {0.4, 1.0, 2.7}) {
            alpha_profile p{d, tau};
            for (double x: {0.0, 0.3, 1.0, 4.5}) {
                auto ref = oracle::simpson([&](oracle::real t) { return oracle::alpha(d, tau, t); }, x, x + 80*tau, 40000);
                EXPECT_NEAR(p.tail_integral(x), double(ref), 1e-12*double(ref) + 1e-300) << d << ' ' << tau << ' ' << x;
            }
        }
    }
}

TEST(Profile, IntervalIntegral) {
    alpha_profile p{2, 1.3};
    auto ref = oracle::simpson([&](oracle::real t) { return oracle::alpha(2, 1.3, t); }, 0.25, 3.75, 4000);
    EXPECT_NEAR(p.integral(0.25, 3.75), double(ref), 1e-13);
    EXPECT_NEAR(p.integral(-2, 0), 0, 0);
}

TEST(Profile, TailPolynomialClosedForm) {
    // tau d! (1 + y + y^2/2) for d = 2
    EXPECT_NEAR(tail_polynomial(2, 1.5, 2.0), 1.5*2*(1 + 2 + 2), 1e-13);
    EXPECT_NEAR(tail_polynomial(0, 3.0, 9.0), 3.0, 0);
}

TEST(Profile, UnitSup) {
    alpha_profile p{1, 1.5};
    // peak at t = tau = 1.5 falls in [1, 2)
    EXPECT_NEAR(p.unit_sup(1), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(p.unit_sup(0), 1/1.5*std::exp(-1/1.5), 1e-15);
    EXPECT_NEAR(p.unit_sup(3), p.value(3), 1e-15);
    EXPECT_NEAR(alpha_profile({0, 2.0}).unit_sup(2), std::exp(-1.0), 1e-15);
}

TEST(Profile, AlphaPlusExponentialIsGeometric) {
    for (double tau: {0.3, 1.0, 5.0}) {
        const double geo = 1/(1 - std::exp(-1/tau));
        const double a = alpha_plus({0, tau});
        EXPECT_GE(a, geo*(1 - 1e-15));
        EXPECT_NEAR(a, geo, 1e-13*geo);
    }
}

TEST(Profile, AlphaPlusBoundsSupOfSums) {
    // alpha+ must dominate sum_r alpha(t - r) over unit-spaced spikes at any t
    for (int d = 0; d <= 2; ++d) {
        alpha_profile p{d, 1.7};
        const double a = alpha_plus(p);
        for (double frac = 0; frac < 1; frac += 0.05) {
            double s = 0;
            for (int r = 0; r < 400; ++r) s += p.value(frac + r);
            EXPECT_LE(s, a*(1 + 1e-14));
        }
    }
}

TEST(Gauss, TailValues) {
    EXPECT_EQ(gaussian_tail(0), 0.5);
    // mpmath: 0.5*erfc(x/sqrt(2)); rounding x/sqrt(2) costs about x^2 ulps
    auto rel = [](double got, double want) { return std::abs(got/want - 1); };
    EXPECT_LT(rel(gaussian_tail(1), 0.15865525393145705141), 2e-15);
    EXPECT_LT(rel(gaussian_tail(3), 0.0013498980316300945267), 4e-15);
    EXPECT_LT(rel(gaussian_tail(-2), 0.97724986805182079280), 2e-16);
    EXPECT_LT(rel(gaussian_tail(10), 7.6198530241605260659e-24), 5e-14);
    for (double x = -8; x <= 8; x += 0.37) EXPECT_NEAR(gaussian_tail(x) + gaussian_tail(-x), 1, 1e-15);
}

TEST(Gauss, LogTail) {
    auto rel = [](double got, double want) { return std::abs(got/want - 1); };
    EXPECT_LT(rel(log_gaussian_tail(2), -3.7831843336820319488), 1e-15);
    EXPECT_LT(rel(log_gaussian_tail(29.9), -451.32291245852863447), 1e-14);
    EXPECT_LT(rel(log_gaussian_tail(30), -454.32124395634319711), 1e-15);
    EXPECT_LT(rel(log_gaussian_tail(40), -804.60844201375378817), 1e-15);
    EXPECT_LT(rel(log_gaussian_tail(100), -5005.5242086942050886), 1e-15);
    EXPECT_LT(rel(log_gaussian_tail(1000), -500007.82669481218431), 1e-15);
    EXPECT_LT(rel(log_gaussian_tail(-3), -0.0013508099647481937988), 1e-14);
    EXPECT_EQ(log_gaussian_tail(-40), 0.0);
}

TEST(Quadrature, GaussLegendreExactOnPolynomials) {
    auto r = gauss_legendre(6);
    double s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.w[i]*std::pow(r.x[i], 11);
    EXPECT_NEAR(s, 1.0/12, 1e-15);
}

TEST(Quadrature, AdaptiveVectorIntegrand) {
    auto rule = gauss_legendre(8);
    auto v = integrate<2>([](double x) { return std::array<double, 2>{std::exp(-x), std::sin(3*x)}; }, 0, 5, rule, {});
    EXPECT_NEAR(v[0], 1 - std::exp(-5.0), 1e-12);
    EXPECT_NEAR(v[1], (1 - std::cos(15.0))/3, 1e-10);
}

TEST(Quadrature, NonConvergenceIsReported) {
    auto rule = gauss_legendre(2);
    integral_config cfg;
    cfg.rel_tol = 1e-15;
    cfg.refinement_limit = 1;
    EXPECT_THROW(integrate<1>([](double x) { return std::array<double, 1>{std::sqrt(x)}; }, 0, 1, rule, cfg), error);
    try {
        integrate<1>([](double x) { return std::array<double, 1>{std::sqrt(x)}; }, 0, 1, rule, cfg);
    }
    catch (const error& e) {
        EXPECT_EQ(e.code(), errc::quadrature_non_convergence);
    }
}
