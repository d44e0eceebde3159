#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include <gifnet/analysis.hpp>
#include <gifnet/error.hpp>

#include "instances.hpp"

using namespace gifnet;

TEST(Variation, ShallowDepthsHold) {
    for (auto p: {fixtures::autapse(), fixtures::pair()}) {
        auto vp = validate(p);
        for (int m = 0; m <= 3; ++m) {
            auto reports = measure_variation(vp, m, 2);
            ASSERT_EQ(reports.size(), 5u);
            for (auto& r: reports) {
                EXPECT_TRUE(r.holds()) << to_string(r.q) << " m=" << m << " ratio " << r.worst_ratio();
                EXPECT_GT(r.pairs, 0u);
                for (double v: r.measured) EXPECT_GE(v, 0);
            }
        }
    }
}

TEST(Variation, MeasuredDecays) {
    auto vp = validate(fixtures::pair());
    auto a = measure_variation(vp, quantity::conductance, 1, 2);
    auto b = measure_variation(vp, quantity::conductance, 4, 2);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_LT(b.measured[k], a.measured[k]);
}

TEST(Variation, ExtremalPairIsCovered) {
    // m-variation of the autapse conductance is at least the gap between the
    // all-ones and the silent tail behind a silent agreement block
    auto vp = validate(fixtures::autapse());
    const int m = 2;
    auto r = measure_variation(vp, quantity::conductance, m, 1);
    const double q = std::exp(-1/1.5);
    const double gap = 0.5*std::pow(q, m + 1)/(1 - q);
    EXPECT_GE(r.measured[0], gap*(1 - 1e-12));
}

TEST(Variation, GuardRefusesHugeSweeps) {
    auto vp = validate(fixtures::pair());
    enumeration_options opt;
    opt.max_leaves = 1000;
    EXPECT_THROW(measure_variation(vp, 6, 4, opt), error);
}

TEST(MarkovError, DecreasesWithDepth) {
    auto vp = validate(fixtures::pair());
    double prev = 2;
    for (int d = 0; d <= 5; ++d) {
        auto e = markov_error(vp, d, 16, 3);
        EXPECT_EQ(e.depth, d);
        EXPECT_GE(e.mean_kl, 0);
        EXPECT_LE(e.max_tv, prev + 1e-10);
        if (d == 0) EXPECT_GT(e.max_tv, 0);
        prev = e.max_tv;
    }
}

TEST(Monomials, ReconstructAndStructure) {
    auto vp = validate(fixtures::pair());
    auto e = expand_monomials(vp, 2);
    EXPECT_LT(e.residual, 1e-10);
    // a product over two time-0 factors never appears: the kernel factorizes
    for (std::size_t mask = 0; mask < e.lambda.size(); ++mask) {
        if ((mask >> e.bit(0, 0) & 1) && (mask >> e.bit(1, 0) & 1)) EXPECT_LT(std::abs(e.lambda[mask]), 1e-9) << mask;
    }
    auto e0 = expand_monomials(vp, 0);
    ASSERT_EQ(e0.lambda.size(), 4u);
    EXPECT_LT(std::abs(e0.lambda[3]), 1e-12);
    EXPECT_NE(e0.coefficient({{0, 0}}), 0);
    EXPECT_THROW(expand_monomials(vp, 10), error);
}

TEST(Stats, HandCounted) {
    raster a(2, 0, 3), b(2, 0, 3);
    // a: neuron 0 fires at 0, 2; neuron 1 at 1
    a.set(0, 0, true);
    a.set(0, 2, true);
    a.set(1, 1, true);
    b.set(0, 3, true);
    auto s = empirical_stats({a, b}, 1, 2);
    EXPECT_DOUBLE_EQ(s.rates[0], (0.5 + 0.25)/2);
    EXPECT_DOUBLE_EQ(s.rates[1], 0.125);
    EXPECT_NEAR(s.rate_se[0], 0.125, 1e-15);
    // lag 1, k=0, j=1: a has omega_0(2) omega_1(1) = 1 over 3 slots
    EXPECT_NEAR(s.pair(0, 1, 1), ((1.0/3 - 0.5*0.25) + (0 - 0.25*0))/2, 1e-15);
    // width-2 block codes: bit sft*N + k, sft 0 is the older row
    EXPECT_NEAR(s.blocks[1][0b1001], (1.0/3 + 0)/2, 1e-15);
    auto single = empirical_stats({a}, 0, 1);
    EXPECT_TRUE(std::isnan(single.rate_se[0]));
    raster c(2, 0, 4);
    EXPECT_THROW(empirical_stats({a, c}, 0, 1), error);
}

TEST(Bin, OrOverWindows) {
    raster r(1, 10, 16);
    r.set(0, 11, true);
    r.set(0, 16, true);
    auto b = bin_raster(r, 3);
    EXPECT_EQ(b.first(), 10);
    EXPECT_EQ(b.last(), 11);
    EXPECT_TRUE(b.bit(0, 10));
    EXPECT_FALSE(b.bit(0, 11));
    EXPECT_EQ(bin_raster(r, 1), r);
    EXPECT_THROW(bin_raster(r, 8), error);
}

TEST(SilentInterval, IsolatedNeuron) {
    auto vp = validate(fixtures::isolated());
    auto s = silent_interval_check(vp, 0, 2, 4000, 3);
    EXPECT_TRUE(s.within);
    EXPECT_LE(s.lower, s.upper);
    EXPECT_NEAR(s.lower, std::pow(0.022750131948179207200, 2), 1e-16);
}

TEST(Csv, Layouts) {
    auto vp = validate(fixtures::autapse());
    std::ostringstream v;
    write_variation_csv(v, measure_variation(vp, 0, 1));
    EXPECT_EQ(v.str().rfind("quantity,neuron,m,measured,bound\n", 0), 0u);
    EXPECT_NE(v.str().find("\nkernel,all,0,"), std::string::npos);

    std::ostringstream mk;
    write_markov_csv(mk, {markov_error(vp, 1, 4, 2)});
    EXPECT_EQ(mk.str().rfind("D,max_tv,mean_kl\n1,", 0), 0u);

    std::ostringstream mo;
    write_monomials_csv(mo, expand_monomials(vp, 1));
    EXPECT_EQ(mo.str().rfind("indices,lambda\n{},", 0), 0u);
    EXPECT_NE(mo.str().find("\n0@-1 0@0,"), std::string::npos);

    raster r(1, 0, 5);
    r.set(0, 2, true);
    std::ostringstream st;
    write_stats_csv(st, empirical_stats({r, r}, 1, 1));
    EXPECT_EQ(st.str().rfind("estimator,indices,value,stderr\n", 0), 0u);
}
