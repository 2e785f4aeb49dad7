#include "dlflame/thermo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

using namespace dlflame;

namespace {

double cutoff_oracle(double theta, double l_f) {
    return 2.0 * std::numbers::pi * l_f *
           (1.0 + theta * (theta + 1.0) / ((theta - 1.0) * (theta - 1.0)) * std::log(theta));
}

}  // namespace

TEST(Thermo, ExpansionSevenConstants) {
    const auto p = derive_flame_params(7.0);
    EXPECT_NEAR(p.lambda_c, 25.302207, 1e-6);
    EXPECT_NEAR(p.r_c, 12.651104, 1e-6);
    EXPECT_NEAR(p.c2, 2.2702285, 1e-7);
    EXPECT_EQ(p.c1, 0.0);
    EXPECT_NEAR(p.lambda_c, cutoff_oracle(7.0, 1.0), 1e-12);
}

TEST(Thermo, ExpansionFiveConstants) {
    const auto p = derive_flame_params(5.0);
    EXPECT_NEAR(p.lambda_c, 25.243929, 1e-6);
    EXPECT_NEAR(p.c2, 2.0117974, 1e-7);
    EXPECT_NEAR(p.c2, 5.0 * std::log(5.0) / 4.0, 1e-14);
}

TEST(Thermo, CutoffScalesWithThickness) {
    const auto a = derive_flame_params(7.0, 1.0);
    const auto b = derive_flame_params(7.0, 2.0);
    EXPECT_DOUBLE_EQ(b.lambda_c, 2.0 * a.lambda_c);
    EXPECT_DOUBLE_EQ(b.r_c, 2.0 * a.r_c);
    EXPECT_EQ(b.c2, a.c2);
}

TEST(Thermo, InvariantsOverThetaRange) {
    for (double theta = 1.05; theta <= 20.0; theta += 0.25) {
        const auto p = derive_flame_params(theta, 1.0);
        EXPECT_EQ(p.r_c, p.lambda_c / 2.0);
        EXPECT_GT(p.lambda_c, 2.0 * std::numbers::pi);
        EXPECT_EQ(p.c1, 0.0);
        EXPECT_GT(p.c2, 0.0);
        EXPECT_GT(p.r_c, std::numbers::pi);
        for (double l_f : {0.5, 1.0, 3.0}) {
            EXPECT_NEAR(derive_flame_params(theta, l_f).lambda_c, l_f * p.lambda_c, 1e-12 * l_f * p.lambda_c);
        }
    }
}

TEST(Thermo, CriticalWidthGrowsTowardsUnitExpansion) {
    double prev = 0.0;
    for (double theta : {1.5, 1.2, 1.1, 1.05}) {
        const double r = derive_flame_params(theta).r_c;
        EXPECT_GT(r, prev);
        prev = r;
    }
}

TEST(Thermo, RejectsInvalidInput) {
    EXPECT_THROW((void)derive_flame_params(1.0), std::invalid_argument);
    EXPECT_THROW((void)derive_flame_params(0.5), std::invalid_argument);
    EXPECT_THROW((void)derive_flame_params(7.0, 0.0), std::invalid_argument);
    EXPECT_THROW((void)derive_flame_params(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    EXPECT_THROW((void)derive_flame_params(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST(Thermo, OverridesReplaceClosureValues) {
    FlameOverrides o;
    o.has_lambda_c = true;
    o.lambda_c = 30.0;
    o.has_c2 = true;
    o.c2 = 1.5;
    const auto p = derive_flame_params(7.0, 1.0, o);
    EXPECT_EQ(p.lambda_c, 30.0);
    EXPECT_EQ(p.r_c, 15.0);
    EXPECT_EQ(p.c2, 1.5);
    EXPECT_EQ(p.c1, 0.0);
}

TEST(Thermo, CustomParamsAllowZeroExpansionLimit) {
    const auto p = custom_flame_params(1.0, 0.0, 0.0, 0.0, 0.0);
    EXPECT_EQ(p.theta, 1.0);
    EXPECT_EQ(p.r_c, 0.0);
}
