#include "kzent/errors.hpp"
#include "kzent/para_dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace kzent;

namespace {

constexpr double kPi = std::numbers::pi;
const ParaConfig kFig3{120, 1.0 / 6.0, 2.0};

}  // namespace

TEST(ParaDynamics, DisplacementValues)
{
    EXPECT_EQ(l_of_t(kFig3, 0.0), complex(0.0, 0.0));
    EXPECT_NEAR(std::abs(l_of_t(kFig3, 2.0 * kPi / kFig3.h)), 0.0, 1e-15);
    const complex l = l_of_t(kFig3, kPi / 2.0);
    EXPECT_NEAR(l.real(), 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(l.imag(), 0.0, 1e-15);
    EXPECT_THROW(l_of_t(ParaConfig{8, 0.1, 0.0}, 1.0), DomainError);
}

TEST(ParaDynamics, BranchDirections)
{
    const ScsDirection p = branch_direction_para(kFig3, +1, kPi / 2.0);
    EXPECT_NEAR(p.theta(), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(p.phi(), 0.0, 1e-15);
    for (double t : {0.1, 0.7, 1.3, 2.9}) {
        const ScsDirection a = branch_direction_para(kFig3, +1, t);
        const ScsDirection b = branch_direction_para(kFig3, -1, t);
        EXPECT_NEAR(a.theta(), b.theta(), 1e-15);
        EXPECT_NEAR(std::remainder(b.phi() - a.phi() - kPi, 2.0 * kPi), 0.0, 1e-12);
    }
    EXPECT_NEAR(branch_direction_para(kFig3, -1, 0.0).theta(), 0.0, 1e-15);
    EXPECT_THROW(branch_direction_para(kFig3, 0, 1.0), std::invalid_argument);
}

TEST(ParaDynamics, StartAndRevival)
{
    EXPECT_DOUBLE_EQ(concurrence_para(kFig3, 0.0), 1.0);
    EXPECT_NEAR(concurrence_para(kFig3, 2.0 * kPi / kFig3.h), 1.0, 1e-12);
}

TEST(ParaDynamics, MatchesSimplifiedClosedForm)
{
    for (const ParaConfig& c : {ParaConfig{8, 0.05, 2.0}, kFig3, ParaConfig{1000, 0.2, 5.0}}) {
        for (int i = 0; i <= 200; ++i) {
            const double t = 2.0 * kPi / c.h * i / 200.0;
            EXPECT_NEAR(concurrence_para(c, t), concurrence_from_displacement(c.N, l_of_t(c, t)), 1e-12);
        }
    }
}

TEST(ParaDynamics, PeriodicAndBounded)
{
    const double period = 2.0 * kPi / kFig3.h;
    for (int i = 0; i < 100; ++i) {
        const double t = 0.031 * i;
        const double c = concurrence_para(kFig3, t);
        EXPECT_GE(c, 0.0);
        EXPECT_LE(c, 1.0);
        EXPECT_NEAR(concurrence_para(kFig3, t + period), c, 1e-12);
    }
}

TEST(ParaDynamics, LargerRingDecaysFaster)
{
    const double half_period = kPi / kFig3.h;
    for (int i = 1; i < 50; ++i) {
        const double t = half_period * i / 50.0;
        EXPECT_LT(concurrence_para(ParaConfig{240, kFig3.g, kFig3.h}, t), concurrence_para(kFig3, t));
    }
}

TEST(ParaDynamics, WeakCouplingGuard)
{
    EXPECT_NO_THROW(kFig3.validate());
    EXPECT_THROW((ParaConfig{8, 0.3, 2.0}.validate()), ConfigError);
    EXPECT_THROW((ParaConfig{8, 0.2, 0.5}.validate()), ConfigError);
    EXPECT_NO_THROW((ParaConfig{8, 0.3, 2.0}.validate(WeakCouplingGuard{0.3, 0.3})));
    EXPECT_THROW((ParaConfig{8, 0.1, 0.0}.validate()), ConfigError);
}
