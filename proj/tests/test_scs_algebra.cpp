#include "kzent/exact_oracle.hpp"
#include "kzent/scs_algebra.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace kzent;

namespace {

constexpr double kPi = std::numbers::pi;

ScsDirection random_direction(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return {std::acos(2.0 * u(rng) - 1.0), 2.0 * kPi * u(rng)};
}

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(ScsAlgebra, DirectionNormalization)
{
    const ScsDirection a(3.0 * kPi / 2.0, 0.0);
    EXPECT_NEAR(a.theta(), kPi / 2.0, 1e-15);
    EXPECT_NEAR(a.phi(), kPi, 1e-15);
    const ScsDirection b(0.3, -0.5);
    EXPECT_NEAR(b.phi(), 2.0 * kPi - 0.5, 1e-15);
    const ScsDirection c = ScsDirection::from_omega({0.0, 0.25});
    EXPECT_NEAR(c.theta(), 0.5, 1e-15);
    EXPECT_NEAR(c.phi(), kPi / 2.0, 1e-15);
}

TEST(ScsAlgebra, OmegaRoundTrip)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const ScsDirection d = random_direction(rng);
        const ScsDirection back = ScsDirection::from_omega(omega_from_angles(d));
        EXPECT_NEAR((bloch_vector(back) - bloch_vector(d)).norm(), 0.0, 1e-12);
        EXPECT_NEAR((bloch_vector(ScsDirection::from_vector(3.0 * bloch_vector(d))) - bloch_vector(d)).norm(), 0.0,
                    1e-12);
    }
}

TEST(ScsAlgebra, RotationIdentityAndQuarterTurn)
{
    EXPECT_LT(max_abs(rotation_matrix(ScsDirection(0.0, 1.3)) - Mat3::Identity()), 1e-15);
    Mat3 expected;
    expected << 0, 0, 1, 0, 1, 0, -1, 0, 0;
    EXPECT_LT(max_abs(rotation_matrix(ScsDirection(kPi / 2.0, 0.0)) - expected), 1e-15);
}

TEST(ScsAlgebra, RotationIsOrthogonalAndMapsNorthPole)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const ScsDirection d = random_direction(rng);
        const Mat3 r = rotation_matrix(d);
        EXPECT_LT(max_abs(r.transpose() * r - Mat3::Identity()), 1e-12);
        EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
        EXPECT_LT((r * Vec3::UnitZ() - bloch_vector(d)).norm(), 1e-12);
    }
}

TEST(ScsAlgebra, AntipodalDisplacementIsInverse)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 1000; ++i) {
        const ScsDirection d = random_direction(rng);
        const ScsDirection minus = ScsDirection::from_omega(-omega_from_angles(d));
        EXPECT_LT(max_abs(rotation_matrix(minus) * rotation_matrix(d) - Mat3::Identity()), 1e-12);
    }
}

TEST(ScsAlgebra, DisplacementPreservesNorm)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const Vec3 n = apply_displacement(random_direction(rng), bloch_vector(random_direction(rng)));
        EXPECT_NEAR(n.norm(), 1.0, 1e-12);
    }
}

TEST(ScsAlgebra, OverlapKernel)
{
    const ScsDirection north;
    const ScsDirection south(kPi, 0.0);
    const ScsDirection equator(kPi / 2.0, 0.7);
    const SpinMagnitude s(6);
    EXPECT_DOUBLE_EQ(overlap_magnitude(north, north, s), 1.0);
    EXPECT_NEAR(overlap_magnitude(north, south, s), 0.0, 1e-30);
    EXPECT_NEAR(overlap_magnitude(north, equator, s), std::pow(0.5, 6), 1e-15);
    EXPECT_NEAR(overlap_modulus(north, equator, s), std::pow(0.5, 3), 1e-15);
}

TEST(ScsAlgebra, CoefficientsAreNormalizedAndMatchNorthPole)
{
    const SpinMagnitude s(9);
    const Eigen::VectorXcd north = gm_coefficients(ScsDirection{}, s);
    EXPECT_NEAR(std::abs(north(0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(north.tail(9).norm(), 0.0, 1e-15);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) EXPECT_NEAR(gm_coefficients(random_direction(rng), s).norm(), 1.0, 1e-12);
    EXPECT_THROW(gm_coefficient(ScsDirection{}, s, 10), std::out_of_range);
    EXPECT_THROW(gm_coefficient(ScsDirection{}, s, -1), std::out_of_range);
}

TEST(ScsAlgebra, ExactOverlapMatchesKernel)
{
    std::mt19937_64 rng(17);
    for (int two_s : {1, 10, 60, 400}) {
        const SpinMagnitude s(two_s);
        for (int i = 0; i < 100; ++i) {
            const ScsDirection a = random_direction(rng);
            const ScsDirection b = random_direction(rng);
            EXPECT_NEAR(std::norm(overlap_exact(a, b, s)), overlap_magnitude(a, b, s), 1e-10) << "2S = " << two_s;
        }
    }
    EXPECT_THROW(overlap_exact(ScsDirection{}, ScsDirection{}, SpinMagnitude(402)), std::out_of_range);
}

TEST(ScsAlgebra, HomomorphismMatchesDenseExponential)
{
    // The rotation of Bloch vectors must agree with the dense displacement
    // exponential acting on spin states, for any rotor and target.
    std::mt19937_64 rng(19);
    for (int two_s : {1, 3, 8}) {
        for (int i = 0; i < 30; ++i) {
            const auto report = scs_cross_check(random_direction(rng), SpinMagnitude(two_s), random_direction(rng));
            EXPECT_LT(report.composition_deviation, 1e-10);
            EXPECT_LT(report.coefficient_deviation, 1e-10);
        }
    }
}
