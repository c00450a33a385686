#include "kzent/domain_sampler.hpp"
#include "kzent/errors.hpp"
#include "kzent/exact_oracle.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numbers>

using namespace kzent;

namespace {

constexpr double kPi = std::numbers::pi;

// Ground-state magnetization per spin of the free-fermion solution on a finite
// periodic ring, even-parity sector: antiperiodic momenta k = (2n - 1) pi / N.
// The ring here is -J sum sx sx - Gamma sum sz with J = 1/4, Gamma = h/2 in
// Pauli units.
double free_fermion_mz(double h, int n)
{
    const double gamma = h / 2.0;
    const double j = 0.25;
    double sum = 0.0;
    for (int m = 1; m <= n; ++m) {
        const double k = (2.0 * m - 1.0) * kPi / n;
        sum += (gamma + j * std::cos(k)) / std::sqrt(gamma * gamma + j * j + 2.0 * gamma * j * std::cos(k));
    }
    return 0.5 * sum / n;
}

double dense_mz(double h, int n)
{
    HamiltonianSpec spec;
    spec.N = n;
    spec.h = h;
    const Eigen::VectorXd v = ground_state_ring(spec).vector;
    double sz = 0.0;
    for (Eigen::Index b = 0; b < v.size(); ++b)
        sz += v(b) * v(b) * (0.5 * n - std::popcount(static_cast<unsigned>(b)));
    return sz / n;
}

}  // namespace

TEST(SamplerRng, SplitMixReferenceValue)
{
    EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(SamplerRng, StreamsAreReproducibleAndDistinct)
{
    SamplerRng a(42), b(42), c(42, 1), d(43);
    int same_c = 0, same_d = 0;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        EXPECT_EQ(x, b.uniform());
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
        same_c += (x == c.uniform());
        same_d += (x == d.uniform());
    }
    EXPECT_EQ(same_c, 0);
    EXPECT_EQ(same_d, 0);
}

TEST(EquilibriumMagnetization, Limits)
{
    EXPECT_GT(equilibrium_mz(50.0, 12), 0.499);
    EXPECT_NEAR(equilibrium_mz(0.0, 12), 0.0, 1e-12);
    EXPECT_THROW(equilibrium_mz(-0.1, 8), std::invalid_argument);
    EXPECT_THROW(equilibrium_mz(1.0, 17), std::invalid_argument);
    EXPECT_THROW(equilibrium_mz(1.0, 1), std::invalid_argument);
}

TEST(EquilibriumMagnetization, MatchesFreeFermionSolution)
{
    for (int n : {4, 6, 10, 14}) {
        for (double h : {0.1, 0.3, 0.5, 0.52, 0.8, 1.01, 2.0}) {
            EXPECT_NEAR(equilibrium_mz(h, n), free_fermion_mz(h, n), 1e-10) << "n = " << n << ", h = " << h;
        }
    }
}

TEST(EquilibriumMagnetization, MatchesDenseDiagonalization)
{
    for (double h : {0.05, 0.4, 0.505, 1.01, 3.0}) EXPECT_NEAR(equilibrium_mz(h, 10), dense_mz(h, 10), 1e-10);
}

TEST(EquilibriumMagnetization, RegressionValue)
{
    EXPECT_NEAR(equilibrium_mz(1.01, 14), 0.467788167036015, 1e-12);
    EXPECT_NEAR(equilibrium_mz(0.505, 14), 0.323950386732282, 1e-12);
}

TEST(EquilibriumMagnetization, MonotoneInField)
{
    double prev = -1.0;
    for (double h = 0.0; h <= 3.0; h += 0.25) {
        const double m = equilibrium_mz(h, 10);
        EXPECT_GT(m, prev);
        EXPECT_LE(m, 0.5);
        prev = m;
    }
}

TEST(DomainSampler, SingleDomainIsDeterministic)
{
    const DomainEnsemble e = sample_initial_directions(1, 0.31, 0.2, 99);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_NEAR(std::cos(e.directions[0].theta()), 0.62, 1e-15);
    EXPECT_FALSE(e.clamped);
}

TEST(DomainSampler, ZeroWidthGivesEqualCosines)
{
    const DomainEnsemble e = sample_initial_directions(2, 0.3, 0.3, 5);
    for (const auto& d : e.directions) EXPECT_NEAR(std::cos(d.theta()), 0.6, 1e-15);
}

TEST(DomainSampler, MeanHitsTarget)
{
    const DomainEnsemble e = sample_initial_directions(5, 0.45, 0.40, 42);
    double sum = 0.0;
    for (const auto& d : e.directions) sum += std::cos(d.theta());
    EXPECT_NEAR(sum / 5.0, 0.90, 1e-12);
    EXPECT_NEAR(ensemble_mean_mz(e), 0.45, 1e-12);
    EXPECT_FALSE(e.clamped);
}

TEST(DomainSampler, ContractOverManySeeds)
{
    for (int n_d : {2, 5, 12}) {
        for (std::uint64_t seed = 0; seed < 300; ++seed) {
            const double m0 = 0.25 + 0.2 * SamplerRng(seed, 7).uniform();
            const double md = 0.25 + 0.2 * SamplerRng(seed, 8).uniform();
            const DomainEnsemble e = sample_initial_directions(n_d, m0, md, seed);
            ASSERT_EQ(e.size(), static_cast<std::size_t>(n_d));
            for (const auto& d : e.directions) {
                EXPECT_TRUE(d.phi() == 0.0 || d.phi() == kPi);
                EXPECT_GE(std::cos(d.theta()), -1.0);
                EXPECT_LE(std::cos(d.theta()), 1.0);
            }
            if (!e.clamped) EXPECT_NEAR(ensemble_mean_mz(e), m0, 1e-9);
        }
    }
}

TEST(DomainSampler, ClampIsReported)
{
    const DomainEnsemble e = sample_initial_directions(2, 0.5, 0.0, 3);
    EXPECT_TRUE(e.clamped);
    EXPECT_FALSE(e.warning.empty());
    for (const auto& d : e.directions) EXPECT_LE(std::abs(std::cos(d.theta())), 1.0);
}

TEST(DomainSampler, Determinism)
{
    const auto a = to_json(sample_initial_directions(12, 0.33, 0.31, 77, 3)).dump();
    const auto b = to_json(sample_initial_directions(12, 0.33, 0.31, 77, 3)).dump();
    const auto c = to_json(sample_initial_directions(12, 0.33, 0.31, 77, 4)).dump();
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST(DomainSampler, JsonRoundTrip)
{
    const DomainEnsemble e = sample_initial_directions(5, 0.4, 0.35, 11, 2);
    const DomainEnsemble back = ensemble_from_json(nlohmann::json::parse(to_json(e).dump()));
    ASSERT_EQ(back.size(), e.size());
    EXPECT_EQ(back.seed, e.seed);
    EXPECT_EQ(back.realization, e.realization);
    EXPECT_EQ(back.m0z_target, e.m0z_target);
    for (std::size_t i = 0; i < e.size(); ++i) {
        EXPECT_EQ(back.directions[i].theta(), e.directions[i].theta());
        EXPECT_EQ(back.directions[i].phi(), e.directions[i].phi());
    }
}

TEST(DomainSampler, AzimuthsAreFair)
{
    long long pi_count = 0, total = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        for (const auto& d : sample_initial_directions(12, 0.33, 0.31, seed).directions) {
            pi_count += (d.phi() == kPi);
            ++total;
        }
    }
    const double sigma = std::sqrt(total * 0.25);
    EXPECT_LT(std::abs(pi_count - total / 2.0), 3.0 * sigma);
}

TEST(DomainSampler, RejectsBadInput)
{
    EXPECT_THROW(sample_initial_directions(0, 0.3, 0.3, 1), std::invalid_argument);
    EXPECT_THROW(sample_initial_directions(3, 0.6, 0.3, 1), std::invalid_argument);
    EXPECT_THROW(ensemble_mean_mz(DomainEnsemble{}), std::invalid_argument);
}
