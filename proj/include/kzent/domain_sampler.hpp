#pragma once

// Initial directions of the frozen domains, constrained so that the ring's
// mean z-polarization matches the equilibrium magnetization, plus the exact
// diagonalization used to obtain that magnetization.

#include "kzent/scs_algebra.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace kzent {

/// Seeded generator for one sampling stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniform variates are built from the top 53 bits of each draw
/// rather than through std::uniform_real_distribution, so sequences are
/// identical across standard libraries. Realization r of a run with seed s uses
/// the engine seeded with splitmix64(s + (r + 1) * 0x9E3779B97F4A7C15).
class SamplerRng {
public:
    explicit SamplerRng(std::uint64_t seed, std::uint64_t realization = 0);

    /// Uniform on [0, 1).
    double uniform();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);
    bool coin();

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct DomainEnsemble {
    std::vector<ScsDirection> directions;
    std::uint64_t seed = 0;
    std::uint64_t realization = 0;
    double m0z_target = 0.0;  ///< per-spin units, in [-1/2, 1/2]
    double mdz = 0.0;
    bool clamped = false;  ///< the closing domain could not hit the target exactly
    std::string warning;

    [[nodiscard]] std::size_t size() const { return directions.size(); }
};

/// Ground-state magnetization per spin, (1/N) sum <s^z_i>, of
/// -sum s^x_i s^x_{i+1} - h sum s^z_i on a periodic ring of n_ref <= 16
/// spin-1/2 sites, by Lanczos iteration in the sector of the fully polarized
/// state. At h = 0 this sector selects the symmetric combination of the two
/// Ising ground states. Throws ConvergenceError if Lanczos stalls.
double equilibrium_mz(double h, int n_ref);

/// Sequential constrained sampling of n_d domain directions.
///
/// Cosines are drawn uniformly on [c_k - w_k, c_k + w_k], starting from
/// c_0 = 2 m0z, w_0 = |2 mdz - 2 m0z|. After each draw the centre moves to the
/// mean still required of the remaining domains and the half-width becomes
/// min(|2 mdz - c_k|, |c_0 - w_0 - c_k|). The last cosine closes the mean
/// exactly; if that needs a value outside [-1, 1] it is clamped and the
/// ensemble is flagged. Each phi is 0 or pi with equal probability.
DomainEnsemble sample_initial_directions(int n_d, double m0z, double mdz, std::uint64_t seed,
                                         std::uint64_t realization = 0);

/// Mean of cos(theta)/2 over the ensemble.
double ensemble_mean_mz(const DomainEnsemble& e);

nlohmann::json to_json(const DomainEnsemble& e);
DomainEnsemble ensemble_from_json(const nlohmann::json& j);

}  // namespace kzent
