#include "kzent/domain_sampler.hpp"

#include "kzent/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kzent {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

SamplerRng::SamplerRng(std::uint64_t seed, std::uint64_t realization)
    : engine_(splitmix64(seed + (realization + 1) * 0x9E3779B97F4A7C15ULL))
{
}

double SamplerRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SamplerRng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

bool SamplerRng::coin() { return (engine_() >> 63) != 0; }

namespace {

// H|b> for the ring Hamiltonian in the s^z basis; bit i set means spin i down.
void apply_ring_hamiltonian(const Eigen::VectorXd& x, Eigen::VectorXd& y, int n, double h)
{
    const auto dim = static_cast<std::uint32_t>(x.size());
    for (std::uint32_t b = 0; b < dim; ++b) {
        const double sz_total = 0.5 * n - std::popcount(b);
        y(b) = -h * sz_total * x(b);
    }
    for (std::uint32_t b = 0; b < dim; ++b) {
        const double xb = x(b);
        if (xb == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const std::uint32_t mask = (1u << i) | (1u << ((i + 1) % n));
            y(b ^ mask) -= 0.25 * xb;
        }
    }
}

}  // namespace

double equilibrium_mz(double h, int n_ref)
{
    if (h < 0.0) throw std::invalid_argument("equilibrium_mz needs h >= 0");
    if (n_ref < 2 || n_ref > 16) throw std::invalid_argument("equilibrium_mz needs 2 <= n_ref <= 16");

    const Eigen::Index dim = Eigen::Index{1} << n_ref;
    constexpr int kMaxIter = 300;
    constexpr double kTol = 1e-12;

    std::vector<Eigen::VectorXd> basis;
    std::vector<double> alpha;
    std::vector<double> beta;

    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v(0) = 1.0;  // fully polarized along +z
    Eigen::VectorXd w(dim);

    Eigen::VectorXd ground;
    bool converged = false;
    for (int it = 0; it < kMaxIter; ++it) {
        basis.push_back(v);
        apply_ring_hamiltonian(v, w, n_ref, h);
        const double a = v.dot(w);
        alpha.push_back(a);
        for (const auto& q : basis) w -= q.dot(w) * q;  // full reorthogonalization
        const double b = w.norm();

        const auto m = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const Eigen::VectorXd y = es.eigenvectors().col(0);
        const double residual = b * std::abs(y(m - 1));

        if (residual < kTol || b < kTol) {
            ground = Eigen::VectorXd::Zero(dim);
            for (Eigen::Index i = 0; i < m; ++i) ground += y(i) * basis[i];
            ground.normalize();
            converged = true;
            break;
        }
        beta.push_back(b);
        v = w / b;
    }
    if (!converged) {
        std::ostringstream os;
        os << "Lanczos did not converge for h = " << h << ", n_ref = " << n_ref;
        throw ConvergenceError(os.str());
    }

    double sz = 0.0;
    for (Eigen::Index b = 0; b < dim; ++b)
        sz += ground(b) * ground(b) * (0.5 * n_ref - std::popcount(static_cast<std::uint32_t>(b)));
    return sz / n_ref;
}

DomainEnsemble sample_initial_directions(int n_d, double m0z, double mdz, std::uint64_t seed,
                                         std::uint64_t realization)
{
    if (n_d < 1) throw std::invalid_argument("need at least one domain");
    if (std::abs(m0z) > 0.5 || std::abs(mdz) > 0.5)
        throw std::invalid_argument("magnetizations per spin must lie in [-1/2, 1/2]");

    SamplerRng rng(seed, realization);
    DomainEnsemble e;
    e.seed = seed;
    e.realization = realization;
    e.m0z_target = m0z;
    e.mdz = mdz;

    const double c0 = 2.0 * m0z;
    const double cd = 2.0 * mdz;
    const double w0 = std::abs(cd - c0);

    std::vector<double> cosines;
    cosines.reserve(n_d);
    double centre = c0;
    double width = w0;
    double drawn_sum = 0.0;
    for (int k = 0; k + 1 < n_d; ++k) {
        const double lo = std::max(-1.0, centre - width);
        const double hi = std::min(1.0, centre + width);
        const double x = (hi > lo) ? rng.uniform(lo, hi) : std::clamp(centre, -1.0, 1.0);
        cosines.push_back(x);
        drawn_sum += x;
        const int remaining = n_d - k - 1;
        centre = (n_d * c0 - drawn_sum) / remaining;
        width = std::min(std::abs(cd - centre), std::abs(c0 - w0 - centre));
    }
    double last = n_d * c0 - drawn_sum;
    if (last > 1.0 || last < -1.0) {
        std::ostringstream os;
        os << "closing domain needs cos(theta) = " << last << "; clamped, ensemble mean misses the target";
        e.clamped = true;
        e.warning = os.str();
        last = std::clamp(last, -1.0, 1.0);
    }
    cosines.push_back(last);

    e.directions.reserve(n_d);
    for (double c : cosines) {
        const double phi = rng.coin() ? std::numbers::pi : 0.0;
        e.directions.emplace_back(std::acos(c), phi);
    }
    return e;
}

double ensemble_mean_mz(const DomainEnsemble& e)
{
    if (e.directions.empty()) throw std::invalid_argument("empty ensemble");
    double sum = 0.0;
    for (const auto& d : e.directions) sum += std::cos(d.theta());
    return 0.5 * sum / static_cast<double>(e.directions.size());
}

nlohmann::json to_json(const DomainEnsemble& e)
{
    nlohmann::json dirs = nlohmann::json::array();
    for (const auto& d : e.directions) dirs.push_back({{"theta", d.theta()}, {"phi", d.phi()}});
    return {{"seed", e.seed},
            {"realization", e.realization},
            {"m0z_target", e.m0z_target},
            {"mdz", e.mdz},
            {"clamped", e.clamped},
            {"directions", dirs}};
}

DomainEnsemble ensemble_from_json(const nlohmann::json& j)
{
    DomainEnsemble e;
    e.seed = j.at("seed").get<std::uint64_t>();
    e.realization = j.value("realization", std::uint64_t{0});
    e.m0z_target = j.at("m0z_target").get<double>();
    e.mdz = j.value("mdz", e.m0z_target);
    e.clamped = j.value("clamped", false);
    for (const auto& d : j.at("directions")) e.directions.emplace_back(d.at("theta").get<double>(), d.at("phi").get<double>());
    return e;
}

}  // namespace kzent
