#include "kzent/para_dynamics.hpp"

#include "kzent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kzent {

void WeakCouplingGuard::check(double g, double h) const
{
    if (!(g >= 0.0)) throw ConfigError("coupling g must be >= 0");
    if (g > max_g) {
        std::ostringstream os;
        os << "weak coupling violated: g = " << g << " exceeds max_g = " << max_g;
        throw ConfigError(os.str());
    }
    if (g > max_g_over_h * h) {
        std::ostringstream os;
        os << "weak coupling violated: g = " << g << " exceeds " << max_g_over_h << " * h = " << max_g_over_h * h;
        throw ConfigError(os.str());
    }
}

void ParaConfig::validate(const WeakCouplingGuard& guard) const
{
    if (N < 1) throw ConfigError("ring size N must be >= 1");
    if (!(h > 0.0)) throw ConfigError("paramagnetic field h must be > 0");
    guard.check(g, h);
}

complex l_of_t(const ParaConfig& cfg, double t)
{
    if (cfg.h == 0.0) throw DomainError("l(t) is undefined at zero field");
    return (cfg.g / cfg.h) * (1.0 - std::polar(1.0, -t * cfg.h));
}

ScsDirection branch_direction_para(const ParaConfig& cfg, int branch, double t)
{
    if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
    return ScsDirection::from_omega(static_cast<double>(branch) * l_of_t(cfg, t));
}

double concurrence_para(const ParaConfig& cfg, double t)
{
    const Vec3 plus = bloch_vector(branch_direction_para(cfg, +1, t));
    const Vec3 minus = bloch_vector(branch_direction_para(cfg, -1, t));
    const double cos_half = std::sqrt(std::clamp(0.5 * (1.0 + plus.dot(minus)), 0.0, 1.0));
    return std::max(0.0, std::pow(cos_half, cfg.N));
}

double concurrence_from_displacement(int n_spin, complex l)
{
    return std::max(0.0, std::pow(std::cos(2.0 * std::abs(l)), n_spin));
}

}  // namespace kzent
