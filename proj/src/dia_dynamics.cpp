#include "kzent/dia_dynamics.hpp"

#include "kzent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kzent {

void DiaConfig::validate(double span, const WeakCouplingGuard& guard) const
{
    schedule.validate_for_quench();
    if (N < 2) throw ConfigError("ring size N must be >= 2");
    if (span < 0.0) throw ConfigError("trace span must be >= 0");

    const double t_bar = freeze_out_time(schedule);
    if (t0 < t_bar - 1e-9) {
        std::ostringstream os;
        os << "t0 = " << t0 << " precedes the freeze-out time t_bar = " << t_bar
           << "; the evolution must start inside the diabatic window";
        throw ConfigError(os.str());
    }
    if (schedule.v * span > kMaxQuenchSpan) {
        std::ostringstream os;
        os << "v * span = " << schedule.v * span << " exceeds " << kMaxQuenchSpan
           << "; the frozen-field propagator is not valid over this trace";
        throw ConfigError(os.str());
    }
    // h(t) decreases monotonically, so the end of the trace is the binding point.
    const double h_end = field_after(span);
    if (h_end < schedule.hc) {
        std::ostringstream os;
        os << "field drops to " << h_end << " below hc = " << schedule.hc << " within the trace";
        throw ConfigError(os.str());
    }
    guard.check(g, h_end);

    if (partition.xi_d * partition.n_d != N) throw ConfigError("domain partition does not tile the ring");
    if (static_cast<int>(ensemble.size()) != partition.n_d)
        throw ConfigError("ensemble size differs from the number of domains");
}

complex f_of_t(double g, double h_t, double t)
{
    if (!(h_t > 0.0)) throw DomainError("f(t) needs a positive field");
    return (g / h_t) * (std::polar(1.0, t * h_t) - 1.0);
}

ScsDirection branch_displacement_dia(double g, double h_t, int branch, double t)
{
    if (branch != 1 && branch != -1) throw std::invalid_argument("branch must be +1 or -1");
    return ScsDirection::from_omega(static_cast<double>(branch) * f_of_t(g, h_t, t));
}

ScsDirection evolve_domain(const ScsDirection& initial, const ScsDirection& rotor)
{
    return ScsDirection::from_vector(apply_displacement(rotor, bloch_vector(initial)));
}

namespace {

// prod_d (1 + cos Theta_d)/2, i.e. the product of squared half-angle cosines.
double product_cos_half_squared(const DiaConfig& cfg, double t)
{
    const double h_t = cfg.field_after(t);
    const ScsDirection plus = branch_displacement_dia(cfg.g, h_t, +1, t);
    const ScsDirection minus = branch_displacement_dia(cfg.g, h_t, -1, t);
    const Mat3 r_plus = rotation_matrix(plus);
    const Mat3 r_minus = rotation_matrix(minus);

    double prod = 1.0;
    for (const auto& d : cfg.ensemble.directions) {
        const Vec3 n0 = bloch_vector(d);
        const double cos_theta = (r_plus * n0).dot(r_minus * n0);
        prod *= std::clamp(0.5 * (1.0 + cos_theta), 0.0, 1.0);
    }
    return prod;
}

}  // namespace

double branch_overlap_dia(const DiaConfig& cfg, double t)
{
    // cos^{2S}(Theta/2) = ((1 + cos Theta)/2)^S.
    return std::pow(product_cos_half_squared(cfg, t), cfg.partition.spin());
}

double concurrence_dia(const DiaConfig& cfg, double t)
{
    const double prod_cos_half = std::sqrt(product_cos_half_squared(cfg, t));
    return std::max(0.0, std::pow(prod_cos_half, cfg.partition.two_s_d));
}

}  // namespace kzent
