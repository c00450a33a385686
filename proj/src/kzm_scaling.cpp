#include "kzent/kzm_scaling.hpp"

#include "kzent/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace kzent {

void QuenchSchedule::validate() const
{
    if (!(v >= 0.0)) throw ConfigError("quench velocity v must be >= 0, got " + std::to_string(v));
    if (!(nu > 0.0)) throw ConfigError("critical exponent nu must be > 0");
    if (!(z > 0.0)) throw ConfigError("dynamical exponent z must be > 0");
    if (!(tau0 > 0.0)) throw ConfigError("reaction-time scale tau0 must be > 0");
    if (!(xi0 > 0.0)) throw ConfigError("correlation-length scale xi0 must be > 0");
}

void QuenchSchedule::validate_for_quench() const
{
    validate();
    if (!(v > 0.0)) throw ConfigError("a diabatic scenario needs a quench velocity v > 0");
    if (h0 < hc) {
        throw ConfigError("h0 = " + std::to_string(h0) + " is below the critical field hc = " +
                          std::to_string(hc) + "; the quench must start in the disordered phase");
    }
}

double field_at(const QuenchSchedule& schedule, double t) { return schedule.h0 - schedule.v * t; }

double epsilon_at(const QuenchSchedule& schedule, double t) { return field_at(schedule, t) - schedule.hc; }

double correlation_length(const QuenchSchedule& schedule, double eps)
{
    if (eps == 0.0) throw DivergenceError("correlation length diverges at the critical point");
    return schedule.xi0 / std::pow(std::abs(eps), schedule.nu);
}

double reaction_time(const QuenchSchedule& schedule, double eps)
{
    if (eps == 0.0) throw DivergenceError("reaction time diverges at the critical point");
    return schedule.tau0 / std::pow(std::abs(eps), schedule.nu * schedule.z);
}

double critical_time(const QuenchSchedule& schedule)
{
    if (!(schedule.v > 0.0)) throw DomainError("constant field: the critical point is never reached");
    return (schedule.h0 - schedule.hc) / schedule.v;
}

double freeze_out_epsilon(const QuenchSchedule& schedule)
{
    if (!(schedule.v > 0.0)) throw DomainError("constant field: no freeze-out");
    return std::pow(schedule.tau0 * schedule.v, 1.0 / (1.0 + schedule.nu * schedule.z));
}

double freeze_out_time(const QuenchSchedule& schedule)
{
    if (!(schedule.v > 0.0)) throw DomainError("constant field: no freeze-out");
    return critical_time(schedule) - freeze_out_epsilon(schedule) / schedule.v;
}

DomainPartition domain_partition(int ring_size, const QuenchSchedule& schedule)
{
    if (ring_size < 2) throw PartitionError("ring size must be >= 2");
    if (!(schedule.v > 0.0)) throw PartitionError("domain partition requires a quench (v > 0)");

    // The control parameter at t_bar is the freeze-out epsilon by construction.
    const double raw = correlation_length(schedule, freeze_out_epsilon(schedule));

    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int d = 1; d <= ring_size; ++d) {
        if (ring_size % d != 0) continue;
        const double dist = std::abs(d - raw);
        if (dist <= best_dist) {  // ascending scan: ties resolve to the larger divisor
            best = d;
            best_dist = dist;
        }
    }
    if (best == 0 || best_dist > 0.5 * raw) {
        throw PartitionError("no divisor of N = " + std::to_string(ring_size) +
                             " within 50% of the frozen correlation length " + std::to_string(raw));
    }

    DomainPartition p;
    p.xi_d = best;
    p.n_d = ring_size / best;
    p.two_s_d = best;
    p.j_eff = 2.0 / (static_cast<double>(best) * best);
    p.raw_xi = raw;
    return p;
}

}  // namespace kzent
