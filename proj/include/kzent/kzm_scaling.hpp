#pragma once

// Critical scaling of the transverse-field Ising ring under a linear field
// quench: correlation length, reaction time, freeze-out time and the
// frozen-domain partition of the ring.

namespace kzent {

/// Linear quench h(t) = h0 - v t together with the critical exponents and
/// non-universal scales of the ring. Defaults are the Ising values
/// (nu = z = 1, tau0 = 1/2, xi0 = 1, hc = 1).
struct QuenchSchedule {
    double h0 = 1.0;
    double v = 0.0;
    double xi0 = 1.0;
    double tau0 = 0.5;
    double nu = 1.0;
    double z = 1.0;
    double hc = 1.0;

    /// Throws ConfigError unless v >= 0 and nu, z, tau0, xi0 > 0.
    void validate() const;
    /// validate() plus the disordered-phase start h0 >= hc and v > 0.
    void validate_for_quench() const;
};

double field_at(const QuenchSchedule& schedule, double t);
double epsilon_at(const QuenchSchedule& schedule, double t);

/// xi0 / |eps|^nu. Throws DivergenceError at eps == 0.
double correlation_length(const QuenchSchedule& schedule, double eps);

/// tau0 / |eps|^(nu z). Throws DivergenceError at eps == 0.
double reaction_time(const QuenchSchedule& schedule, double eps);

/// Time at which the field reaches hc. Requires v > 0.
double critical_time(const QuenchSchedule& schedule);

/// Distance from criticality at the freeze-out instant, solving
/// eps / v = tau0 / eps^(nu z). Equals sqrt(v/2) for the Ising defaults.
double freeze_out_epsilon(const QuenchSchedule& schedule);

/// Instant t_bar at which the time left before the critical point equals the
/// reaction time. For the Ising defaults this is (h0-1)/v - sqrt(1/(2v)).
/// May be negative. Throws DomainError when v == 0 (no freeze-out).
double freeze_out_time(const QuenchSchedule& schedule);

struct DomainPartition {
    int xi_d = 0;     ///< spins per domain
    int n_d = 0;      ///< number of domains
    int two_s_d = 0;  ///< twice the collective spin, equal to xi_d
    double j_eff = 0.0;
    double raw_xi = 0.0;  ///< correlation length at freeze-out before rounding

    [[nodiscard]] double spin() const { return 0.5 * two_s_d; }
};

/// Frozen correlation length rounded to the nearest divisor of N (ties go to
/// the larger divisor). Throws PartitionError when no divisor lies within
/// +-50% of the raw value.
DomainPartition domain_partition(int ring_size, const QuenchSchedule& schedule);

}  // namespace kzent
