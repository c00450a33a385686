#pragma once

// Frozen-domain ("diabatic") evolution: n_d independent spin-S_d domains,
// each displaced by +-f(t) on the quench clock, with the Ising coupling
// between domains dropped.

#include "kzent/domain_sampler.hpp"
#include "kzent/kzm_scaling.hpp"
#include "kzent/para_dynamics.hpp"
#include "kzent/scs_algebra.hpp"

namespace kzent {

inline constexpr double kMaxQuenchSpan = 0.05;  ///< bound on v * (t - t0)

struct DiaConfig {
    int N = 0;
    double g = 0.0;
    QuenchSchedule schedule;
    double t0 = 0.0;  ///< start of the evolution on the absolute quench clock
    DomainPartition partition;
    DomainEnsemble ensemble;

    /// Field seen by the qubits after `elapsed` time: h(t0 + elapsed).
    [[nodiscard]] double field_after(double elapsed) const { return field_at(schedule, t0 + elapsed); }

    /// Checks t0 >= t_bar, h >= hc and the weak-coupling guard over
    /// [t0, t0 + span], v * span <= kMaxQuenchSpan, and that the ensemble
    /// matches the partition. Throws ConfigError.
    void validate(double span, const WeakCouplingGuard& guard = {}) const;
};

/// (g/h_t)(e^{i t h_t} - 1) for elapsed time t. Throws DomainError if h_t <= 0.
complex f_of_t(double g, double h_t, double t);

/// Direction of Omega = branch * f(t).
ScsDirection branch_displacement_dia(double g, double h_t, int branch, double t);

/// Direction of R_rotor n(initial).
ScsDirection evolve_domain(const ScsDirection& initial, const ScsDirection& rotor);

/// Modulus of <R^-(t)|R^+(t)>: the product over domains of
/// cos^{2 S_d}(Theta_d/2), Theta_d the angle between the two branch-evolved
/// directions of domain d. h_t is frozen at h(t0 + t) for the sample.
double branch_overlap_dia(const DiaConfig& cfg, double t);

/// max{0, [prod_d cos(Theta_d/2)]^{2 S_d}}.
double concurrence_dia(const DiaConfig& cfg, double t);

}  // namespace kzent
