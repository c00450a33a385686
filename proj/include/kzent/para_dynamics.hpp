#pragma once

// Constant-field ("paramagnetic") evolution: every ring spin starts in the
// reference state and is displaced by +-l(t) depending on the qubit branch.

#include "kzent/scs_algebra.hpp"

namespace kzent {

/// Bounds of the weak-coupling regime, g <= max_g and g <= max_g_over_h * h.
struct WeakCouplingGuard {
    double max_g = 0.25;
    double max_g_over_h = 0.25;

    /// Throws ConfigError naming the violated bound.
    void check(double g, double h) const;
};

struct ParaConfig {
    int N = 0;
    double g = 0.0;
    double h = 0.0;

    void validate(const WeakCouplingGuard& guard = {}) const;
};

/// (g/h)(1 - e^{-i t h}). Throws DomainError when h == 0.
complex l_of_t(const ParaConfig& cfg, double t);

/// Direction of Omega = branch * l(t). branch must be +1 or -1.
ScsDirection branch_direction_para(const ParaConfig& cfg, int branch, double t);

/// max{0, cos^N(Theta/2)} with Theta the angle between the two branch
/// directions.
double concurrence_para(const ParaConfig& cfg, double t);

/// Closed form shared with the frozen-domain setting: n_spin spin-1/2 factors
/// at displacement +-l, giving max{0, cos^n_spin(2|l|)}.
double concurrence_from_displacement(int n_spin, complex l);

}  // namespace kzent
