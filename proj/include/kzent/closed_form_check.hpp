#pragma once

// Independent evaluation of the concurrence from explicit branch states:
// Dicke-basis vectors with full complex phases -> ring overlaps -> reduced
// device state -> Wootters. Compared point by point with the closed forms.

#include "kzent/concurrence.hpp"
#include "kzent/dia_dynamics.hpp"
#include "kzent/para_dynamics.hpp"

#include <vector>

namespace kzent {

inline constexpr int kMaxDenseOracleTwoS = 64;

/// <R^-(t)|R^+(t)> for the constant-field ring: N spin-1/2 factors
/// e^{i t h s^z} D(+-l)|up>.
complex branch_overlap_exact_para(const ParaConfig& cfg, double t);

/// <R^-(t)|R^+(t)> for the frozen domains: product over domains of the
/// Dicke-basis overlaps of e^{i t h_t S^z} D(+-f) D(Omega_d)|S, S>.
/// Throws std::out_of_range when 2 S_d exceeds kMaxDenseOracleTwoS.
complex branch_overlap_exact_dia(const DiaConfig& cfg, double t);

/// Wootters concurrence of the Bell pair dressed by the given overlap.
double oracle_concurrence(complex minus_plus);

struct ClosedFormReport {
    double max_deviation = 0.0;
    double t_at_max = 0.0;
    std::size_t points = 0;
};

/// max |closed form - oracle| over the grid.
ClosedFormReport closed_form_check(const ParaConfig& cfg, const std::vector<double>& grid);
ClosedFormReport closed_form_check(const DiaConfig& cfg, const std::vector<double>& grid);

/// max |closed form - exact| for the constant-field setting, the exact side
/// being the full small-ring dynamics started from the Bell pair times the
/// ring ground state at h. Measures the weak-coupling truncation error.
/// Requires N <= kMaxExactRing.
ClosedFormReport exact_vs_closed_form(const ParaConfig& cfg, const std::vector<double>& grid);

}  // namespace kzent
