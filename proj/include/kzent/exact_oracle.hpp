#pragma once

// Numerically exact small-ring simulation of the qubit pair coupled to the
// Ising ring, and dense spin-S displacement operators. Used to validate the
// factorized closed forms; not meant for large N.
//
// Basis convention: index = q * 2^N + r, where q in {00, 01, 10, 11} labels the
// qubit pair (|0> has sigma^z = +1) and bit i of r is set when ring spin i is
// down. The coupling term commutes with sigma^z_A and sigma^z_B, so each qubit
// sector q evolves under its own ring Hamiltonian
//   H_q = -sum s^x_i s^x_{i+1} - h(t) sum s^z_i - 2 g pi_q sum s^x_i.

#include "kzent/concurrence.hpp"
#include "kzent/kzm_scaling.hpp"
#include "kzent/scs_algebra.hpp"

#include <Eigen/Dense>

#include <optional>

namespace kzent {

inline constexpr int kMaxExactRing = 12;

using DenseState = Eigen::VectorXcd;

struct HamiltonianSpec {
    int N = 0;
    double g = 0.0;
    double h = 0.0;                          ///< constant field, used when no schedule is set
    std::optional<QuenchSchedule> schedule;  ///< time-dependent field h0 - v t

    [[nodiscard]] double field(double t) const;
    [[nodiscard]] bool time_dependent() const { return schedule.has_value() && schedule->v != 0.0; }
    /// Throws std::invalid_argument when N is outside [2, kMaxExactRing].
    void validate() const;
};

/// Ring Hamiltonian of qubit sector with branch value pi in {-1, 0, +1}.
Eigen::MatrixXd build_sector_hamiltonian(const HamiltonianSpec& spec, int branch, double t);

/// Full 4 * 2^N Hamiltonian (real symmetric). Memory grows as 16^(N+1); meant
/// for tests at small N.
Eigen::MatrixXd build_hamiltonian(const HamiltonianSpec& spec, double t);

struct RingGroundState {
    Eigen::VectorXd vector;
    double energy = 0.0;
    double gap = 0.0;
    bool degenerate = false;  ///< quasi-degenerate doublet; vector is its spin-flip symmetric member
};

/// Dense ground state of the ring alone (g ignored) at field spec.field(t).
RingGroundState ground_state_ring(const HamiltonianSpec& spec, double t = 0.0);

/// |device> (x) |ring>.
DenseState product_state(const DeviceState& device, const Eigen::VectorXcd& ring);

/// Exact propagator for a constant field, diagonalizing each sector once.
class SectorPropagator {
public:
    explicit SectorPropagator(const HamiltonianSpec& spec, double t_field = 0.0);
    /// exp(-i t H) state.
    [[nodiscard]] DenseState evolve(const DenseState& state, double t) const;

private:
    int n_;
    Eigen::MatrixXd vectors_[3];  // branch -1, 0, +1
    Eigen::VectorXd values_[3];
};

struct PropagationOptions {
    double tolerance = 1e-8;  ///< step-doubling bound on the final-state distance
    int max_halvings = 12;
};

/// Evolves `state` from t_start to t_start + t_span. A constant field is
/// exponentiated exactly; a quench uses midpoint-field steps exp(-i dt H(t_mid))
/// with step doubling: dt is halved until the dt and dt/2 results differ by
/// less than the tolerance. Throws ConvergenceError if that never happens.
DenseState propagate(const DenseState& state, const HamiltonianSpec& spec, double t_start, double t_span,
                     double dt, const PropagationOptions& opts = {});

/// Partial trace over the ring.
Mat4c reduced_device_state(const DenseState& state);

/// Purity tr(rho^2).
double purity(const Mat4c& rho);

// -- Dense spin-S operators in the Dicke basis |S, S - k>, k = 0..2S --------

Eigen::MatrixXcd spin_plus(SpinMagnitude s);
Eigen::MatrixXcd spin_z(SpinMagnitude s);

/// exp(Omega S^- - Omega* S^+).
Eigen::MatrixXcd displacement_matrix(complex omega, SpinMagnitude s);

/// Displacement of the reference state |S, S> to direction d.
Eigen::VectorXcd coherent_state(const ScsDirection& d, SpinMagnitude s);

/// <S>/S of a normalized Dicke-basis state.
Vec3 spin_bloch_vector(const Eigen::VectorXcd& psi, SpinMagnitude s);

inline constexpr int kMaxCrossCheckTwoS = 20;  // S <= 10

struct ScsCrossCheckReport {
    double coefficient_deviation = 0.0;   ///< D(rotor)|S,S> vs g_M(rotor)
    double bloch_deviation = 0.0;         ///< <S>/S of that state vs n(rotor)
    double composition_deviation = 0.0;   ///< D(rotor)|target> Bloch vector vs R_rotor n(target)
    double overlap_deviation = 0.0;       ///< |<target|rotor>| vs ((1 + n.n')/2)^S

    [[nodiscard]] double max() const;
};

/// Compares the dense displacement exponential against the closed-form
/// coherent-state algebra. Throws std::out_of_range for S > 10.
ScsCrossCheckReport scs_cross_check(const ScsDirection& rotor, SpinMagnitude s,
                                    const ScsDirection& target = ScsDirection{});

}  // namespace kzent
