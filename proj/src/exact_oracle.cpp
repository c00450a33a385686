#include "kzent/exact_oracle.hpp"

#include "kzent/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace kzent {

double HamiltonianSpec::field(double t) const { return schedule ? field_at(*schedule, t) : h; }

void HamiltonianSpec::validate() const
{
    if (N < 2 || N > kMaxExactRing) {
        throw std::invalid_argument("exact oracle supports 2 <= N <= " + std::to_string(kMaxExactRing) +
                                    ", got N = " + std::to_string(N));
    }
}

Eigen::MatrixXd build_sector_hamiltonian(const HamiltonianSpec& spec, int branch, double t)
{
    spec.validate();
    const int n = spec.N;
    const Eigen::Index dim = Eigen::Index{1} << n;
    const double h = spec.field(t);
    const double transverse = 2.0 * spec.g * branch;  // coefficient of -sum s^x

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const auto bits = static_cast<std::uint32_t>(b);
        m(b, b) = -h * (0.5 * n - std::popcount(bits));
        for (int i = 0; i < n; ++i) {
            const std::uint32_t pair = (1u << i) | (1u << ((i + 1) % n));
            m(bits ^ pair, b) -= 0.25;
            m(bits ^ (1u << i), b) -= 0.5 * transverse;  // s^x = sigma^x / 2
        }
    }
    return m;
}

Eigen::MatrixXd build_hamiltonian(const HamiltonianSpec& spec, double t)
{
    spec.validate();
    const Eigen::Index ring = Eigen::Index{1} << spec.N;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(4 * ring, 4 * ring);
    for (int q = 0; q < 4; ++q)
        full.block(q * ring, q * ring, ring, ring) = build_sector_hamiltonian(spec, kBranchOfBasis[q], t);
    return full;
}

RingGroundState ground_state_ring(const HamiltonianSpec& spec, double t)
{
    HamiltonianSpec ring_only = spec;
    ring_only.g = 0.0;
    const Eigen::MatrixXd h = build_sector_hamiltonian(ring_only, 0, t);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success) throw ConvergenceError("ring diagonalization failed");

    RingGroundState gs;
    gs.energy = es.eigenvalues()(0);
    gs.gap = es.eigenvalues()(1) - es.eigenvalues()(0);
    gs.vector = es.eigenvectors().col(0);
    gs.degenerate = gs.gap < 1e-8 * std::max(1.0, std::abs(gs.energy));
    if (gs.degenerate) {
        // Project the doublet onto the even sector of the spin flip prod sigma^z.
        const Eigen::Index dim = h.rows();
        auto even_part = [&](const Eigen::VectorXd& v) {
            Eigen::VectorXd e(dim);
            for (Eigen::Index b = 0; b < dim; ++b) {
                const double parity = (std::popcount(static_cast<std::uint32_t>(b)) % 2 == 0) ? 1.0 : -1.0;
                e(b) = 0.5 * (v(b) + parity * v(b));
            }
            return e;
        };
        Eigen::VectorXd e = even_part(es.eigenvectors().col(0));
        if (e.norm() < 1e-6) e = even_part(es.eigenvectors().col(1));
        gs.vector = e.normalized();
    }
    return gs;
}

DenseState product_state(const DeviceState& device, const Eigen::VectorXcd& ring)
{
    const Eigen::Index n = ring.size();
    DenseState psi(4 * n);
    for (int q = 0; q < 4; ++q) psi.segment(q * n, n) = device.c[q] * ring;
    return psi;
}

SectorPropagator::SectorPropagator(const HamiltonianSpec& spec, double t_field) : n_(spec.N)
{
    for (int branch = -1; branch <= 1; ++branch) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_sector_hamiltonian(spec, branch, t_field));
        if (es.info() != Eigen::Success) throw ConvergenceError("sector diagonalization failed");
        vectors_[branch + 1] = es.eigenvectors();
        values_[branch + 1] = es.eigenvalues();
    }
}

DenseState SectorPropagator::evolve(const DenseState& state, double t) const
{
    const Eigen::Index ring = Eigen::Index{1} << n_;
    DenseState out(state.size());
    for (int q = 0; q < 4; ++q) {
        const int idx = kBranchOfBasis[q] + 1;
        const Eigen::MatrixXd& v = vectors_[idx];
        Eigen::VectorXcd coeff = v.transpose().cast<complex>() * state.segment(q * ring, ring);
        for (Eigen::Index k = 0; k < coeff.size(); ++k) coeff(k) *= std::polar(1.0, -t * values_[idx](k));
        out.segment(q * ring, ring) = v.cast<complex>() * coeff;
    }
    return out;
}

namespace {

DenseState midpoint_steps(const DenseState& state, const HamiltonianSpec& spec, double t_start, double t_span,
                          int steps)
{
    const double dt = t_span / steps;
    DenseState psi = state;
    for (int s = 0; s < steps; ++s) {
        const double t_mid = t_start + (s + 0.5) * dt;
        HamiltonianSpec frozen = spec;
        frozen.schedule.reset();
        frozen.h = spec.field(t_mid);
        psi = SectorPropagator(frozen).evolve(psi, dt);
    }
    return psi;
}

}  // namespace

DenseState propagate(const DenseState& state, const HamiltonianSpec& spec, double t_start, double t_span,
                     double dt, const PropagationOptions& opts)
{
    spec.validate();
    if (state.size() != 4 * (Eigen::Index{1} << spec.N)) throw std::invalid_argument("state dimension mismatch");
    if (t_span == 0.0) return state;

    if (!spec.time_dependent()) {
        HamiltonianSpec constant = spec;
        constant.schedule.reset();
        constant.h = spec.field(t_start);
        return SectorPropagator(constant).evolve(state, t_span);
    }

    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t_span) / dt)));
    DenseState coarse = midpoint_steps(state, spec, t_start, t_span, steps);
    for (int halving = 0; halving < opts.max_halvings; ++halving) {
        steps *= 2;
        DenseState fine = midpoint_steps(state, spec, t_start, t_span, steps);
        if ((fine - coarse).norm() < opts.tolerance) return fine;
        coarse = std::move(fine);
    }
    std::ostringstream os;
    os << "step doubling did not reach " << opts.tolerance << " after " << opts.max_halvings << " halvings";
    throw ConvergenceError(os.str());
}

Mat4c reduced_device_state(const DenseState& state)
{
    const Eigen::Index ring = state.size() / 4;
    Mat4c rho;
    for (int q = 0; q < 4; ++q)
        for (int qp = 0; qp < 4; ++qp)
            rho(q, qp) = state.segment(qp * ring, ring).dot(state.segment(q * ring, ring));
    return rho;
}

double purity(const Mat4c& rho) { return (rho * rho).trace().real(); }

Eigen::MatrixXcd spin_plus(SpinMagnitude s)
{
    const int dim = s.dimension();
    const double sv = s.value();
    Eigen::MatrixXcd sp = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 1; k < dim; ++k) {
        const double m = sv - k;  // S^+ |m> -> |m + 1>, index k -> k - 1
        sp(k - 1, k) = std::sqrt(sv * (sv + 1.0) - m * (m + 1.0));
    }
    return sp;
}

Eigen::MatrixXcd spin_z(SpinMagnitude s)
{
    Eigen::MatrixXcd sz = Eigen::MatrixXcd::Zero(s.dimension(), s.dimension());
    for (int k = 0; k < s.dimension(); ++k) sz(k, k) = s.value() - k;
    return sz;
}

Eigen::MatrixXcd displacement_matrix(complex omega, SpinMagnitude s)
{
    const Eigen::MatrixXcd sp = spin_plus(s);
    const Eigen::MatrixXcd generator = omega * sp.adjoint() - std::conj(omega) * sp;  // anti-Hermitian
    const Eigen::MatrixXcd herm = complex{0.0, 1.0} * generator;                       // exp(A) = exp(-i (iA))
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
    const Eigen::VectorXcd phases =
        es.eigenvalues().unaryExpr([](double lambda) { return std::polar(1.0, -lambda); });
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::VectorXcd coherent_state(const ScsDirection& d, SpinMagnitude s)
{
    return displacement_matrix(omega_from_angles(d), s).col(0);
}

Vec3 spin_bloch_vector(const Eigen::VectorXcd& psi, SpinMagnitude s)
{
    const complex plus = psi.dot(spin_plus(s) * psi);  // <S^+> = <S^x> + i <S^y>
    const complex z = psi.dot(spin_z(s) * psi);
    return Vec3{plus.real(), plus.imag(), z.real()} / s.value();
}

double ScsCrossCheckReport::max() const
{
    return std::max({coefficient_deviation, bloch_deviation, composition_deviation, overlap_deviation});
}

ScsCrossCheckReport scs_cross_check(const ScsDirection& rotor, SpinMagnitude s, const ScsDirection& target)
{
    if (s.twice() > kMaxCrossCheckTwoS) throw std::out_of_range("scs_cross_check supports S <= 10");

    const Eigen::MatrixXcd d_rotor = displacement_matrix(omega_from_angles(rotor), s);
    const Eigen::VectorXcd psi_rotor = d_rotor.col(0);
    const Eigen::VectorXcd psi_target = coherent_state(target, s);

    ScsCrossCheckReport r;
    r.coefficient_deviation = (psi_rotor - gm_coefficients(rotor, s)).cwiseAbs().maxCoeff();
    r.bloch_deviation = (spin_bloch_vector(psi_rotor, s) - bloch_vector(rotor)).cwiseAbs().maxCoeff();
    const Vec3 composed = spin_bloch_vector(d_rotor * psi_target, s);
    r.composition_deviation = (composed - apply_displacement(rotor, bloch_vector(target))).cwiseAbs().maxCoeff();
    r.overlap_deviation = std::abs(std::abs(psi_target.dot(psi_rotor)) - overlap_modulus(target, rotor, s));
    return r;
}

}  // namespace kzent
