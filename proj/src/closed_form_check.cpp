#include "kzent/closed_form_check.hpp"

#include "kzent/exact_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace kzent {

namespace {

// e^{i t h S^z} applied to a Dicke-basis vector (index k = S - M).
Eigen::VectorXcd precess(const Eigen::VectorXcd& psi, SpinMagnitude s, double angle)
{
    Eigen::VectorXcd out = psi;
    for (int k = 0; k < s.dimension(); ++k) out(k) *= std::polar(1.0, angle * (s.value() - k));
    return out;
}

}  // namespace

complex branch_overlap_exact_para(const ParaConfig& cfg, double t)
{
    const SpinMagnitude half = SpinMagnitude::half();
    const complex l = l_of_t(cfg, t);
    const Eigen::VectorXcd plus = precess(displacement_matrix(l, half).col(0), half, t * cfg.h);
    const Eigen::VectorXcd minus = precess(displacement_matrix(-l, half).col(0), half, t * cfg.h);
    return std::pow(minus.dot(plus), cfg.N);
}

complex branch_overlap_exact_dia(const DiaConfig& cfg, double t)
{
    const SpinMagnitude s(cfg.partition.two_s_d);
    if (s.twice() > kMaxDenseOracleTwoS) throw std::out_of_range("dense domain oracle supports 2S <= 64");

    const double h_t = cfg.field_after(t);
    const complex f = f_of_t(cfg.g, h_t, t);
    const Eigen::MatrixXcd d_plus = displacement_matrix(f, s);
    const Eigen::MatrixXcd d_minus = displacement_matrix(-f, s);

    complex overlap{1.0, 0.0};
    for (const auto& dir : cfg.ensemble.directions) {
        const Eigen::VectorXcd initial = coherent_state(dir, s);
        const Eigen::VectorXcd plus = precess(d_plus * initial, s, t * h_t);
        const Eigen::VectorXcd minus = precess(d_minus * initial, s, t * h_t);
        overlap *= minus.dot(plus);
    }
    return overlap;
}

double oracle_concurrence(complex minus_plus)
{
    const Mat4c rho = device_density_matrix(DeviceState::bell(), bell_overlaps(minus_plus));
    validate_density_matrix(rho);
    return wootters_concurrence(rho);
}

namespace {

template <class Config, class Closed, class Overlap>
ClosedFormReport compare(const Config& cfg, const std::vector<double>& grid, Closed closed, Overlap overlap)
{
    ClosedFormReport r;
    r.points = grid.size();
    for (double t : grid) {
        const double dev = std::abs(closed(cfg, t) - oracle_concurrence(overlap(cfg, t)));
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.t_at_max = t;
        }
    }
    return r;
}

}  // namespace

ClosedFormReport closed_form_check(const ParaConfig& cfg, const std::vector<double>& grid)
{
    return compare(cfg, grid, concurrence_para, branch_overlap_exact_para);
}

ClosedFormReport closed_form_check(const DiaConfig& cfg, const std::vector<double>& grid)
{
    return compare(cfg, grid, concurrence_dia, branch_overlap_exact_dia);
}

ClosedFormReport exact_vs_closed_form(const ParaConfig& cfg, const std::vector<double>& grid)
{
    HamiltonianSpec spec;
    spec.N = cfg.N;
    spec.g = cfg.g;
    spec.h = cfg.h;
    const RingGroundState ring = ground_state_ring(spec);
    const DenseState psi0 = product_state(DeviceState::bell(), ring.vector.cast<complex>());
    const SectorPropagator propagator(spec);

    ClosedFormReport r;
    r.points = grid.size();
    for (double t : grid) {
        const double exact = wootters_concurrence(reduced_device_state(propagator.evolve(psi0, t)));
        const double dev = std::abs(concurrence_para(cfg, t) - exact);
        if (dev > r.max_deviation) {
            r.max_deviation = dev;
            r.t_at_max = t;
        }
    }
    return r;
}

}  // namespace kzent
