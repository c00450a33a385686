#include "kzent/concurrence.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kzent {

namespace {

constexpr double kStrictTol = 1e-12;

// sigma^y (x) sigma^y is real.
Eigen::Matrix4d yy()
{
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m(0, 3) = -1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 0) = -1.0;
    return m;
}

}  // namespace

DeviceState DeviceState::bell()
{
    const double a = std::numbers::sqrt2 / 2.0;
    DeviceState d;
    d.c = {complex{a, 0.0}, complex{}, complex{}, complex{a, 0.0}};
    return d;
}

void DeviceState::validate() const
{
    double norm = 0.0;
    for (const auto& x : c) norm += std::norm(x);
    if (std::abs(norm - 1.0) > kStrictTol) throw std::invalid_argument("device amplitudes are not normalized");
}

Mat4c device_density_matrix(const DeviceState& d, const Mat4c& overlaps)
{
    d.validate();
    for (int i = 0; i < 4; ++i) {
        if (std::abs(overlaps(i, i) - 1.0) > kStrictTol)
            throw std::invalid_argument("ring overlap matrix must have a unit diagonal");
        for (int j = 0; j < i; ++j) {
            if (std::abs(overlaps(i, j) - std::conj(overlaps(j, i))) > kStrictTol)
                throw std::invalid_argument("ring overlap matrix must be Hermitian");
        }
    }
    Mat4c rho;
    for (int g = 0; g < 4; ++g)
        for (int gp = 0; gp < 4; ++gp) rho(g, gp) = d.c[g] * std::conj(d.c[gp]) * overlaps(gp, g);
    return rho;
}

Mat4c bell_overlaps(complex minus_plus)
{
    Mat4c o = Mat4c::Identity();
    o(3, 0) = minus_plus;
    o(0, 3) = std::conj(minus_plus);
    return o;
}

void validate_density_matrix(const Mat4c& rho)
{
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStrictTol)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(rho.trace() - 1.0) > kStrictTol) throw std::invalid_argument("density matrix trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Mat4c> es(rho, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) throw std::invalid_argument("density matrix is not positive semidefinite");
}

double wootters_concurrence(const Mat4c& rho)
{
    Eigen::SelfAdjointEigenSolver<Mat4c> es(rho);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition of the device state failed");

    // Eigenvalues at round-off level carry no weight; keeping them would feed
    // sqrt(1e-17) ~ 3e-9 noise into the spin-flip overlaps.
    const double p_max = es.eigenvalues().maxCoeff();
    Mat4c w = es.eigenvectors();
    for (int i = 0; i < 4; ++i) {
        const double p = es.eigenvalues()(i);
        w.col(i) *= (p > 1e-14 * p_max) ? std::sqrt(p) : 0.0;
    }
    const Mat4c tau = w.transpose() * yy().cast<complex>() * w;
    Eigen::JacobiSVD<Mat4c> svd(tau);
    const Eigen::Vector4d sv = svd.singularValues();  // decreasing
    return std::max(0.0, sv(0) - sv(1) - sv(2) - sv(3));
}

}  // namespace kzent
