#pragma once

// Reduced state of the qubit pair and Wootters concurrence.

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace kzent {

using complex = std::complex<double>;
using Mat4c = Eigen::Matrix4cd;

/// Branch label of each device basis state |00>, |01>, |10>, |11>: the
/// eigenvalue of (sigma^z_A + sigma^z_B)/2, with |0> the sigma^z = +1 state.
inline constexpr std::array<int, 4> kBranchOfBasis = {+1, 0, 0, -1};

/// Amplitudes of the qubit pair on |00>, |01>, |10>, |11>.
struct DeviceState {
    std::array<complex, 4> c{};

    /// (|00> + |11>)/sqrt(2).
    static DeviceState bell();
    /// Throws std::invalid_argument unless the amplitudes are normalized to 1e-12.
    void validate() const;
};

/// rho_{g g'} = c_g conj(c_g') overlaps(g', g), where overlaps(g', g) is the
/// ring overlap <R^{g'}|R^{g}>. Throws std::invalid_argument when the overlap
/// matrix is not Gram-like (unit diagonal, Hermitian) to 1e-12.
Mat4c device_density_matrix(const DeviceState& d, const Mat4c& overlaps);

/// Gram matrix whose only non-trivial entry is the ring overlap between the
/// +1 and -1 branches, <R^-|R^+> = minus_plus. Sufficient for the Bell state.
Mat4c bell_overlaps(complex minus_plus);

/// Throws std::invalid_argument unless rho is Hermitian with unit trace (1e-12)
/// and its eigenvalues are >= -1e-10.
void validate_density_matrix(const Mat4c& rho);

/// max{0, l1 - l2 - l3 - l4} with l_i the decreasing square roots of the
/// eigenvalues of rho (Y x Y) conj(rho) (Y x Y), evaluated through the
/// singular values of the symmetric matrix W^T (Y x Y) W, W = V sqrt(P) from
/// the eigendecomposition of rho.
double wootters_concurrence(const Mat4c& rho);

}  // namespace kzent
