#pragma once

// Spin coherent states on the sphere: the (theta, phi) <-> Omega map, the SO(3)
// image of a displacement operator, overlap kernels and the Dicke-basis
// expansion coefficients.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace kzent {

using complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// A point on the unit sphere, kept canonical: theta in [0, pi], phi in [0, 2 pi).
class ScsDirection {
public:
    ScsDirection() = default;
    /// Normalizes arbitrary angles; a theta outside [0, pi] is reflected back
    /// with phi shifted by pi.
    ScsDirection(double theta, double phi);

    /// Direction of the displacement parameter Omega = (theta/2) e^{i phi}.
    static ScsDirection from_omega(complex omega);
    /// Direction of a (not necessarily unit) non-zero vector.
    static ScsDirection from_vector(const Vec3& n);

    [[nodiscard]] double theta() const { return theta_; }
    [[nodiscard]] double phi() const { return phi_; }

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

/// Spin magnitude S stored as the integer 2S >= 1.
class SpinMagnitude {
public:
    explicit SpinMagnitude(int two_s);
    static SpinMagnitude half() { return SpinMagnitude(1); }

    [[nodiscard]] int twice() const { return two_s_; }
    [[nodiscard]] double value() const { return 0.5 * two_s_; }
    [[nodiscard]] int dimension() const { return two_s_ + 1; }

private:
    int two_s_;
};

complex omega_from_angles(const ScsDirection& d);

/// (sin theta cos phi, sin theta sin phi, cos theta).
Vec3 bloch_vector(const ScsDirection& d);

/// Rotation induced on Bloch vectors by exp(Omega S^- - Omega* S^+): a turn by
/// theta about the in-plane axis (-sin phi, cos phi, 0). Maps the north pole
/// onto bloch_vector(d).
Mat3 rotation_matrix(const ScsDirection& d);

/// rotation_matrix(rotor) * target, renormalized to unit length.
Vec3 apply_displacement(const ScsDirection& rotor, const Vec3& target);

/// Squared overlap |<d1|d2>|^2 = ((1 + n1.n2)/2)^{2S}.
double overlap_magnitude(const ScsDirection& d1, const ScsDirection& d2, SpinMagnitude s);
/// |<d1|d2>| = ((1 + n1.n2)/2)^S.
double overlap_modulus(const ScsDirection& d1, const ScsDirection& d2, SpinMagnitude s);

/// <S, M|d> with M = S - k for k = 0..2S. Throws std::out_of_range otherwise.
/// Binomials are accumulated in log space.
complex gm_coefficient(const ScsDirection& d, SpinMagnitude s, int k);

/// All 2S+1 coefficients ordered by k = S - M.
Eigen::VectorXcd gm_coefficients(const ScsDirection& d, SpinMagnitude s);

inline constexpr int kDefaultOverlapSpinCap = 400;  // 2S, i.e. S <= 200

/// Sum over M of conj(g_M(d1)) g_M(d2). Throws std::out_of_range when 2S
/// exceeds two_s_cap.
complex overlap_exact(const ScsDirection& d1, const ScsDirection& d2, SpinMagnitude s,
                      int two_s_cap = kDefaultOverlapSpinCap);

}  // namespace kzent
