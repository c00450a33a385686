#include "kzent/scs_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kzent {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phi(double phi)
{
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w >= kTwoPi) w = 0.0;
    return w;
}

double log_binomial(int n, int k)
{
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

ScsDirection::ScsDirection(double theta, double phi)
{
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    if (t > kPi) {
        t = kTwoPi - t;
        phi += kPi;
    }
    theta_ = t;
    phi_ = wrap_phi(phi);
}

ScsDirection ScsDirection::from_omega(complex omega)
{
    const double r = std::abs(omega);
    return {2.0 * r, r > 0.0 ? std::arg(omega) : 0.0};
}

ScsDirection ScsDirection::from_vector(const Vec3& n)
{
    const double norm = n.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("direction of a zero vector");
    const double cz = std::clamp(n.z() / norm, -1.0, 1.0);
    return {std::acos(cz), std::atan2(n.y(), n.x())};
}

SpinMagnitude::SpinMagnitude(int two_s) : two_s_(two_s)
{
    if (two_s < 1) throw std::invalid_argument("spin magnitude must be >= 1/2, got 2S = " + std::to_string(two_s));
}

complex omega_from_angles(const ScsDirection& d) { return std::polar(0.5 * d.theta(), d.phi()); }

Vec3 bloch_vector(const ScsDirection& d)
{
    const double st = std::sin(d.theta());
    return {st * std::cos(d.phi()), st * std::sin(d.phi()), std::cos(d.theta())};
}

Mat3 rotation_matrix(const ScsDirection& d)
{
    const double ct = std::cos(d.theta());
    const double st = std::sin(d.theta());
    const double cp = std::cos(d.phi());
    const double sp = std::sin(d.phi());
    const double one_m = 1.0 - ct;

    Mat3 r;
    r << ct * cp * cp + sp * sp, -sp * cp * one_m, st * cp,
         -sp * cp * one_m, ct * sp * sp + cp * cp, st * sp,
         -st * cp, -st * sp, ct;
    return r;
}

Vec3 apply_displacement(const ScsDirection& rotor, const Vec3& target)
{
    Vec3 out = rotation_matrix(rotor) * target;
    return out / out.norm();
}

double overlap_magnitude(const ScsDirection& d1, const ScsDirection& d2, SpinMagnitude s)
{
    const double base = std::clamp(0.5 * (1.0 + bloch_vector(d1).dot(bloch_vector(d2))), 0.0, 1.0);
    return std::pow(base, s.twice());
}

double overlap_modulus(const ScsDirection& d1, const ScsDirection& d2, SpinMagnitude s)
{
    const double base = std::clamp(0.5 * (1.0 + bloch_vector(d1).dot(bloch_vector(d2))), 0.0, 1.0);
    return std::pow(base, s.value());
}

complex gm_coefficient(const ScsDirection& d, SpinMagnitude s, int k)
{
    const int n = s.twice();
    if (k < 0 || k > n) {
        throw std::out_of_range("M = S - k with k = " + std::to_string(k) + " outside [0, 2S = " +
                                std::to_string(n) + "]");
    }
    const int up = n - k;  // S + M
    const double c = std::cos(0.5 * d.theta());
    const double sn = std::sin(0.5 * d.theta());

    double log_mag = 0.5 * log_binomial(n, k);
    if (up > 0) {
        if (c <= 0.0) return {0.0, 0.0};
        log_mag += up * std::log(c);
    }
    if (k > 0) {
        if (sn <= 0.0) return {0.0, 0.0};
        log_mag += k * std::log(sn);
    }
    return std::polar(std::exp(log_mag), k * d.phi());
}

Eigen::VectorXcd gm_coefficients(const ScsDirection& d, SpinMagnitude s)
{
    Eigen::VectorXcd g(s.dimension());
    for (int k = 0; k <= s.twice(); ++k) g(k) = gm_coefficient(d, s, k);
    return g;
}

complex overlap_exact(const ScsDirection& d1, const ScsDirection& d2, SpinMagnitude s, int two_s_cap)
{
    if (s.twice() > two_s_cap) {
        throw std::out_of_range("2S = " + std::to_string(s.twice()) + " exceeds the overlap cap " +
                                std::to_string(two_s_cap));
    }
    complex sum{0.0, 0.0};
    for (int k = 0; k <= s.twice(); ++k) sum += std::conj(gm_coefficient(d1, s, k)) * gm_coefficient(d2, s, k);
    return sum;
}

}  // namespace kzent
