#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "rtwist/gamma.hpp"
#include "rtwist/symbols.hpp"

namespace rtwist {

// Physical inputs for the spectrum computations, natural units
// (hbar = c = k_B = 1).  `z` is the radial Rindler coordinate z1 of the
// detector; z2/z3 are the spectator coordinates that enter some correction
// factors as constants.  Deformation parameter values are indexed by the
// same Symbol enum the exact layer uses, so evaluation is one lookup.
struct PhysParams {
    double a = 1.0;
    double omega_hat = 1.0;
    double z = 1.0;
    double z2 = 1.0;
    double z3 = 1.0;
    SymbolValues deformation{};

    double temperature() const { return a / (2.0 * pi()); }

    double spectator(int j) const {
        if (j == 2) return z2;
        if (j == 3) return z3;
        throw std::invalid_argument("spectator: index must be 2 or 3, got " + std::to_string(j));
    }

    void validate() const {
        if (!(a > 0.0)) throw std::invalid_argument("params: acceleration a must be positive");
        if (!(z > 0.0)) throw std::invalid_argument("params: detector coordinate z must be positive");
        if (!(omega_hat > 0.0))
            throw std::invalid_argument("params: source frequency omega_hat must be positive");
    }

    static constexpr double pi() { return 3.14159265358979323846; }
};

// I_n(omega) = int dtau exp(i*omega_hat*z*e^{-a tau}) e^{i omega tau} e^{-n a tau}.
// The e^{-n a tau} factor is the same as shifting omega -> omega + i n a, so
// everything reduces to the n = 0 closed form
//     I_0 = (1/a) (omega_hat z)^{i omega/a} Gamma(-i omega/a) e^{pi omega/(2a)}.
// The substitution u = e^{-a tau} followed by the rotation u -> i t makes the
// integral a Gamma function and fixes the overall phase; the i * (-i) from
// the measure and the rotation multiply to +1, giving the 1/a prefactor.
inline std::complex<double> base_transform(int n, double omega, const PhysParams& p) {
    p.validate();
    if (n < 0) throw std::invalid_argument("base_transform: n must be nonnegative");
    if (omega == 0.0) throw std::domain_error("base_transform: Gamma pole at omega = 0");
    const std::complex<double> shifted(omega, double(n) * p.a);
    const std::complex<double> s = shifted * std::complex<double>(0.0, 1.0) / p.a;  // i*w/a
    const double wz = p.omega_hat * p.z;
    // (wz)^s = exp(s log wz) on the principal branch; wz > 0 so no ambiguity
    return std::exp(s * std::log(wz)) * gamma_complex(-s) *
           std::exp(PhysParams::pi() * shifted / (2.0 * p.a)) / p.a;
}

// I_n / I_0 = prod_{j=0}^{n-1} (omega + i j a) / (a omega_hat z), from the
// Gamma recurrence applied to the shifted closed form.  The correction
// factors in the deformed spectra are assembled from this ratio alone.
inline std::complex<double> transform_ratio(int n, double omega, const PhysParams& p) {
    p.validate();
    if (n < 0) throw std::invalid_argument("transform_ratio: n must be nonnegative");
    if (omega == 0.0) throw std::domain_error("transform_ratio: Gamma pole at omega = 0");
    std::complex<double> r = 1.0;
    for (int j = 0; j < n; ++j)
        r *= std::complex<double>(omega, double(j) * p.a) / (p.a * p.omega_hat * p.z);
    return r;
}

// Thermal power spectrum at negative frequency,
// omega P(-omega) = (2 pi / a) / (e^{2 pi omega / a} - 1) = (1/T)/(e^{omega/T} - 1).
inline double power_spectrum_base(double omega, const PhysParams& p) {
    p.validate();
    if (!(omega > 0.0))
        throw std::invalid_argument("power_spectrum_base: omega must be positive");
    const double x = 2.0 * PhysParams::pi() * omega / p.a;
    return (2.0 * PhysParams::pi() / p.a) / std::expm1(x);
}

// Independent numerical check of the closed forms for n >= 1.  Rotating the
// u = e^{-a tau} contour by +pi/2 turns the oscillatory e^{i omega_hat z u}
// into exponential decay:
//     I_n = (i^n e^{pi omega/(2a)} / a) int_0^inf t^{n-1-i omega/a} e^{-omega_hat z t} dt.
// The remaining oscillation t^{-i omega/a} is tamed by integrating in
// v = log t, where it becomes a plain e^{-i omega v / a} against a smooth
// exponentially vanishing envelope.  n = 0 is excluded: that integral only
// exists as the regularized Gamma value, so quadrature would check nothing.
inline std::complex<double> quadrature_oracle(int n, double omega, const PhysParams& p) {
    p.validate();
    if (n < 1) throw std::invalid_argument("quadrature_oracle: need n >= 1 for convergence");
    if (omega == 0.0) throw std::domain_error("quadrature_oracle: Gamma pole at omega = 0");

    const double wz = p.omega_hat * p.z;
    const double woa = omega / p.a;
    // envelope e^{n v - wz e^v}: negligible below v_lo (power falloff) and
    // above v_hi (exponential falloff)
    const double v_lo = -46.0 / n;
    const double v_hi = std::log(50.0 / wz);

    auto integrand = [&](double v, bool re_part) {
        const double env = std::exp(double(n) * v - wz * std::exp(v));
        const double phase = -woa * v;
        return env * (re_part ? std::cos(phase) : std::sin(phase));
    };

    using boost::math::quadrature::gauss_kronrod;
    double err_re = 0.0, err_im = 0.0;
    const double re = gauss_kronrod<double, 31>::integrate(
        [&](double v) { return integrand(v, true); }, v_lo, v_hi, 15, 1e-12, &err_re);
    const double im = gauss_kronrod<double, 31>::integrate(
        [&](double v) { return integrand(v, false); }, v_lo, v_hi, 15, 1e-12, &err_im);
    if (err_re > 1e-6 * (1.0 + std::abs(re)) || err_im > 1e-6 * (1.0 + std::abs(im)))
        throw std::runtime_error("quadrature_oracle: adaptive quadrature failed tolerance");

    const std::complex<double> rotation =
        std::exp(std::complex<double>(0.0, 1.0) * (PhysParams::pi() / 2.0) * double(n));
    return rotation * std::exp(PhysParams::pi() * omega / (2.0 * p.a)) *
           std::complex<double>(re, im) / p.a;
}

}  // namespace rtwist
