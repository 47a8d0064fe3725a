#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace rtwist {

namespace detail {

// Lanczos approximation with g = 607/128 and 15 coefficients.  This
// parameter set is accurate to roughly machine precision over the half
// plane Re w >= 1/2, which combined with the reflection formula covers
// everything the transform layer needs (arguments like n - i*omega/a).
inline constexpr double lanczos_gp = 4.2421875;  // g - 1/2

inline constexpr double lanczos_c[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   3.3994649984811888699e-5,
    4.6523628927048575665e-5,   -9.8374475304879564677e-5, 1.5808870322491248884e-4,
    -2.1026444172410488319e-4,  2.1743961811521264320e-4,  -1.6431810653676389022e-4,
    8.4418223983852743293e-5,   -2.6190838401581408670e-5, 3.6899182659531622704e-6,
};

inline std::complex<double> lanczos_sum(std::complex<double> w) {
    std::complex<double> sum = lanczos_c[0];
    for (int k = 1; k < 15; ++k) sum += lanczos_c[k] / (w + double(k - 1));
    return sum;
}

}  // namespace detail

// log Gamma(w) for complex w, up to the usual 2*pi*i branch freedom in the
// reflected region.  Poles at nonpositive integers raise instead of
// returning NaN so a bad omega grid fails loudly.
inline std::complex<double> log_gamma(std::complex<double> w) {
    if (w.imag() == 0.0 && w.real() <= 0.0 && w.real() == std::floor(w.real()))
        throw std::domain_error("log_gamma: pole at nonpositive integer " +
                                std::to_string(w.real()));
    if (w.real() < 0.5) {
        // reflection: Gamma(w) Gamma(1-w) = pi / sin(pi w)
        const double pi = 4.0 * std::atan(1.0);
        return std::log(pi) - std::log(std::sin(pi * w)) - log_gamma(1.0 - w);
    }
    const double half_log_two_pi = 0.91893853320467274178;
    std::complex<double> t = w + detail::lanczos_gp;
    return half_log_two_pi + (w - 0.5) * std::log(t) - t + std::log(detail::lanczos_sum(w));
}

inline std::complex<double> gamma_complex(std::complex<double> w) {
    return std::exp(log_gamma(w));
}

}  // namespace rtwist
