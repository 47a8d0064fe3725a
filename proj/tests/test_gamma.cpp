#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "rtwist/gamma.hpp"

using namespace rtwist;

namespace {
constexpr double PI = 3.14159265358979323846;
}

TEST_CASE("integer and half-integer values") {
    CHECK(gamma_complex(5.0).real() == Catch::Approx(24.0).epsilon(1e-13));
    CHECK(gamma_complex(5.0).imag() == Catch::Approx(0.0).margin(1e-12));
    CHECK(gamma_complex(1.0).real() == Catch::Approx(1.0).epsilon(1e-13));
    CHECK(gamma_complex(10.0).real() == Catch::Approx(362880.0).epsilon(1e-13));
    CHECK(gamma_complex(0.5).real() == Catch::Approx(std::sqrt(PI)).epsilon(1e-13));
    // reflected region
    CHECK(gamma_complex(-0.5).real() == Catch::Approx(-2.0 * std::sqrt(PI)).epsilon(1e-12));
    CHECK(gamma_complex(-1.5).real() == Catch::Approx(4.0 * std::sqrt(PI) / 3.0).epsilon(1e-12));
}

TEST_CASE("modulus on the imaginary axis") {
    // |Gamma(iy)|^2 = pi / (y sinh(pi y))
    const std::complex<double> gi = gamma_complex({0.0, 1.0});
    CHECK(std::norm(gi) == Catch::Approx(PI / std::sinh(PI)).epsilon(1e-12));
    CHECK(std::norm(gi) == Catch::Approx(0.2720290550).margin(1e-9));

    for (double y : {0.1, 0.3, 0.7, 1.0, 2.0, 3.5, 5.0, 7.5, 10.0}) {
        const double lhs = std::norm(gamma_complex({0.0, y})) * y * std::sinh(PI * y);
        CHECK(lhs == Catch::Approx(PI).epsilon(1e-10));
    }
}

TEST_CASE("recurrence and conjugation on the test domain") {
    std::mt19937 rng(20260815);
    std::uniform_real_distribution<double> re(-10.0, 10.0), im(-20.0, 20.0);
    int tested = 0;
    while (tested < 200) {
        std::complex<double> w(re(rng), im(rng));
        // stay away from the poles on the nonpositive real axis
        if (std::abs(w.imag()) < 0.1 &&
            std::abs(w.real() - std::round(w.real())) < 0.1 && w.real() < 0.7)
            continue;
        ++tested;
        CAPTURE(w.real(), w.imag());
        const std::complex<double> ratio = gamma_complex(w + 1.0) / (w * gamma_complex(w));
        CHECK(std::abs(ratio - 1.0) < 1e-12);
        const std::complex<double> cc = gamma_complex(std::conj(w)) - std::conj(gamma_complex(w));
        CHECK(std::abs(cc) <= 1e-12 * std::abs(gamma_complex(w)));
    }
}

TEST_CASE("reflection identity") {
    for (std::complex<double> w : {std::complex<double>(0.3, 0.4), {-2.3, 1.0}, {-5.5, -3.0}}) {
        const std::complex<double> lhs = gamma_complex(w) * gamma_complex(1.0 - w);
        const std::complex<double> rhs = PI / std::sin(PI * w);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("poles raise instead of returning NaN") {
    CHECK_THROWS_AS(gamma_complex(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_complex(-3.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma({-7.0, 0.0}), std::domain_error);
    CHECK_NOTHROW(gamma_complex({-3.0, 1e-8}));  // off axis is regular
}
