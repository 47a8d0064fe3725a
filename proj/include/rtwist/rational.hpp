#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <sstream>
#include <string>

namespace rtwist {

using Rational = boost::multiprecision::cpp_rational;

// Exact complex scalar q_re + i*q_im with rational parts.  All symbolic
// coefficients in the library live in this field, so canonical forms compare
// exactly and hyperbolic identities cancel without numerical dust.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(long n) : re(n) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    static GaussianRational ratio(long num, long den) { return {Rational(num, den)}; }
    // num/den * i
    static GaussianRational imag_ratio(long num, long den) {
        return {Rational(0), Rational(num, den)};
    }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) {
        return a += b;
    }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) {
        return a -= b;
    }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) {
        return a *= b;
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    // Canonical text: "0", "1", "-3/2", "i", "-i", "2/3i", "(1+i)", "(1/2-2i)".
    std::string str() const {
        auto rat = [](const Rational& q, bool unit_as_empty) {
            std::ostringstream os;
            if (unit_as_empty && (q == 1 || q == -1)) {
                if (q == -1) os << '-';
            } else {
                os << q;
            }
            return os.str();
        };
        if (is_zero()) return "0";
        if (im == 0) return rat(re, false);
        if (re == 0) return rat(im, true) + "i";
        std::string s = "(" + rat(re, false);
        if (im > 0) s += "+";
        s += rat(im, true) + "i)";
        return s;
    }
};

}  // namespace rtwist
