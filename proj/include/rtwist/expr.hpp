#pragma once

#include "rtwist/symbols.hpp"

#include <array>
#include <cmath>
#include <compare>
#include <complex>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>

namespace rtwist {

enum class Chart { minkowski, rindler };

inline const char* chart_name(Chart c) {
    return c == Chart::minkowski ? "minkowski" : "rindler";
}

inline const char* coord_prefix(Chart c) { return c == Chart::minkowski ? "x" : "z"; }

// Monomial key of one expression term:
//   z0^p0 z1^p1 z2^p2 z3^p3 * a^apow * exp(expm * a * z0).
// p1 may be negative (the chart map only ever inverts the first spatial
// coordinate); a and the exponentials occur in the Rindler chart only.
struct TermKey {
    std::array<int, 4> zpow{0, 0, 0, 0};
    int apow = 0;
    int expm = 0;

    auto operator<=>(const TermKey&) const = default;
};

// Point at which expressions are evaluated numerically.
struct EvalPoint {
    std::array<double, 4> z{0.0, 0.0, 0.0, 0.0};
    double accel = 1.0;
    SymbolValues symbols{};
};

namespace detail {

inline std::complex<double> ipow(std::complex<double> b, int p) {
    if (p < 0) {
        if (b == std::complex<double>(0.0, 0.0))
            throw std::domain_error("expr eval: negative power of zero coordinate");
        return 1.0 / ipow(b, -p);
    }
    std::complex<double> r{1.0, 0.0};
    while (p-- > 0) r *= b;
    return r;
}

}  // namespace detail

// Canonical symbolic expression: a finite sum of monomials with GradedCoeff
// coefficients.  Equality is syntactic equality of the canonical form.
struct Expr {
    Chart chart = Chart::minkowski;
    int order = 1;
    std::map<TermKey, GradedCoeff> terms;

    Expr() = default;
    Expr(Chart c, int n) : chart(c), order(n) {}

    static Expr zero(Chart c, int n) { return Expr(c, n); }

    static Expr constant(GaussianRational v, Chart c, int n) {
        Expr e(c, n);
        e.add_term(TermKey{}, GradedCoeff::scalar(std::move(v), n));
        return e;
    }

    static Expr from_coeff(GradedCoeff g, Chart c, int n) {
        if (g.order != n) throw std::invalid_argument("Expr::from_coeff: order mismatch");
        Expr e(c, n);
        e.add_term(TermKey{}, std::move(g));
        return e;
    }

    static Expr symbol(Symbol s, Chart c, int n) {
        return from_coeff(GradedCoeff::symbol(s, n), c, n);
    }

    static Expr coordinate(int mu, Chart c, int n, int power = 1) {
        if (mu < 0 || mu > 3) throw std::invalid_argument("Expr::coordinate: index out of range");
        TermKey k;
        k.zpow[mu] = power;
        Expr e(c, n);
        e.add_term(k, GradedCoeff::one(n));
        return e;
    }

    // a^p; Rindler chart only.
    static Expr accel_power(int p, int n) {
        TermKey k;
        k.apow = p;
        Expr e(Chart::rindler, n);
        e.add_term(k, GradedCoeff::one(n));
        return e;
    }

    // exp(m * a * z0); Rindler chart only.
    static Expr exp_az0(int m, int n) {
        TermKey k;
        k.expm = m;
        Expr e(Chart::rindler, n);
        e.add_term(k, GradedCoeff::one(n));
        return e;
    }

    // Hyperbolics are constructors, not primitives: stored in the exponential
    // basis so that identities like cosh^2 - sinh^2 = 1 cancel syntactically.
    static Expr sinh_az0(int n) {
        Expr e = exp_az0(1, n) - exp_az0(-1, n);
        return e.scaled(GaussianRational::ratio(1, 2));
    }

    static Expr cosh_az0(int n) {
        Expr e = exp_az0(1, n) + exp_az0(-1, n);
        return e.scaled(GaussianRational::ratio(1, 2));
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const TermKey& k, GradedCoeff g) {
        check_key(k);
        if (g.is_zero()) return;
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, std::move(g));
        } else {
            it->second += g;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    Expr& operator+=(const Expr& o) {
        require_compatible(o);
        for (const auto& [k, g] : o.terms) {
            auto [it, fresh] = terms.try_emplace(k, g);
            if (!fresh) {
                it->second += g;
                if (it->second.is_zero()) terms.erase(it);
            }
        }
        return *this;
    }

    Expr operator-() const {
        Expr e(chart, order);
        for (const auto& [k, g] : terms) e.terms.emplace(k, -g);
        return e;
    }

    friend Expr operator+(Expr a, const Expr& b) { return a += b; }
    friend Expr operator-(Expr a, const Expr& b) { return a += -b; }

    friend Expr operator*(const Expr& a, const Expr& b) {
        a.require_compatible(b);
        Expr e(a.chart, a.order);
        for (const auto& [ka, ga] : a.terms)
            for (const auto& [kb, gb] : b.terms) {
                GradedCoeff g = ga * gb;
                if (g.is_zero()) continue;
                TermKey k;
                for (int j = 0; j < 4; ++j) k.zpow[j] = ka.zpow[j] + kb.zpow[j];
                k.apow = ka.apow + kb.apow;
                k.expm = ka.expm + kb.expm;
                e.add_term(k, std::move(g));
            }
        return e;
    }

    Expr scaled(const GaussianRational& c) const {
        Expr e(chart, order);
        if (c.is_zero()) return e;
        for (const auto& [k, g] : terms) e.terms.emplace(k, g.scaled(c));
        return e;
    }

    Expr scaled(const GradedCoeff& c) const {
        Expr e(chart, order);
        for (const auto& [k, g] : terms) {
            GradedCoeff gg = g * c;
            if (!gg.is_zero()) e.terms.emplace(k, std::move(gg));
        }
        return e;
    }

    friend bool operator==(const Expr& a, const Expr& b) {
        return a.chart == b.chart && a.order == b.order && a.terms == b.terms;
    }

    // Partial derivative with respect to chart coordinate `var`.
    Expr diff(int var) const {
        if (var < 0 || var > 3) throw std::invalid_argument("Expr::diff: index out of range");
        Expr e(chart, order);
        for (const auto& [k, g] : terms) {
            if (k.zpow[var] != 0) {
                TermKey kk = k;
                kk.zpow[var] -= 1;
                e.add_term(kk, g.scaled(GaussianRational(k.zpow[var])));
            }
            if (var == 0 && k.expm != 0) {
                TermKey kk = k;
                kk.apow += 1;
                e.add_term(kk, g.scaled(GaussianRational(k.expm)));
            }
        }
        return e;
    }

    // Drop every term containing one of the listed deformation symbols.
    Expr with_order(int new_order) const {
        Expr e(chart, new_order);
        for (const auto& [k, g] : terms) {
            GradedCoeff gg = g.with_order(new_order);
            if (!gg.is_zero()) e.terms.emplace(k, std::move(gg));
        }
        return e;
    }

    Expr without(std::initializer_list<Symbol> dropped) const {
        Expr e(chart, order);
        for (const auto& [k, g] : terms) {
            GradedCoeff gg = g.without(dropped);
            if (!gg.is_zero()) e.terms.emplace(k, std::move(gg));
        }
        return e;
    }

    // Largest grading degree that actually occurs (0 for purely classical).
    int max_symbol_degree() const {
        int d = 0;
        for (const auto& [k, g] : terms)
            for (const auto& [e, c] : g.terms) d = std::max(d, total_degree(e));
        return d;
    }

    Expr classical_part() const {
        Expr e(chart, order);
        for (const auto& [k, g] : terms) {
            GaussianRational c = g.constant_part();
            if (!c.is_zero()) e.terms.emplace(k, GradedCoeff::scalar(c, order));
        }
        return e;
    }

    std::complex<double> eval(const EvalPoint& p) const {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& [k, g] : terms) {
            std::complex<double> v = g.eval(p.symbols);
            for (int j = 0; j < 4; ++j)
                if (k.zpow[j] != 0) v *= detail::ipow(p.z[j], k.zpow[j]);
            if (k.apow != 0) v *= detail::ipow(p.accel, k.apow);
            if (k.expm != 0) v *= std::exp(k.expm * p.accel * p.z[0]);
            acc += v;
        }
        return acc;
    }

    std::string str(bool pretty = false) const {
        if (terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [k, g] : terms) {
            std::string mono = mono_str(k);
            std::string coeff;
            bool multi = g.terms.size() > 1;
            coeff = g.str(pretty);
            if (multi) coeff = "(" + coeff + ")";
            std::string piece;
            if (mono.empty())
                piece = coeff;
            else if (coeff == "1")
                piece = mono;
            else if (coeff == "-1")
                piece = "-" + mono;
            else
                piece = coeff + "*" + mono;
            if (first) {
                out = piece;
                first = false;
            } else if (!piece.empty() && piece[0] == '-') {
                out += " - " + piece.substr(1);
            } else {
                out += " + " + piece;
            }
        }
        return out;
    }

private:
    void check_key(const TermKey& k) const {
        if (chart == Chart::minkowski && (k.apow != 0 || k.expm != 0))
            throw std::invalid_argument("Expr: acceleration factors are Rindler-only");
        for (int j = 0; j < 4; ++j)
            if (j != 1 && k.zpow[j] < 0)
                throw std::invalid_argument("Expr: negative powers only on coordinate 1");
    }

    void require_compatible(const Expr& o) const {
        if (chart != o.chart) throw std::invalid_argument("Expr: chart mismatch");
        if (order != o.order) throw std::invalid_argument("Expr: truncation-order mismatch");
    }

    std::string mono_str(const TermKey& k) const {
        std::string s;
        auto app = [&s](const std::string& piece) {
            if (!s.empty()) s += "*";
            s += piece;
        };
        const char* pfx = coord_prefix(chart);
        for (int j = 0; j < 4; ++j) {
            if (k.zpow[j] == 0) continue;
            std::string p = pfx + std::to_string(j);
            if (k.zpow[j] != 1) p += "^" + std::to_string(k.zpow[j]);
            app(p);
        }
        if (k.apow != 0) {
            std::string p = "a";
            if (k.apow != 1) p += "^" + std::to_string(k.apow);
            app(p);
        }
        if (k.expm != 0) {
            std::string m;
            if (k.expm == -1)
                m = "-";
            else if (k.expm != 1)
                m = std::to_string(k.expm) + "*";
            app("exp(" + m + "a*z0)");
        }
        return s;
    }
};

}  // namespace rtwist
