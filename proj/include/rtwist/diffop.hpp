#pragma once

#include "rtwist/expr.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace rtwist {

// Multi-index of derivative orders in the four chart coordinates.
using DerivIndex = std::array<std::uint8_t, 4>;

inline int deriv_order(const DerivIndex& d) { return d[0] + d[1] + d[2] + d[3]; }

namespace detail {

inline long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - j + 1) / j;
    return r;
}

// Product of per-axis binomials binom(a, b).
inline long multi_binomial(const DerivIndex& a, const DerivIndex& b) {
    long r = 1;
    for (int j = 0; j < 4; ++j) r *= binomial(a[j], b[j]);
    return r;
}

}  // namespace detail

// Linear differential operator in normal-ordered form: a sum of terms
// coeff(z) * d^alpha, with the coefficient expression to the left of the
// derivative monomial.  Composition re-normal-orders via the Leibniz rule.
struct DiffOp {
    Chart chart = Chart::minkowski;
    int order = 1;
    std::map<DerivIndex, Expr> terms;

    DiffOp() = default;
    DiffOp(Chart c, int n) : chart(c), order(n) {}

    static DiffOp zero(Chart c, int n) { return DiffOp(c, n); }

    static DiffOp identity(Chart c, int n) {
        return term(Expr::constant(GaussianRational(1), c, n), DerivIndex{0, 0, 0, 0});
    }

    // coeff * d/dz_mu.
    static DiffOp partial(int mu, const Expr& coeff) {
        if (mu < 0 || mu > 3) throw std::invalid_argument("DiffOp::partial: index out of range");
        DerivIndex d{0, 0, 0, 0};
        d[mu] = 1;
        return term(coeff, d);
    }

    static DiffOp term(const Expr& coeff, const DerivIndex& d) {
        DiffOp op(coeff.chart, coeff.order);
        op.add_term(d, coeff);
        return op;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const DerivIndex& d, const Expr& coeff) {
        if (coeff.is_zero()) return;
        if (coeff.chart != chart || coeff.order != order)
            throw std::invalid_argument("DiffOp: coefficient chart/order mismatch");
        auto it = terms.find(d);
        if (it == terms.end()) {
            terms.emplace(d, coeff);
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    DiffOp& operator+=(const DiffOp& o) {
        require_compatible(o);
        for (const auto& [d, c] : o.terms) add_term(d, c);
        return *this;
    }

    DiffOp operator-() const {
        DiffOp op(chart, order);
        for (const auto& [d, c] : terms) op.terms.emplace(d, -c);
        return op;
    }

    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a += -b; }

    DiffOp scaled(const GaussianRational& c) const {
        DiffOp op(chart, order);
        for (const auto& [d, e] : terms) op.add_term(d, e.scaled(c));
        return op;
    }

    DiffOp scaled(const GradedCoeff& c) const {
        DiffOp op(chart, order);
        for (const auto& [d, e] : terms) op.add_term(d, e.scaled(c));
        return op;
    }

    // Left multiplication by a function.
    DiffOp scaled(const Expr& f) const {
        DiffOp op(chart, order);
        for (const auto& [d, e] : terms) op.add_term(d, f * e);
        return op;
    }

    friend bool operator==(const DiffOp& a, const DiffOp& b) {
        return a.chart == b.chart && a.order == b.order && a.terms == b.terms;
    }

    Expr apply(const Expr& f) const {
        if (f.chart != chart || f.order != order)
            throw std::invalid_argument("DiffOp::apply: chart/order mismatch");
        Expr out(chart, order);
        for (const auto& [d, c] : terms) {
            Expr g = f;
            for (int mu = 0; mu < 4; ++mu)
                for (int k = 0; k < d[mu]; ++k) g = g.diff(mu);
            out += c * g;
        }
        return out;
    }

    // Normal-ordered product (this o other) via the Leibniz expansion
    //   c1 d^a (c2 d^b .) = sum_{g<=a} binom(a,g) c1 (d^{a-g} c2) d^{g+b}.
    DiffOp compose(const DiffOp& o) const {
        require_compatible(o);
        DiffOp out(chart, order);
        for (const auto& [da, ca] : terms)
            for (const auto& [db, cb] : o.terms) {
                DerivIndex g{0, 0, 0, 0};
                // iterate g over the box 0 <= g[j] <= da[j]
                for (;;) {
                    long b = detail::multi_binomial(da, g);
                    Expr piece = cb;
                    DerivIndex rest{0, 0, 0, 0};
                    bool overflow = false;
                    for (int j = 0; j < 4; ++j) {
                        for (int k = 0; k < da[j] - g[j]; ++k) piece = piece.diff(j);
                        int sum = g[j] + db[j];
                        if (sum > 255) overflow = true;
                        rest[j] = static_cast<std::uint8_t>(sum);
                    }
                    if (overflow) throw std::overflow_error("DiffOp::compose: derivative order overflow");
                    if (!piece.is_zero())
                        out.add_term(rest, (ca * piece).scaled(GaussianRational(b)));
                    // advance multi-index
                    int j = 0;
                    while (j < 4 && g[j] == da[j]) {
                        g[j] = 0;
                        ++j;
                    }
                    if (j == 4) break;
                    ++g[j];
                }
            }
        return out;
    }

    DiffOp commutator(const DiffOp& o) const { return compose(o) - o.compose(*this); }

    std::string str(bool pretty = false) const {
        if (terms.empty()) return "0";
        std::string out;
        for (const auto& [d, c] : terms) {
            if (!out.empty()) out += " + ";
            std::string ds;
            for (int j = 0; j < 4; ++j)
                for (int k = 0; k < d[j]; ++k) {
                    if (!ds.empty()) ds += "*";
                    ds += std::string("d") + coord_prefix(chart) + std::to_string(j);
                }
            out += "[" + c.str(pretty) + "]";
            if (!ds.empty()) out += "*" + ds;
        }
        return out;
    }

private:
    void require_compatible(const DiffOp& o) const {
        if (chart != o.chart) throw std::invalid_argument("DiffOp: chart mismatch");
        if (order != o.order) throw std::invalid_argument("DiffOp: truncation-order mismatch");
    }
};

}  // namespace rtwist
