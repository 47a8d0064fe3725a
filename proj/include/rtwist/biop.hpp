#pragma once

#include "rtwist/diffop.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rtwist {

// Canonical key of one bidifferential term:
//   (left monomial) d^{ld}  (x)  (right monomial) d^{rd}
struct BiKey {
    TermKey lmono;
    DerivIndex ld{0, 0, 0, 0};
    TermKey rmono;
    DerivIndex rd{0, 0, 0, 0};

    auto operator<=>(const BiKey&) const = default;
};

// Bidifferential operator (element of the tensor square of the operator
// algebra) kept in fully expanded canonical form, so equality of maps is
// equality of operators.  Used for twist factors and their residual checks.
struct BiOp {
    Chart chart = Chart::minkowski;
    int order = 1;
    std::map<BiKey, GradedCoeff> terms;

    BiOp() = default;
    BiOp(Chart c, int n) : chart(c), order(n) {}

    static BiOp zero(Chart c, int n) { return BiOp(c, n); }

    static BiOp identity(Chart c, int n) {
        BiOp op(c, n);
        op.terms.emplace(BiKey{}, GradedCoeff::scalar(GaussianRational(1), n));
        return op;
    }

    // A (x) B, expanded to canonical terms.
    static BiOp tensor(const DiffOp& a, const DiffOp& b) {
        if (a.chart != b.chart || a.order != b.order)
            throw std::invalid_argument("BiOp::tensor: chart/order mismatch");
        BiOp op(a.chart, a.order);
        for (const auto& [da, ea] : a.terms)
            for (const auto& [ka, ca] : ea.terms)
                for (const auto& [db, eb] : b.terms)
                    for (const auto& [kb, cb] : eb.terms)
                        op.add_term(BiKey{ka, da, kb, db}, ca * cb);
        return op;
    }

    // A (x) B - B (x) A.
    static BiOp wedge(const DiffOp& a, const DiffOp& b) {
        return tensor(a, b) - tensor(b, a);
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const BiKey& k, const GradedCoeff& c) {
        if (c.is_zero()) return;
        if (c.order != order) throw std::invalid_argument("BiOp: truncation-order mismatch");
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    BiOp& operator+=(const BiOp& o) {
        require_compatible(o);
        for (const auto& [k, c] : o.terms) add_term(k, c);
        return *this;
    }

    BiOp operator-() const {
        BiOp op(chart, order);
        for (const auto& [k, c] : terms) op.terms.emplace(k, -c);
        return op;
    }

    friend BiOp operator+(BiOp a, const BiOp& b) { return a += b; }
    friend BiOp operator-(BiOp a, const BiOp& b) { return a += -b; }

    BiOp scaled(const GaussianRational& c) const {
        BiOp op(chart, order);
        for (const auto& [k, e] : terms) op.add_term(k, e.scaled(c));
        return op;
    }

    BiOp scaled(const GradedCoeff& c) const {
        BiOp op(chart, order);
        for (const auto& [k, e] : terms) op.add_term(k, e * c);
        return op;
    }

    friend bool operator==(const BiOp& a, const BiOp& b) {
        return a.chart == b.chart && a.order == b.order && a.terms == b.terms;
    }

    BiOp swap_slots() const {
        BiOp op(chart, order);
        for (const auto& [k, c] : terms) op.add_term(BiKey{k.rmono, k.rd, k.lmono, k.ld}, c);
        return op;
    }

    // Slot-wise operator product (this applied after other).
    BiOp compose(const BiOp& o) const {
        require_compatible(o);
        BiOp out(chart, order);
        for (const auto& [k1, c1] : terms) {
            // scalar coefficient rides on the left slot
            DiffOp l1 = DiffOp::term(mono_expr(k1.lmono, c1), k1.ld);
            DiffOp r1 = DiffOp::term(mono_expr(k1.rmono, GradedCoeff::scalar(GaussianRational(1), order)), k1.rd);
            for (const auto& [k2, c2] : o.terms) {
                DiffOp l2 = DiffOp::term(mono_expr(k2.lmono, c2), k2.ld);
                DiffOp r2 = DiffOp::term(mono_expr(k2.rmono, GradedCoeff::scalar(GaussianRational(1), order)), k2.rd);
                DiffOp l = l1.compose(l2);
                DiffOp r = r1.compose(r2);
                if (!l.is_zero() && !r.is_zero()) out += tensor(l, r);
            }
        }
        return out;
    }

    // m( this (f (x) g) ): the contraction used by star products.
    Expr apply(const Expr& f, const Expr& g) const {
        Expr out(chart, order);
        for (auto& [u, v] : apply_pairs(f, g)) out += u * v;
        return out;
    }

    // this (f (x) g) kept as a sum of unmultiplied slot pairs; needed when a
    // further operator acts on individual slots.
    std::vector<std::pair<Expr, Expr>> apply_pairs(const Expr& f, const Expr& g) const {
        if (f.chart != chart || f.order != order || g.chart != chart || g.order != order)
            throw std::invalid_argument("BiOp::apply: chart/order mismatch");
        std::vector<std::pair<Expr, Expr>> out;
        out.reserve(terms.size());
        for (const auto& [k, c] : terms) {
            Expr u = mono_expr(k.lmono, c) * derive(f, k.ld);
            Expr v = mono_expr(k.rmono, GradedCoeff::scalar(GaussianRational(1), order)) * derive(g, k.rd);
            if (!u.is_zero() && !v.is_zero()) out.emplace_back(std::move(u), std::move(v));
        }
        return out;
    }

    // Smallest deformation-symbol degree appearing in any coefficient.
    // Returns order + 1 when the operator is zero.
    int min_term_degree() const {
        int best = order + 1;
        for (const auto& [k, c] : terms) best = std::min(best, c.min_degree());
        return best;
    }

    // sum_{j=0..order} exponent^j / j!.  Terminates because every term of the
    // exponent must carry at least one power of a deformation symbol.
    static BiOp exp_truncated(const BiOp& exponent) {
        if (exponent.min_term_degree() < 1)
            throw std::invalid_argument("BiOp::exp_truncated: exponent has a degree-0 term");
        BiOp out = identity(exponent.chart, exponent.order);
        BiOp power = identity(exponent.chart, exponent.order);
        Rational fact(1);
        for (int j = 1; j <= exponent.order; ++j) {
            power = exponent.compose(power);
            if (power.is_zero()) break;
            fact *= j;
            out += power.scaled(GaussianRational(Rational(1) / fact));
        }
        return out;
    }

    std::string str(bool pretty = false) const {
        if (terms.empty()) return "0";
        std::string out;
        for (const auto& [k, c] : terms) {
            if (!out.empty()) out += " + ";
            DiffOp l = DiffOp::term(mono_expr(k.lmono, c), k.ld);
            DiffOp r = DiffOp::term(mono_expr(k.rmono, GradedCoeff::scalar(GaussianRational(1), order)), k.rd);
            out += "(" + l.str(pretty) + ") (x) (" + r.str(pretty) + ")";
        }
        return out;
    }

private:
    Expr mono_expr(const TermKey& k, const GradedCoeff& c) const {
        Expr e(chart, order);
        if (!c.is_zero()) e.terms.emplace(k, c);
        return e;
    }

    static Expr derive(const Expr& f, const DerivIndex& d) {
        Expr g = f;
        for (int mu = 0; mu < 4; ++mu)
            for (int k = 0; k < d[mu]; ++k) g = g.diff(mu);
        return g;
    }

    void require_compatible(const BiOp& o) const {
        if (chart != o.chart) throw std::invalid_argument("BiOp: chart mismatch");
        if (order != o.order) throw std::invalid_argument("BiOp: truncation-order mismatch");
    }
};

}  // namespace rtwist
