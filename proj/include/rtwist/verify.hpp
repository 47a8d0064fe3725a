#pragma once

#include "rtwist/spectra.hpp"
#include "rtwist/star.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace rtwist {

namespace detail {

// --- three-slot operators and states ----------------------------------------
//
// The coassociativity condition lives in the tensor cube of the operator
// algebra, one slot up from BiOp.  Composing lifted factors there blows up
// combinatorially, so operators are never multiplied out: they are applied
// right to left to a canonical state (a monomial expansion of f (x) g (x) h),
// which gets merged back into canonical form after every application.

struct TriKey {
    TermKey m1;
    DerivIndex d1{0, 0, 0, 0};
    TermKey m2;
    DerivIndex d2{0, 0, 0, 0};
    TermKey m3;
    DerivIndex d3{0, 0, 0, 0};

    auto operator<=>(const TriKey&) const = default;
};

// canonical tensor-cube state: monomial in each slot, graded coefficient
using TriMono = std::array<TermKey, 3>;
using TriExpr = std::map<TriMono, GradedCoeff>;

inline void triexpr_add(TriExpr& state, const TriMono& k, const GradedCoeff& c) {
    if (c.is_zero()) return;
    auto it = state.find(k);
    if (it == state.end()) {
        state.emplace(k, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) state.erase(it);
    }
}

struct TriOp {
    Chart chart = Chart::minkowski;
    int order = 1;
    std::map<TriKey, GradedCoeff> terms;

    TriOp() = default;
    TriOp(Chart c, int n) : chart(c), order(n) {}

    static TriOp identity(Chart c, int n) {
        TriOp op(c, n);
        op.terms.emplace(TriKey{}, GradedCoeff::scalar(GaussianRational(1), n));
        return op;
    }

    // A (x) B (x) C, expanded to canonical terms.
    static TriOp tensor(const DiffOp& a, const DiffOp& b, const DiffOp& c) {
        if (a.chart != b.chart || a.chart != c.chart || a.order != b.order || a.order != c.order)
            throw std::invalid_argument("TriOp::tensor: chart/order mismatch");
        TriOp op(a.chart, a.order);
        for (const auto& [da, ea] : a.terms)
            for (const auto& [ka, ca] : ea.terms)
                for (const auto& [db, eb] : b.terms)
                    for (const auto& [kb, cb] : eb.terms)
                        for (const auto& [dc, ec] : c.terms)
                            for (const auto& [kc, cc] : ec.terms)
                                op.add_term(TriKey{ka, da, kb, db, kc, dc}, ca * cb * cc);
        return op;
    }

    bool is_zero() const { return terms.empty(); }

    void add_term(const TriKey& k, const GradedCoeff& c) {
        if (c.is_zero()) return;
        if (c.order != order) throw std::invalid_argument("TriOp: truncation-order mismatch");
        auto it = terms.find(k);
        if (it == terms.end()) {
            terms.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    TriOp& operator+=(const TriOp& o) {
        if (chart != o.chart) throw std::invalid_argument("TriOp: chart mismatch");
        if (order != o.order) throw std::invalid_argument("TriOp: truncation-order mismatch");
        for (const auto& [k, c] : o.terms) add_term(k, c);
        return *this;
    }

    TriOp scaled(const GradedCoeff& c) const {
        TriOp op(chart, order);
        for (const auto& [k, e] : terms) op.add_term(k, e * c);
        return op;
    }

    // this applied to a canonical state, merged back into canonical form.
    // Pairs whose symbol degrees already exceed the truncation order are
    // skipped up front; everything they produce lies in the dropped ideal.
    TriExpr apply_to(const TriExpr& state) const {
        const GradedCoeff unit = GradedCoeff::scalar(GaussianRational(1), order);
        TriExpr out;
        for (const auto& [tk, tc] : terms) {
            const int tdeg = tc.min_degree();
            for (const auto& [mono, mc] : state) {
                if (tdeg + mc.min_degree() > order) continue;
                Expr u = slot_result(tk.m1, tk.d1, mono[0], unit);
                if (u.is_zero()) continue;
                Expr v = slot_result(tk.m2, tk.d2, mono[1], unit);
                if (v.is_zero()) continue;
                Expr w = slot_result(tk.m3, tk.d3, mono[2], unit);
                if (w.is_zero()) continue;
                const GradedCoeff base = tc * mc;
                for (const auto& [ku, cu] : u.terms)
                    for (const auto& [kv, cv] : v.terms)
                        for (const auto& [kw, cw] : w.terms)
                            triexpr_add(out, TriMono{ku, kv, kw}, base * cu * cv * cw);
            }
        }
        return out;
    }

    Expr apply(const Expr& f, const Expr& g, const Expr& h) const {
        return contract(apply_to(expand_triple(f, g, h)), chart, order);
    }

    // f (x) g (x) h written as a canonical state.
    static TriExpr expand_triple(const Expr& f, const Expr& g, const Expr& h) {
        if (f.chart != g.chart || f.chart != h.chart || f.order != g.order || f.order != h.order)
            throw std::invalid_argument("TriOp: triple has mismatched charts/orders");
        TriExpr state;
        for (const auto& [kf, cf] : f.terms)
            for (const auto& [kg, cg] : g.terms)
                for (const auto& [kh, ch] : h.terms)
                    triexpr_add(state, TriMono{kf, kg, kh}, cf * cg * ch);
        return state;
    }

    // m3: multiply the three slots out into a single function.
    static Expr contract(const TriExpr& state, Chart chart, int order) {
        Expr out(chart, order);
        for (const auto& [mono, c] : state) {
            TermKey k;
            for (int v = 0; v < 4; ++v)
                k.zpow[v] = mono[0].zpow[v] + mono[1].zpow[v] + mono[2].zpow[v];
            k.apow = mono[0].apow + mono[1].apow + mono[2].apow;
            k.expm = mono[0].expm + mono[1].expm + mono[2].expm;
            out.add_term(k, c);
        }
        return out;
    }

private:
    // one slot of one term acting on one state monomial
    Expr slot_result(const TermKey& opmono, const DerivIndex& d, const TermKey& mono,
                     const GradedCoeff& unit) const {
        Expr f(chart, order);
        f.add_term(mono, unit);
        for (int mu = 0; mu < 4; ++mu)
            for (int j = 0; j < d[mu]; ++j) f = f.diff(mu);
        Expr m(chart, order);
        m.add_term(opmono, unit);
        return m * f;
    }
};

// Embed a two-slot operator into slots (1,2) or (2,3), identity elsewhere.
inline TriOp lift_12(const BiOp& b) {
    TriOp out(b.chart, b.order);
    for (const auto& [k, c] : b.terms) out.add_term(TriKey{k.lmono, k.ld, k.rmono, k.rd}, c);
    return out;
}

inline TriOp lift_23(const BiOp& b) {
    TriOp out(b.chart, b.order);
    for (const auto& [k, c] : b.terms)
        out.add_term(TriKey{TermKey{}, DerivIndex{0, 0, 0, 0}, k.lmono, k.ld, k.rmono, k.rd}, c);
    return out;
}

// exp(D) applied to a state: sum_j D^j(state) / j!, which terminates at the
// truncation order because every term of D carries a deformation symbol.
inline TriExpr exp_apply(const TriOp& d, TriExpr state) {
    TriExpr acc = state;
    Rational fact(1);
    for (int j = 1; j <= d.order; ++j) {
        state = d.apply_to(state);
        if (state.empty()) break;
        fact *= j;
        const GaussianRational scale(Rational(1) / fact);
        for (const auto& [k, c] : state) triexpr_add(acc, k, c.scaled(scale));
    }
    return acc;
}

// The undeformed coproduct makes every vector field primitive,
// X -> X (x) 1 + 1 (x) X, so it acts on a wedge sum leg by leg.  These build
// (coproduct (x) 1) and (1 (x) coproduct) of the exponent without ever
// touching the flattened normal-ordered form, where the leg factorisation
// (and with it the coproduct) is no longer visible.
inline TriOp coproduct_on_first(const std::vector<TwistWedge>& wedges, Chart chart, int order) {
    TriOp out(chart, order);
    const DiffOp one = DiffOp::identity(chart, order);
    for (const TwistWedge& w : wedges) {
        out += TriOp::tensor(w.first, one, w.second).scaled(w.weight);
        out += TriOp::tensor(one, w.first, w.second).scaled(w.weight);
        out += TriOp::tensor(w.second, one, w.first).scaled(-w.weight);
        out += TriOp::tensor(one, w.second, w.first).scaled(-w.weight);
    }
    return out;
}

inline TriOp coproduct_on_second(const std::vector<TwistWedge>& wedges, Chart chart, int order) {
    TriOp out(chart, order);
    const DiffOp one = DiffOp::identity(chart, order);
    for (const TwistWedge& w : wedges) {
        out += TriOp::tensor(w.first, w.second, one).scaled(w.weight);
        out += TriOp::tensor(w.first, one, w.second).scaled(w.weight);
        out += TriOp::tensor(w.second, w.first, one).scaled(-w.weight);
        out += TriOp::tensor(w.second, one, w.first).scaled(-w.weight);
    }
    return out;
}

// Residuals of F_{12} (coproduct (x) 1) F = F_{23} (1 (x) coproduct) F on the
// given triples, for exp of the given wedge sum.  Factored out so the
// adversarial control can feed in a broken wedge list.
inline std::vector<Expr> cocycle_residuals(const std::vector<TwistWedge>& wedges, Chart chart,
                                           int order,
                                           const std::vector<std::array<Expr, 3>>& triples) {
    BiOp exponent(chart, order);
    for (const TwistWedge& w : wedges)
        exponent += BiOp::wedge(w.first, w.second).scaled(w.weight);
    const TriOp factor12 = lift_12(BiOp::exp_truncated(exponent));
    const TriOp factor23 = lift_23(BiOp::exp_truncated(exponent));
    const TriOp d1 = coproduct_on_first(wedges, chart, order);
    const TriOp d2 = coproduct_on_second(wedges, chart, order);
    std::vector<Expr> out;
    out.reserve(triples.size());
    for (const auto& t : triples) {
        TriExpr state = TriOp::expand_triple(t[0], t[1], t[2]);
        Expr lhs = TriOp::contract(factor12.apply_to(exp_apply(d1, state)), chart, order);
        Expr rhs = TriOp::contract(factor23.apply_to(exp_apply(d2, state)), chart, order);
        out.push_back(lhs - rhs);
    }
    return out;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

// Human-readable tag for one index assignment, e.g. "case i (1,2,3)".
inline std::string case_label(const TwistCase& spec) {
    return std::string("case ") + twist_kind_name(spec.kind) + " (" + std::to_string(spec.i) +
           "," + std::to_string(spec.k) + "," + std::to_string(spec.l) + ")";
}

// Deterministic set of degree <= 3 monomial triples: a few pinned coordinate
// triples plus seeded random monomials.  Only the raw mt19937 stream is used,
// so the set is reproducible across platforms for a given seed.
inline std::vector<std::array<Expr, 3>> monomial_triples(Chart chart, int order, unsigned seed,
                                                         int count = 8) {
    auto coord = [&](int mu) { return Expr::coordinate(mu, chart, order); };
    std::vector<std::array<Expr, 3>> out;
    out.push_back({coord(0), coord(2), coord(3)});
    out.push_back({coord(1), coord(0), coord(1)});
    out.push_back({coord(2) * coord(3), coord(0), coord(1)});
    out.push_back({coord(0) * coord(0), coord(1), coord(2) * coord(3)});
    std::mt19937 rng(seed);
    auto monomial = [&]() {
        Expr m = Expr::constant(GaussianRational(1), chart, order);
        int degree = static_cast<int>(rng() % 4u);
        for (int j = 0; j < degree; ++j) m = m * coord(static_cast<int>(rng() % 4u));
        return m;
    };
    while (static_cast<int>(out.size()) < count) out.push_back({monomial(), monomial(), monomial()});
    return out;
}

// Residual of the coassociativity condition, one Expr per test triple: both
// sides are applied to (f, g, h) and multiplied out, and their difference
// must vanish identically.  Truncation order must be at least 2: at first
// order the condition holds for any exponent whatsoever and checks nothing.
inline std::vector<Expr> cocycle_check(const TwistCase& spec, Chart chart, int order,
                                       const std::vector<std::array<Expr, 3>>& triples) {
    if (order < 2)
        throw std::invalid_argument("cocycle_check: order must be >= 2 to carry any content");
    return detail::cocycle_residuals(twist_wedge_terms(spec, chart, order), chart, order, triples);
}

// Self-test of the cocycle machinery: move the boost leg of case i onto the
// translation axis so the two legs stop commuting.  The returned residual is
// nonzero whenever the check has teeth.
inline Expr cocycle_control_residual(int order) {
    if (order < 2)
        throw std::invalid_argument("cocycle_control_residual: order must be >= 2");
    const Chart c = Chart::minkowski;
    GeneratorSet g = build_generators(c, order);
    GradedCoeff w =
        GradedCoeff::symbol(Symbol::inv_kappa, order).scaled(GaussianRational::imag_ratio(1, 2));
    std::vector<TwistWedge> wedges{TwistWedge{g.M(2, 0), g.P[2], w}};
    std::vector<std::array<Expr, 3>> triple{{Expr::coordinate(2, c, order),
                                             Expr::coordinate(0, c, order),
                                             Expr::coordinate(0, c, order)}};
    return detail::cocycle_residuals(wedges, c, order, triple).front();
}

// f * 1 = f and 1 * g = g for every sample function; two residual Exprs per
// function, all of which must vanish identically.
inline std::vector<Expr> normalization_check(const TwistCase& spec, Chart chart, int order,
                                             const std::vector<Expr>& funcs) {
    TwistFactor factor = build_twist_factor(spec, chart, order);
    const Expr unit = Expr::constant(GaussianRational(1), chart, order);
    std::vector<Expr> out;
    out.reserve(2 * funcs.size());
    for (const Expr& f : funcs) {
        out.push_back(star_product(f, unit, factor) - f);
        out.push_back(star_product(unit, f, factor) - f);
    }
    return out;
}

namespace detail {

inline constexpr std::initializer_list<Symbol> all_symbols = {
    Symbol::theta01, Symbol::theta02, Symbol::theta03,
    Symbol::theta12, Symbol::theta13, Symbol::theta23,
    Symbol::inv_kappa, Symbol::inv_kappa_hat, Symbol::inv_kappa_bar};

// Factor built from a filtered wedge list, following each chart's exponent
// bookkeeping; used by the sector limits.
inline TwistFactor factor_from_wedges(const TwistCase& spec, Chart chart, int order,
                                      const std::vector<TwistWedge>& wedges) {
    TwistFactor f;
    f.spec = spec;
    f.chart = chart;
    f.order = order;
    f.exponent = BiOp(chart, order);
    for (const TwistWedge& w : wedges)
        f.exponent += BiOp::wedge(w.first, w.second).scaled(w.weight);
    f.star_factor = BiOp::exp_truncated(chart == Chart::minkowski ? -f.exponent : f.exponent);
    return f;
}

}  // namespace detail

// Classical limit: with every deformation symbol switched off the star
// product must collapse to the pointwise product.  One residual per pair.
inline std::vector<Expr> classical_limit_check(const TwistCase& spec, Chart chart, int order,
                                               const std::vector<std::array<Expr, 3>>& triples) {
    TwistFactor factor = build_twist_factor(spec, chart, order);
    std::vector<Expr> out;
    out.reserve(triples.size());
    for (const auto& t : triples)
        out.push_back(star_product(t[0], t[1], factor).without(detail::all_symbols) - t[0] * t[1]);
    return out;
}

// Sector limits: dropping one deformation family from the exponent must give
// the same commutator table as dropping its symbol from the full table.
// `keep_theta` selects which family survives.  Returns the six entry
// residuals in (mu, nu) order.
inline std::vector<Expr> sector_limit_check(const TwistCase& spec, Chart chart, int order,
                                            bool keep_theta) {
    const Symbol kappa = spec.kappa_symbol();
    std::vector<TwistWedge> kept;
    for (const TwistWedge& w : twist_wedge_terms(spec, chart, order)) {
        bool kappa_wedge = w.weight.without({kappa}).is_zero();
        if (kappa_wedge != keep_theta) kept.push_back(w);
    }
    TwistFactor factor = detail::factor_from_wedges(spec, chart, order, kept);
    CommutatorTable full = commutator_table(spec, chart, order);
    const Symbol dropped = keep_theta ? kappa : spec.theta();
    std::vector<Expr> out;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            Expr limit_entry = star_commutator(Expr::coordinate(mu, chart, order),
                                               Expr::coordinate(nu, chart, order), factor);
            out.push_back(limit_entry - full.entry(mu, nu).without({dropped}));
        }
    return out;
}

// --- assembled battery -------------------------------------------------------

struct VerificationCheck {
    std::string name;    // check family
    std::string config;  // which configuration it ran on
    bool passed = false;
    std::string residual;  // "0" when clean, otherwise a rendering of the failure
};

struct VerificationReport {
    int order = 2;
    unsigned seed = 0;
    std::vector<VerificationCheck> checks;

    bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const VerificationCheck& c) { return c.passed; });
    }
};

namespace detail {

inline void push_expr_residuals(VerificationReport& report, std::string name, std::string config,
                                const std::vector<Expr>& residuals) {
    VerificationCheck check{std::move(name), std::move(config), true, "0"};
    for (const Expr& r : residuals) {
        if (r.is_zero()) continue;
        check.passed = false;
        check.residual = r.str();
        break;
    }
    report.checks.push_back(std::move(check));
}

}  // namespace detail

// Runs every representation-level check over all index assignments and both
// charts.  Deterministic for a given seed; checks come back sorted by
// (name, config) so reports are directly comparable.
inline VerificationReport run_battery(int order = 2, unsigned seed = 20260815) {
    if (order < 2)
        throw std::invalid_argument("run_battery: order must be >= 2 for the cocycle checks");
    VerificationReport report;
    report.order = order;
    report.seed = seed;

    const std::array<Chart, 2> charts{Chart::minkowski, Chart::rindler};
    std::array<std::vector<std::array<Expr, 3>>, 2> triples{
        monomial_triples(Chart::minkowski, order, seed),
        monomial_triples(Chart::rindler, order, seed + 1)};

    for (const TwistCase& spec : all_twist_cases()) {
        const std::string label = case_label(spec);
        for (int ci = 0; ci < 2; ++ci) {
            const Chart chart = charts[ci];
            const std::string chart_tag = chart == Chart::minkowski ? "minkowski" : "rindler";
            const std::string config = label + ", " + chart_tag;
            const auto& trip = triples[ci];

            detail::push_expr_residuals(report, "cocycle", config,
                                        cocycle_check(spec, chart, order, trip));

            std::vector<Expr> funcs;
            for (const auto& t : trip) funcs.push_back(t[0]);
            detail::push_expr_residuals(report, "normalization", config,
                                        normalization_check(spec, chart, order, funcs));

            detail::push_expr_residuals(report, "limit-classical", config,
                                        classical_limit_check(spec, chart, order, trip));
            detail::push_expr_residuals(report, "limit-theta-sector", config,
                                        sector_limit_check(spec, chart, order, true));
            detail::push_expr_residuals(report, "limit-kappa-sector", config,
                                        sector_limit_check(spec, chart, order, false));
        }

        // chart transport: the deformation factor and the coordinate tables
        // must both commute with the coordinate change
        {
            BiOp diff = pullback_twist_check(spec, order);
            report.checks.push_back(VerificationCheck{"pullback-consistency", label,
                                                      diff.is_zero(),
                                                      diff.is_zero() ? "0" : diff.str()});
        }
        {
            CommutatorTable flat = commutator_table(spec, Chart::minkowski, order);
            GeneratorSet curved = build_generators(Chart::rindler, order);
            TwistFactor zfactor = build_rindler_zfactor(spec, order);
            std::vector<Expr> residuals;
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = mu + 1; nu < 4; ++nu)
                    residuals.push_back(
                        star_commutator(curved.x[mu], curved.x[nu], zfactor) -
                        pullback_to_rindler(flat.entry(mu, nu)));
            detail::push_expr_residuals(report, "table-transport", label, residuals);
        }

        // spectra side of the classical limit: with the deformation switched
        // off the corrected spectrum must coincide with the thermal base
        {
            PhysParams p;
            SpectrumPoint pt = twisted_power_spectrum(spec, 1.0, p);
            double dev = std::abs(pt.corrected - pt.base) + std::abs(pt.correction);
            report.checks.push_back(VerificationCheck{"limit-classical-spectrum", label,
                                                      dev == 0.0, detail::format_double(dev)});
        }
    }

    // the control must FAIL the cocycle condition; the check passes when the
    // residual is visibly nonzero
    {
        Expr r = cocycle_control_residual(order);
        report.checks.push_back(VerificationCheck{
            "cocycle-control", "case i (1,2,3) with the boost leg moved onto the translation axis",
            !r.is_zero(), r.is_zero() ? "0" : r.str()});
    }

    std::sort(report.checks.begin(), report.checks.end(),
              [](const VerificationCheck& a, const VerificationCheck& b) {
                  return std::tie(a.name, a.config) < std::tie(b.name, b.config);
              });
    return report;
}

}  // namespace rtwist
