#pragma once

#include "rtwist/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtwist {

// The three Abelian deformation families.  Each one wedges a translation
// against either a boost composite (i), a rotation composite driven by time
// translation (ii) or by a spatial translation (iii), plus a momentum-momentum
// theta term.
enum class TwistKind { case_i = 1, case_ii = 2, case_iii = 3 };

inline const char* twist_kind_name(TwistKind k) {
    switch (k) {
        case TwistKind::case_i: return "i";
        case TwistKind::case_ii: return "ii";
        case TwistKind::case_iii: return "iii";
    }
    throw std::invalid_argument("twist_kind_name: bad kind");
}

inline TwistKind twist_kind_from_name(const std::string& s) {
    if (s == "i") return TwistKind::case_i;
    if (s == "ii") return TwistKind::case_ii;
    if (s == "iii") return TwistKind::case_iii;
    throw std::invalid_argument("twist kind must be one of i, ii, iii");
}

struct TwistCase {
    TwistKind kind = TwistKind::case_i;
    int i = 1, k = 2, l = 3;  // spatial axes, all distinct

    void validate() const {
        auto spatial = [](int v) { return v >= 1 && v <= 3; };
        if (!spatial(i) || !spatial(k) || !spatial(l))
            throw std::invalid_argument("TwistCase: indices must lie in {1,2,3}");
        if (i == k || i == l || k == l)
            throw std::invalid_argument("TwistCase: indices i, k, l must be pairwise distinct");
    }

    // deformation symbols used by this case
    Symbol kappa_symbol() const {
        switch (kind) {
            case TwistKind::case_i: return Symbol::inv_kappa;
            case TwistKind::case_ii: return Symbol::inv_kappa_hat;
            case TwistKind::case_iii: return Symbol::inv_kappa_bar;
        }
        throw std::invalid_argument("TwistCase: bad kind");
    }

    Symbol theta() const {
        if (kind == TwistKind::case_i) return theta_symbol(std::min(k, l), std::max(k, l));
        return theta_symbol(0, i);
    }
};

// A deformation factor on one chart.  `exponent` follows each chart's natural
// bookkeeping: on Minkowski the factor is F = exp(exponent) and the product
// uses F^{-1} = exp(-exponent); on Rindler the inverse factor is written
// directly as Z^{-1} = exp(exponent).  `star_factor` is always the operator
// the star product applies to f (x) g.
struct TwistFactor {
    TwistCase spec;
    Chart chart = Chart::minkowski;
    int order = 1;
    BiOp exponent;
    BiOp star_factor;
};

namespace detail {

// theta_{mu nu} as a graded coefficient, antisymmetrized onto the canonical
// mu < nu symbol.
inline GradedCoeff theta_coeff(int mu, int nu, int order) {
    GradedCoeff c = GradedCoeff::symbol(theta_symbol(std::min(mu, nu), std::max(mu, nu)), order);
    return mu < nu ? c : -c;
}

inline GradedCoeff half_of(Symbol s, int order) {
    return GradedCoeff::symbol(s, order).scaled(GaussianRational::ratio(1, 2));
}

}  // namespace detail

// One A (^) B factor of a deformation exponent together with its graded
// weight, so the exponent is the weighted sum of A (x) B - B (x) A.  Both
// legs are vector fields; the verification battery relies on that to apply
// the undeformed coproduct leg by leg instead of on the flattened operator.
struct TwistWedge {
    DiffOp first;
    DiffOp second;
    GradedCoeff weight;
};

// Wedge decomposition of the exponent on the requested chart.  Weights carry
// the overall +/- i of each chart's bookkeeping, so summing
// wedge(first, second).scaled(weight) reproduces the factor exponent exactly.
inline std::vector<TwistWedge> twist_wedge_terms(const TwistCase& spec, Chart chart, int order) {
    spec.validate();
    std::vector<TwistWedge> out;
    GeneratorSet g = build_generators(chart, order);

    if (chart == Chart::minkowski) {
        auto push = [&](const DiffOp& a, const DiffOp& b, const GradedCoeff& w) {
            out.push_back(TwistWedge{a, b, w.scaled(GaussianRational::i())});
        };
        switch (spec.kind) {
            case TwistKind::case_i:
                // boost-momentum wedge; orientation fixed by the coordinate
                // commutator tables, which anchor every other sign here
                push(g.M(spec.i, 0), g.P[spec.k], detail::half_of(spec.kappa_symbol(), order));
                push(g.P[spec.k], g.P[spec.l], detail::theta_coeff(spec.k, spec.l, order));
                break;
            case TwistKind::case_ii:
                push(g.P[0], g.M(spec.k, spec.l), detail::half_of(spec.kappa_symbol(), order));
                push(g.P[0], g.P[spec.i], detail::theta_coeff(0, spec.i, order));
                break;
            case TwistKind::case_iii:
                push(g.P[spec.i], g.M(spec.k, spec.l), detail::half_of(spec.kappa_symbol(), order));
                push(g.P[0], g.P[spec.i], detail::theta_coeff(0, spec.i, order));
                break;
        }
        return out;
    }

    const std::array<DiffOp, 4>& f = g.P;  // f_mu: translation images on the wedge chart

    // boost and rotation composites written in chart coordinates; g.x are the
    // inertial coordinate functions (z1 sinh, z1 cosh, z2, z3)
    Expr g0 = g.x[0], g1 = g.x[1];
    auto X = [&](int j) { return j == 1 ? g1 : Expr::coordinate(j, chart, order); };
    auto boost = [&](int j) { return f[0].scaled(X(j)) + f[j].scaled(g0); };
    auto rot = [&](int m, int n) { return f[n].scaled(X(m)) - f[m].scaled(X(n)); };

    auto push = [&](const DiffOp& a, const DiffOp& b, const GradedCoeff& w) {
        out.push_back(TwistWedge{a, b, w.scaled(-GaussianRational::i())});
    };
    const int i = spec.i, k = spec.k, l = spec.l;
    const GradedCoeff hk = detail::half_of(spec.kappa_symbol(), order);
    switch (spec.kind) {
        case TwistKind::case_i:
            // one theta branch and one boost branch fire per index triple
            if (k == 1) push(f[1], f[l], detail::theta_coeff(1, l, order));
            if (l == 1) push(f[k], f[1], detail::theta_coeff(k, 1, order));
            if (k == 2 && l == 3) push(f[2], f[3], detail::theta_coeff(2, 3, order));
            if (k == 3 && l == 2) push(f[3], f[2], detail::theta_coeff(3, 2, order));
            if (k == 1) push(boost(i), f[1], hk);
            if (i == 1) push(boost(1), f[k], hk);
            if (k == 2 && i == 3) push(boost(3), f[2], hk);
            if (k == 3 && i == 2) push(boost(2), f[3], hk);
            break;
        case TwistKind::case_ii:
            push(f[0], f[i], detail::theta_coeff(0, i, order));
            if (k == 2 && l == 3) push(f[0], rot(2, 3), hk);
            if (k == 3 && l == 2) push(f[0], rot(3, 2), hk);
            if (k == 1) push(f[0], rot(1, l), hk);
            if (l == 1) push(f[0], rot(k, 1), hk);
            break;
        case TwistKind::case_iii:
            push(f[0], f[i], detail::theta_coeff(0, i, order));
            if (i == 1) push(f[1], rot(k, l), hk);
            if (k == 1) push(f[i], rot(1, l), hk);
            if (l == 1) push(f[i], rot(k, 1), hk);
            break;
    }
    return out;
}

namespace detail {

inline BiOp assemble_exponent(const TwistCase& spec, Chart chart, int order) {
    BiOp exponent(chart, order);
    for (const TwistWedge& w : twist_wedge_terms(spec, chart, order))
        exponent += BiOp::wedge(w.first, w.second).scaled(w.weight);
    return exponent;
}

}  // namespace detail

inline TwistFactor build_minkowski_twist(const TwistCase& spec, int order) {
    TwistFactor f;
    f.spec = spec;
    f.chart = Chart::minkowski;
    f.order = order;
    f.exponent = detail::assemble_exponent(spec, f.chart, order);
    f.star_factor = BiOp::exp_truncated(-f.exponent);
    return f;
}

inline TwistFactor build_rindler_zfactor(const TwistCase& spec, int order) {
    TwistFactor z;
    z.spec = spec;
    z.chart = Chart::rindler;
    z.order = order;
    z.exponent = detail::assemble_exponent(spec, z.chart, order);
    z.star_factor = BiOp::exp_truncated(z.exponent);
    return z;
}

// Consistency of the two constructions: the wedge-chart factor must be the
// chart transport of the flat one.  Returns the difference of exponents
// (empty means they agree exactly).
inline BiOp pullback_twist_check(const TwistCase& spec, int order) {
    TwistFactor mink = build_minkowski_twist(spec, order);
    TwistFactor rind = build_rindler_zfactor(spec, order);
    // F^{-1} = exp(-exponent) upstairs while Z^{-1} = exp(+exponent), so the
    // transported exponent must cancel against the chart-native one.
    return pullback_to_rindler(mink.exponent) + rind.exponent;
}

// All valid index assignments (6 permutations per family).
inline std::vector<TwistCase> all_twist_cases() {
    std::vector<TwistCase> out;
    for (TwistKind kind : {TwistKind::case_i, TwistKind::case_ii, TwistKind::case_iii})
        for (int i = 1; i <= 3; ++i)
            for (int k = 1; k <= 3; ++k)
                for (int l = 1; l <= 3; ++l)
                    if (i != k && i != l && k != l) out.push_back(TwistCase{kind, i, k, l});
    return out;
}

}  // namespace rtwist
