#pragma once

#include "rtwist/biop.hpp"

#include <array>
#include <stdexcept>

namespace rtwist {

// mostly-plus Minkowski metric
inline int eta(int mu, int nu) {
    if (mu != nu) return 0;
    return mu == 0 ? -1 : 1;
}

// Translation and Lorentz generators realized as differential operators on a
// chart.  In the accelerated (Rindler) chart the inertial coordinates become
// the functions coord(mu) and the translations acquire position-dependent
// coefficients; the Lorentz generators are assembled from both, so the whole
// algebra transfers verbatim.
struct GeneratorSet {
    Chart chart = Chart::minkowski;
    int order = 1;
    std::array<DiffOp, 4> P;
    std::array<Expr, 4> x;  // inertial coordinate functions on this chart

    const Expr& coord(int mu) const {
        if (mu < 0 || mu > 3) throw std::invalid_argument("GeneratorSet::coord: index out of range");
        return x[mu];
    }

    // M_{mu nu} = x_mu P_nu - x_nu P_mu  (index lowered with eta)
    DiffOp M(int mu, int nu) const {
        if (mu < 0 || mu > 3 || nu < 0 || nu > 3)
            throw std::invalid_argument("GeneratorSet::M: index out of range");
        if (mu == nu) return DiffOp::zero(chart, order);
        Expr xl = eta(mu, mu) < 0 ? -x[mu] : x[mu];
        Expr xr = eta(nu, nu) < 0 ? -x[nu] : x[nu];
        return P[nu].scaled(xl) - P[mu].scaled(xr);
    }
};

namespace detail {

inline Expr unit(Chart c, int n) { return Expr::constant(GaussianRational(1), c, n); }

}  // namespace detail

// d/dx^mu written in the accelerated chart (inverse Jacobian of
// x0 = z1 sinh(a z0), x1 = z1 cosh(a z0), x2 = z2, x3 = z3).
inline DiffOp rindler_dx(int mu, int order) {
    if (mu < 0 || mu > 3) throw std::invalid_argument("rindler_dx: index out of range");
    const Chart c = Chart::rindler;
    Expr sh = Expr::sinh_az0(order);
    Expr ch = Expr::cosh_az0(order);
    Expr inv_az1 = Expr::accel_power(-1, order) * Expr::coordinate(1, c, order, -1);
    switch (mu) {
        case 0:
            return DiffOp::partial(0, ch * inv_az1) + DiffOp::partial(1, -sh);
        case 1:
            return DiffOp::partial(0, -(sh * inv_az1)) + DiffOp::partial(1, ch);
        default:
            return DiffOp::partial(mu, detail::unit(c, order));
    }
}

inline GeneratorSet build_generators(Chart chart, int order) {
    GeneratorSet g;
    g.chart = chart;
    g.order = order;
    const GaussianRational i = GaussianRational::i();
    if (chart == Chart::minkowski) {
        for (int mu = 0; mu < 4; ++mu) {
            g.P[mu] = DiffOp::partial(mu, Expr::constant(i, chart, order));
            g.x[mu] = Expr::coordinate(mu, chart, order);
        }
    } else {
        for (int mu = 0; mu < 4; ++mu) g.P[mu] = rindler_dx(mu, order).scaled(i);
        Expr z1 = Expr::coordinate(1, chart, order);
        g.x[0] = z1 * Expr::sinh_az0(order);
        g.x[1] = z1 * Expr::cosh_az0(order);
        g.x[2] = Expr::coordinate(2, chart, order);
        g.x[3] = Expr::coordinate(3, chart, order);
    }
    return g;
}

// Substitution x^mu -> x^mu(z) for polynomial inertial-chart expressions.
inline Expr pullback_to_rindler(const Expr& f) {
    if (f.chart != Chart::minkowski)
        throw std::invalid_argument("pullback_to_rindler: expression is not in the inertial chart");
    GeneratorSet zg = build_generators(Chart::rindler, f.order);
    Expr out(Chart::rindler, f.order);
    for (const auto& [k, c] : f.terms) {
        for (int j = 0; j < 4; ++j)
            if (k.zpow[j] < 0)
                throw std::invalid_argument(
                    "pullback_to_rindler: negative coordinate powers do not stay polynomial");
        Expr term = Expr::from_coeff(c, Chart::rindler, f.order);
        for (int j = 0; j < 4; ++j)
            for (int p = 0; p < k.zpow[j]; ++p) term = term * zg.x[j];
        out += term;
    }
    return out;
}

// Chart transport of a full operator: coefficients are substituted and each
// d/dx^mu becomes its chain-rule image.  This is an algebra morphism, so it
// can cross-check any operator identity computed upstairs.
inline DiffOp pullback_to_rindler(const DiffOp& op) {
    if (op.chart != Chart::minkowski)
        throw std::invalid_argument("pullback_to_rindler: operator is not in the inertial chart");
    DiffOp out(Chart::rindler, op.order);
    for (const auto& [d, c] : op.terms) {
        DiffOp piece = DiffOp::identity(Chart::rindler, op.order);
        for (int mu = 0; mu < 4; ++mu)
            for (int k = 0; k < d[mu]; ++k) piece = rindler_dx(mu, op.order).compose(piece);
        out += piece.scaled(pullback_to_rindler(c));
    }
    return out;
}

inline BiOp pullback_to_rindler(const BiOp& op) {
    if (op.chart != Chart::minkowski)
        throw std::invalid_argument("pullback_to_rindler: operator is not in the inertial chart");
    BiOp out(Chart::rindler, op.order);
    const GradedCoeff one = GradedCoeff::one(op.order);
    for (const auto& [k, c] : op.terms) {
        Expr lcoeff(Chart::minkowski, op.order);
        lcoeff.add_term(k.lmono, c);
        Expr rcoeff(Chart::minkowski, op.order);
        rcoeff.add_term(k.rmono, one);
        DiffOp l = pullback_to_rindler(DiffOp::term(lcoeff, k.ld));
        DiffOp r = pullback_to_rindler(DiffOp::term(rcoeff, k.rd));
        if (!l.is_zero() && !r.is_zero()) out += BiOp::tensor(l, r);
    }
    return out;
}

// Induced metric g_ab = eta_mn dx^m/dz^a dx^n/dz^b on the accelerated chart.
inline std::array<std::array<Expr, 4>, 4> rindler_metric(int order) {
    GeneratorSet zg = build_generators(Chart::rindler, order);
    std::array<std::array<Expr, 4>, 4> g;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            Expr acc(Chart::rindler, order);
            for (int mu = 0; mu < 4; ++mu) {
                Expr piece = zg.x[mu].diff(a) * zg.x[mu].diff(b);
                acc += eta(mu, mu) < 0 ? -piece : piece;
            }
            g[a][b] = acc;
        }
    return g;
}

}  // namespace rtwist
