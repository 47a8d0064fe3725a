#include <catch2/catch_amalgamated.hpp>

#include "rtwist/star.hpp"

using namespace rtwist;

namespace {

const GaussianRational I = GaussianRational::i();
const Chart MINK = Chart::minkowski;
const Chart RIND = Chart::rindler;

// theta_{mn} for arbitrary index order, folded onto the canonical symbol
GradedCoeff theta_gc(int m, int n, int order) {
    GradedCoeff g = GradedCoeff::symbol(theta_symbol(std::min(m, n), std::max(m, n)), order);
    return m < n ? g : -g;
}

int kron(int a, int b) { return a == b ? 1 : 0; }

// Closed-form coordinate commutators [x_mu, x_nu] on the flat chart, mu < nu.
// These are frozen independently of the twist machinery and anchor all signs.
Expr expected_flat_entry(const TwistCase& s, int mu, int nu, int order) {
    auto x = [&](int j) { return Expr::coordinate(j, MINK, order); };
    GradedCoeff invk = GradedCoeff::symbol(s.kappa_symbol(), order);
    Expr out = Expr::zero(MINK, order);
    switch (s.kind) {
        case TwistKind::case_i: {
            if (mu == 0) {
                // [x_0, x_a] = (i/kappa) x_i delta_{ak}
                if (kron(nu, s.k)) out += x(s.i).scaled(invk.scaled(I));
            } else {
                // [x_a, x_b] = 2i theta_{kl} (d_ak d_bl - d_al d_bk)
                //            + (i/kappa) x_0 (d_ia d_kb - d_ka d_ib)
                int t = kron(mu, s.k) * kron(nu, s.l) - kron(mu, s.l) * kron(nu, s.k);
                if (t != 0)
                    out += Expr::from_coeff(
                        theta_gc(s.k, s.l, order).scaled(I * GaussianRational(2 * t)), MINK,
                        order);
                int u = kron(s.i, mu) * kron(s.k, nu) - kron(s.k, mu) * kron(s.i, nu);
                if (u != 0) out += x(0).scaled(invk.scaled(I * GaussianRational(u)));
            }
            break;
        }
        case TwistKind::case_ii: {
            if (mu == 0) {
                // [x_0, x_a] = (i/kappa_hat)(d_la x_k - d_ka x_l) + 2i theta_{0i} d_ia
                if (kron(s.l, nu)) out += x(s.k).scaled(invk.scaled(I));
                if (kron(s.k, nu)) out += x(s.l).scaled(invk.scaled(-I));
                if (kron(s.i, nu))
                    out += Expr::from_coeff(
                        theta_gc(0, s.i, order).scaled(I * GaussianRational(2)), MINK, order);
            }
            // spatial-spatial entries vanish
            break;
        }
        case TwistKind::case_iii: {
            if (mu == 0) {
                // [x_0, x_a] = 2i theta_{0i} d_ia
                if (kron(s.i, nu))
                    out += Expr::from_coeff(
                        theta_gc(0, s.i, order).scaled(I * GaussianRational(2)), MINK, order);
            } else {
                // [x_a, x_b] = (i/kappa_bar)[d_ib (d_ka x_l - d_la x_k)
                //                          + d_ia (d_lb x_k - d_kb x_l)]
                int a = mu, b = nu;
                Expr piece = Expr::zero(MINK, order);
                if (kron(s.i, b)) {
                    if (kron(s.k, a)) piece += x(s.l);
                    if (kron(s.l, a)) piece = piece - x(s.k);
                }
                if (kron(s.i, a)) {
                    if (kron(s.l, b)) piece += x(s.k);
                    if (kron(s.k, b)) piece = piece - x(s.l);
                }
                out += piece.scaled(invk.scaled(I));
            }
            break;
        }
    }
    return out;
}

}  // namespace

TEST_CASE("flat-chart commutator tables match the closed forms") {
    for (const TwistCase& s : all_twist_cases()) {
        CAPTURE(twist_kind_name(s.kind), s.i, s.k, s.l);
        CommutatorTable table = commutator_table(s, MINK, 1);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu + 1; nu < 4; ++nu) {
                CAPTURE(mu, nu);
                CHECK(table.entry(mu, nu) == expected_flat_entry(s, mu, nu, 1));
            }
    }
}

TEST_CASE("table accessor is antisymmetric and bounds-checked") {
    TwistCase s{TwistKind::case_i, 1, 2, 3};
    CommutatorTable table = commutator_table(s, MINK, 1);
    CHECK(table.entry(2, 0) == -table.entry(0, 2));
    CHECK(table.entry(3, 3).is_zero());
    CHECK_THROWS_AS(table.entry(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(table.entry(-1, 2), std::invalid_argument);
}

TEST_CASE("unit function is neutral for the deformed product") {
    Expr one_m = Expr::constant(GaussianRational(1), MINK, 1);
    Expr poly = Expr::coordinate(0, MINK, 1, 2) * Expr::coordinate(1, MINK, 1) +
                Expr::coordinate(2, MINK, 1).scaled(GaussianRational::ratio(-3, 2));
    Expr one_r = Expr::constant(GaussianRational(1), RIND, 1);
    Expr curved = Expr::coordinate(1, RIND, 1) * Expr::sinh_az0(1) +
                  Expr::coordinate(2, RIND, 1) * Expr::coordinate(1, RIND, 1, -1);

    for (const TwistCase& s : all_twist_cases()) {
        CAPTURE(twist_kind_name(s.kind), s.i, s.k, s.l);
        TwistFactor fm = build_twist_factor(s, MINK, 1);
        CHECK(star_product(poly, one_m, fm) == poly);
        CHECK(star_product(one_m, poly, fm) == poly);

        TwistFactor fr = build_twist_factor(s, RIND, 1);
        CHECK(star_product(curved, one_r, fr) == curved);
        CHECK(star_product(one_r, curved, fr) == curved);
    }

    // not special to the linear truncation
    TwistFactor fm2 = build_twist_factor(TwistCase{TwistKind::case_i, 3, 1, 2}, MINK, 2);
    Expr poly2 = poly.with_order(2);
    CHECK(star_product(poly2, one_m.with_order(2), fm2) == poly2);
    CHECK(star_product(one_m.with_order(2), poly2, fm2) == poly2);
}

TEST_CASE("deformed commutators carry no symbol-free part") {
    TwistCase s{TwistKind::case_ii, 2, 3, 1};
    TwistFactor fm = build_twist_factor(s, MINK, 1);
    Expr f = Expr::coordinate(0, MINK, 1) * Expr::coordinate(2, MINK, 1);
    Expr g = Expr::coordinate(3, MINK, 1, 2);
    CHECK(star_commutator(f, g, fm).classical_part().is_zero());

    TwistFactor fr = build_twist_factor(s, RIND, 1);
    Expr fz = Expr::coordinate(1, RIND, 1) * Expr::cosh_az0(1);
    Expr gz = Expr::coordinate(3, RIND, 1) * Expr::coordinate(1, RIND, 1, -1);
    CHECK(star_commutator(fz, gz, fr).classical_part().is_zero());
}

TEST_CASE("curved-chart commutators transport from the flat chart") {
    GeneratorSet g = build_generators(RIND, 1);
    for (const TwistCase& s : all_twist_cases()) {
        CAPTURE(twist_kind_name(s.kind), s.i, s.k, s.l);
        TwistFactor fr = build_twist_factor(s, RIND, 1);
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = mu + 1; nu < 4; ++nu) {
                CAPTURE(mu, nu);
                Expr lhs = star_commutator(g.x[mu], g.x[nu], fr);
                Expr rhs = pullback_to_rindler(expected_flat_entry(s, mu, nu, 1));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("hand-derived curved-chart entries, boost case (i,k,l)=(2,1,3)") {
    TwistCase s{TwistKind::case_i, 2, 1, 3};
    CommutatorTable table = commutator_table(s, RIND, 1);
    GradedCoeff invk = GradedCoeff::symbol(Symbol::inv_kappa, 1);
    GradedCoeff th13 = GradedCoeff::symbol(Symbol::theta13, 1);

    Expr e01 = (Expr::coordinate(2, RIND, 1) * Expr::coordinate(1, RIND, 1, -1) *
                Expr::accel_power(-1, 1))
                   .scaled(invk.scaled(I));
    CHECK(table.entry(0, 1) == e01);

    Expr e02 = (Expr::sinh_az0(1) * Expr::sinh_az0(1) * Expr::accel_power(-1, 1))
                   .scaled(invk.scaled(I));
    CHECK(table.entry(0, 2) == e02);

    Expr e03 = (Expr::sinh_az0(1) * Expr::coordinate(1, RIND, 1, -1) * Expr::accel_power(-1, 1))
                   .scaled(th13.scaled(I * GaussianRational(-2)));
    CHECK(table.entry(0, 3) == e03);

    Expr e12 = (Expr::coordinate(1, RIND, 1) * Expr::sinh_az0(1) * Expr::cosh_az0(1))
                   .scaled(invk.scaled(-I));
    CHECK(table.entry(1, 2) == e12);

    Expr e13 = Expr::cosh_az0(1).scaled(th13.scaled(I * GaussianRational(2)));
    CHECK(table.entry(1, 3) == e13);

    CHECK(table.entry(2, 3).is_zero());
}

TEST_CASE("embedding functions close on a coordinate, case (2,1,3)") {
    TwistCase s{TwistKind::case_i, 2, 1, 3};
    TwistFactor fr = build_twist_factor(s, RIND, 1);
    Expr t_emb = Expr::coordinate(1, RIND, 1) * Expr::sinh_az0(1);
    Expr x_emb = Expr::coordinate(1, RIND, 1) * Expr::cosh_az0(1);
    Expr expect =
        Expr::coordinate(2, RIND, 1).scaled(GradedCoeff::symbol(Symbol::inv_kappa, 1).scaled(I));
    CHECK(star_commutator(t_emb, x_emb, fr) == expect);
}

TEST_CASE("flat tables are independent of the truncation order") {
    for (const TwistCase& s : all_twist_cases()) {
        CAPTURE(twist_kind_name(s.kind), s.i, s.k, s.l);
        TruncationReport rep = truncation_stability_check(s, MINK, 2);
        CHECK(rep.entries.size() == 6);
        CHECK_FALSE(rep.any_changed());
    }
    // deeper truncation for one representative per family
    for (TwistKind kind : {TwistKind::case_i, TwistKind::case_ii, TwistKind::case_iii}) {
        TruncationReport rep = truncation_stability_check(TwistCase{kind, 1, 2, 3}, MINK, 3);
        CHECK(rep.entries.size() == 12);
        CHECK_FALSE(rep.any_changed());
    }
    CHECK_THROWS_AS(truncation_stability_check(TwistCase{TwistKind::case_i, 1, 2, 3}, MINK, 1),
                    std::invalid_argument);
}

TEST_CASE("curved-chart truncation report, quadratic order") {
    // The square of the exponent is symmetric under slot swap, so it cannot
    // feed an antisymmetrized bracket; the quadratic table must match the
    // linear one here too. Cubic and higher terms are chart-sensitive and are
    // only reported, never assumed.
    TwistCase s{TwistKind::case_i, 2, 1, 3};
    TruncationReport rep = truncation_stability_check(s, RIND, 2);
    CHECK(rep.entries.size() == 6);
    CHECK_FALSE(rep.any_changed());
}

TEST_CASE("switching off one deformation family recovers the other") {
    TwistCase s{TwistKind::case_i, 1, 2, 3};
    CommutatorTable table = commutator_table(s, MINK, 1);
    Expr x0 = Expr::coordinate(0, MINK, 1);
    Expr x1 = Expr::coordinate(1, MINK, 1);

    // kappa off: only the constant theta block survives
    CHECK(table.entry(2, 3).without({Symbol::inv_kappa}) ==
          Expr::from_coeff(theta_gc(2, 3, 1).scaled(I * GaussianRational(2)), MINK, 1));
    CHECK(table.entry(0, 2).without({Symbol::inv_kappa}).is_zero());
    CHECK(table.entry(1, 2).without({Symbol::inv_kappa}).is_zero());

    // theta off: the linear Lie-algebra block survives
    GradedCoeff invk = GradedCoeff::symbol(Symbol::inv_kappa, 1);
    CHECK(table.entry(0, 2).without({Symbol::theta23}) == x1.scaled(invk.scaled(I)));
    CHECK(table.entry(1, 2).without({Symbol::theta23}) == x0.scaled(invk.scaled(I)));
    CHECK(table.entry(2, 3).without({Symbol::theta23}).is_zero());

    // family ii: kappa_hat off leaves a single constant entry
    TwistCase s2{TwistKind::case_ii, 1, 2, 3};
    CommutatorTable t2 = commutator_table(s2, MINK, 1);
    CHECK(t2.entry(0, 1).without({Symbol::inv_kappa_hat}) ==
          Expr::from_coeff(theta_gc(0, 1, 1).scaled(I * GaussianRational(2)), MINK, 1));
    CHECK(t2.entry(0, 2).without({Symbol::inv_kappa_hat}).is_zero());

    // family iii: theta off leaves a purely spatial linear table
    TwistCase s3{TwistKind::case_iii, 1, 2, 3};
    CommutatorTable t3 = commutator_table(s3, MINK, 1);
    CHECK(t3.entry(0, 1).without({Symbol::theta01}).is_zero());
    CHECK(t3.entry(1, 2).without({Symbol::theta01}) ==
          Expr::coordinate(3, MINK, 1).scaled(GradedCoeff::symbol(Symbol::inv_kappa_bar, 1)
                                                  .scaled(-I)));
}

TEST_CASE("mixed-chart inputs are rejected") {
    TwistCase s{TwistKind::case_i, 1, 2, 3};
    TwistFactor fr = build_twist_factor(s, RIND, 1);
    Expr f = Expr::coordinate(0, MINK, 1);
    Expr g = Expr::coordinate(1, MINK, 1);
    CHECK_THROWS_AS(star_product(f, g, fr), std::invalid_argument);
}
