#include <catch2/catch_amalgamated.hpp>

#include "rtwist/biop.hpp"

#include <random>

using namespace rtwist;

namespace {

GaussianRational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    return GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
}

Expr random_expr(std::mt19937& rng, Chart chart, int order) {
    std::uniform_int_distribution<int> nterms(1, 2);
    std::uniform_int_distribution<int> pow(0, 2);
    std::uniform_int_distribution<int> lpow(-1, 2);
    std::uniform_int_distribution<int> small(-1, 1);
    Expr e(chart, order);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        TermKey k;
        k.zpow = {pow(rng), lpow(rng), pow(rng), pow(rng)};
        if (chart == Chart::minkowski) {
            if (k.zpow[1] < 0) k.zpow[1] = 0;
        } else {
            k.apow = small(rng);
            k.expm = small(rng);
        }
        e.add_term(k, GradedCoeff::scalar(random_rational(rng), order));
    }
    return e;
}

DiffOp random_op(std::mt19937& rng, Chart chart, int order) {
    std::uniform_int_distribution<int> nterms(1, 2);
    std::uniform_int_distribution<int> d(0, 2);
    DiffOp op(chart, order);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        DerivIndex idx{0, 0, 0, 0};
        idx[d(rng)] = static_cast<std::uint8_t>(d(rng));
        op.add_term(idx, random_expr(rng, chart, order));
    }
    return op;
}

}  // namespace

TEST_CASE("operator application matches repeated differentiation") {
    Expr f = Expr::coordinate(0, Chart::minkowski, 1, 2) * Expr::coordinate(1, Chart::minkowski, 1);
    DiffOp d01 = DiffOp::term(Expr::constant(GaussianRational(1), Chart::minkowski, 1),
                              DerivIndex{1, 1, 0, 0});
    CHECK(d01.apply(f) == Expr::coordinate(0, Chart::minkowski, 1).scaled(GaussianRational(2)));

    DiffOp id = DiffOp::identity(Chart::minkowski, 1);
    CHECK(id.apply(f) == f);
    CHECK(DiffOp::zero(Chart::minkowski, 1).apply(f).is_zero());
}

TEST_CASE("composition agrees with sequential application") {
    std::mt19937 rng(555);
    for (Chart chart : {Chart::minkowski, Chart::rindler}) {
        for (int trial = 0; trial < 12; ++trial) {
            DiffOp a = random_op(rng, chart, 1);
            DiffOp b = random_op(rng, chart, 1);
            Expr f = random_expr(rng, chart, 1);
            CHECK(a.compose(b).apply(f) == a.apply(b.apply(f)));
        }
    }
}

TEST_CASE("composition is associative and distributes") {
    std::mt19937 rng(556);
    for (int trial = 0; trial < 8; ++trial) {
        DiffOp a = random_op(rng, Chart::rindler, 1);
        DiffOp b = random_op(rng, Chart::rindler, 1);
        DiffOp c = random_op(rng, Chart::rindler, 1);
        CHECK(a.compose(b).compose(c) == a.compose(b.compose(c)));
        CHECK(a.compose(b + c) == a.compose(b) + a.compose(c));
        CHECK(a.commutator(b) == -(b.commutator(a)));
    }
}

TEST_CASE("canonical commutation relation") {
    // [d_mu, x_nu .] = delta_{mu nu} as operators
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) {
            DiffOp d = DiffOp::partial(mu, Expr::constant(GaussianRational(1), Chart::minkowski, 1));
            DiffOp x = DiffOp::term(Expr::coordinate(nu, Chart::minkowski, 1), DerivIndex{0, 0, 0, 0});
            DiffOp expect = mu == nu ? DiffOp::identity(Chart::minkowski, 1)
                                     : DiffOp::zero(Chart::minkowski, 1);
            CHECK(d.commutator(x) == expect);
        }
}

TEST_CASE("tensor and wedge structure") {
    std::mt19937 rng(557);
    for (int trial = 0; trial < 8; ++trial) {
        DiffOp a = random_op(rng, Chart::minkowski, 2);
        DiffOp b = random_op(rng, Chart::minkowski, 2);
        Expr f = random_expr(rng, Chart::minkowski, 2);
        Expr g = random_expr(rng, Chart::minkowski, 2);

        CHECK(BiOp::tensor(a, b).apply(f, g) == a.apply(f) * b.apply(g));
        CHECK(BiOp::wedge(a, b) == -BiOp::wedge(b, a));
        CHECK(BiOp::wedge(a, a).is_zero());
        CHECK(BiOp::tensor(a, b).swap_slots() == BiOp::tensor(b, a));
        CHECK(BiOp::identity(Chart::minkowski, 2).apply(f, g) == f * g);
    }
}

TEST_CASE("slot-wise composition") {
    std::mt19937 rng(558);
    for (int trial = 0; trial < 6; ++trial) {
        DiffOp a = random_op(rng, Chart::rindler, 1);
        DiffOp b = random_op(rng, Chart::rindler, 1);
        DiffOp c = random_op(rng, Chart::rindler, 1);
        DiffOp d = random_op(rng, Chart::rindler, 1);
        CHECK(BiOp::tensor(a, b).compose(BiOp::tensor(c, d)) ==
              BiOp::tensor(a.compose(c), b.compose(d)));
    }
}

TEST_CASE("truncated exponential of a graded exponent") {
    DiffOp p0 = DiffOp::partial(0, Expr::constant(GaussianRational(1), Chart::minkowski, 2));
    DiffOp p1 = DiffOp::partial(1, Expr::constant(GaussianRational(1), Chart::minkowski, 2));
    BiOp ex = BiOp::tensor(p0, p1).scaled(GradedCoeff::symbol(Symbol::theta01, 2));
    CHECK(ex.min_term_degree() == 1);

    BiOp F = BiOp::exp_truncated(ex);
    Expr f = Expr::coordinate(0, Chart::minkowski, 2, 2);
    Expr g = Expr::coordinate(1, Chart::minkowski, 2, 2);

    Expr theta = Expr::symbol(Symbol::theta01, Chart::minkowski, 2);
    Expr expect = f * g +
                  theta * Expr::coordinate(0, Chart::minkowski, 2)
                        * Expr::coordinate(1, Chart::minkowski, 2).scaled(GaussianRational(4)) +
                  theta * theta * Expr::constant(GaussianRational(2), Chart::minkowski, 2);
    CHECK(F.apply(f, g) == expect);

    // degree-0 exponents cannot terminate
    CHECK_THROWS_AS(BiOp::exp_truncated(BiOp::tensor(p0, p1)), std::invalid_argument);

    // at order 1 the quadratic term is projected away
    DiffOp q0 = DiffOp::partial(0, Expr::constant(GaussianRational(1), Chart::minkowski, 1));
    DiffOp q1 = DiffOp::partial(1, Expr::constant(GaussianRational(1), Chart::minkowski, 1));
    BiOp ex1 = BiOp::tensor(q0, q1).scaled(GradedCoeff::symbol(Symbol::theta01, 1));
    CHECK(BiOp::exp_truncated(ex1) == BiOp::identity(Chart::minkowski, 1) + ex1);
}

TEST_CASE("operator guards") {
    DiffOp a(Chart::minkowski, 1);
    DiffOp b(Chart::rindler, 1);
    DiffOp c(Chart::minkowski, 2);
    CHECK_THROWS_AS(a.compose(b), std::invalid_argument);
    CHECK_THROWS_AS(a + c, std::invalid_argument);
    CHECK_THROWS_AS(DiffOp::partial(4, Expr::constant(GaussianRational(1), Chart::minkowski, 1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(BiOp::tensor(a, b), std::invalid_argument);

    Expr f = Expr::coordinate(0, Chart::minkowski, 1);
    Expr fr = Expr::coordinate(0, Chart::rindler, 1);
    CHECK_THROWS_AS(a.apply(fr), std::invalid_argument);
    CHECK_THROWS_AS(BiOp::identity(Chart::minkowski, 1).apply(f, fr), std::invalid_argument);
}
