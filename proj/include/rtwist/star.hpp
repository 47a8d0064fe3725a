#pragma once

#include "rtwist/twist.hpp"

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rtwist {

inline TwistFactor build_twist_factor(const TwistCase& spec, Chart chart, int order) {
    return chart == Chart::minkowski ? build_minkowski_twist(spec, order)
                                     : build_rindler_zfactor(spec, order);
}

inline Expr star_product(const Expr& f, const Expr& g, const TwistFactor& factor) {
    return factor.star_factor.apply(f, g);
}

inline Expr star_product(const Expr& f, const Expr& g, const TwistCase& spec, Chart chart,
                         int order) {
    return star_product(f, g, build_twist_factor(spec, chart, order));
}

inline Expr star_commutator(const Expr& f, const Expr& g, const TwistFactor& factor) {
    return star_product(f, g, factor) - star_product(g, f, factor);
}

inline Expr star_commutator(const Expr& f, const Expr& g, const TwistCase& spec, Chart chart,
                            int order) {
    TwistFactor factor = build_twist_factor(spec, chart, order);
    return star_commutator(f, g, factor);
}

// Coordinate commutators [z_mu, z_nu]_star for the six independent pairs.
struct CommutatorTable {
    TwistCase spec;
    Chart chart = Chart::minkowski;
    int order = 1;
    std::map<std::pair<int, int>, Expr> entries;  // keyed mu < nu

    // antisymmetric accessor
    Expr entry(int mu, int nu) const {
        if (mu < 0 || mu > 3 || nu < 0 || nu > 3)
            throw std::invalid_argument("CommutatorTable::entry: index out of range");
        if (mu == nu) return Expr::zero(chart, order);
        if (mu < nu) return entries.at({mu, nu});
        return -entries.at({nu, mu});
    }
};

inline CommutatorTable commutator_table(const TwistCase& spec, Chart chart, int order) {
    TwistFactor factor = build_twist_factor(spec, chart, order);
    CommutatorTable t;
    t.spec = spec;
    t.chart = chart;
    t.order = order;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = mu + 1; nu < 4; ++nu) {
            Expr com = star_commutator(Expr::coordinate(mu, chart, order),
                                       Expr::coordinate(nu, chart, order), factor);
            if (!com.classical_part().is_zero())
                throw std::logic_error("commutator_table: undeformed part leaked into a commutator");
            t.entries.emplace(std::make_pair(mu, nu), std::move(com));
        }
    return t;
}

// Does the table depend on the truncation order?  The flat-chart tables must
// not (their closed forms are exact); the wedge-chart ones are only defined
// through the linearized factor, so differences there are reported, not
// failed.
struct TruncationReport {
    TwistCase spec;
    Chart chart = Chart::minkowski;
    struct Entry {
        int mu = 0, nu = 0;
        int order = 2;       // order compared against the N=1 table
        bool changed = false;
    };
    std::vector<Entry> entries;

    bool any_changed() const {
        for (const auto& e : entries)
            if (e.changed) return true;
        return false;
    }
};

inline TruncationReport truncation_stability_check(const TwistCase& spec, Chart chart, int n_max) {
    if (n_max < 2)
        throw std::invalid_argument("truncation_stability_check: n_max must be at least 2");
    CommutatorTable base = commutator_table(spec, chart, 1);
    TruncationReport report;
    report.spec = spec;
    report.chart = chart;
    for (int n = 2; n <= n_max; ++n) {
        CommutatorTable t = commutator_table(spec, chart, n);
        for (const auto& [key, e] : t.entries) {
            TruncationReport::Entry r;
            r.mu = key.first;
            r.nu = key.second;
            r.order = n;
            r.changed = !(e == base.entries.at(key).with_order(n));
            report.entries.push_back(r);
        }
    }
    return report;
}

}  // namespace rtwist
