#pragma once

#include "rtwist/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace rtwist {

// Formal deformation symbols.  theta_{mu nu} is kept with mu < nu; the
// antisymmetric partner theta_{nu mu} is represented as -theta_{mu nu}.
// The three kappa-type symbols are the *inverse* scales 1/kappa, 1/kappa_hat,
// 1/kappa_bar, so that every deformed term has positive grading degree.
enum class Symbol : int {
    theta01 = 0,
    theta02,
    theta03,
    theta12,
    theta13,
    theta23,
    inv_kappa,
    inv_kappa_hat,
    inv_kappa_bar,
};

inline constexpr int symbol_count = 9;

inline Symbol theta_symbol(int mu, int nu) {
    if (mu < 0 || nu < 0 || mu > 3 || nu > 3 || mu >= nu)
        throw std::invalid_argument("theta_symbol: need 0 <= mu < nu <= 3");
    static constexpr int index[4][4] = {{-1, 0, 1, 2}, {-1, -1, 3, 4}, {-1, -1, -1, 5}, {-1, -1, -1, -1}};
    return static_cast<Symbol>(index[mu][nu]);
}

inline const char* symbol_name(Symbol s) {
    static constexpr const char* names[symbol_count] = {
        "theta01", "theta02", "theta03", "theta12", "theta13", "theta23",
        "inv_kappa", "inv_kappa_hat", "inv_kappa_bar",
    };
    return names[static_cast<int>(s)];
}

// Human-facing (table mode) rendering only; machine output stays ASCII.
inline const char* symbol_name_pretty(Symbol s) {
    static constexpr const char* names[symbol_count] = {
        "θ₀₁", "θ₀₂", "θ₀₃",
        "θ₁₂", "θ₁₃", "θ₂₃",
        "1/κ", "1/κ̂", "1/κ̄",
    };
    return names[static_cast<int>(s)];
}

using SymbolExponents = std::array<std::uint8_t, symbol_count>;

inline int total_degree(const SymbolExponents& e) {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

// Numeric values for the deformation symbols, used by eval().
using SymbolValues = std::array<double, symbol_count>;

// Polynomial in the deformation symbols, truncated at total degree `order`.
// Terms beyond the truncation order are dropped on every operation, i.e. we
// work in the quotient by the ideal generated by degree order+1 monomials.
struct GradedCoeff {
    int order = 1;
    std::map<SymbolExponents, GaussianRational> terms;

    static GradedCoeff zero(int order) { return GradedCoeff{order, {}}; }

    static GradedCoeff scalar(GaussianRational c, int order) {
        GradedCoeff g{order, {}};
        if (!c.is_zero()) g.terms[SymbolExponents{}] = std::move(c);
        return g;
    }

    static GradedCoeff one(int order) { return scalar(GaussianRational(1), order); }

    static GradedCoeff symbol(Symbol s, int order) {
        if (order < 1) throw std::invalid_argument("GradedCoeff::symbol: order < 1");
        SymbolExponents e{};
        e[static_cast<int>(s)] = 1;
        GradedCoeff g{order, {}};
        g.terms[e] = GaussianRational(1);
        return g;
    }

    bool is_zero() const { return terms.empty(); }

    // Smallest total degree among surviving terms; order+1 when empty.
    int min_degree() const {
        int d = order + 1;
        for (const auto& [e, c] : terms) {
            int t = total_degree(e);
            if (t < d) d = t;
        }
        return d;
    }

    // Degree-0 (classical) part.
    GaussianRational constant_part() const {
        auto it = terms.find(SymbolExponents{});
        return it == terms.end() ? GaussianRational() : it->second;
    }

    void prune() {
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->second.is_zero())
                it = terms.erase(it);
            else
                ++it;
        }
    }

    GradedCoeff& operator+=(const GradedCoeff& o) {
        require_same_order(o);
        for (const auto& [e, c] : o.terms) {
            auto [it, fresh] = terms.try_emplace(e, c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) terms.erase(it);
            }
        }
        return *this;
    }

    GradedCoeff operator-() const {
        GradedCoeff g{order, terms};
        for (auto& [e, c] : g.terms) c = -c;
        return g;
    }

    friend GradedCoeff operator+(GradedCoeff a, const GradedCoeff& b) { return a += b; }
    friend GradedCoeff operator-(GradedCoeff a, const GradedCoeff& b) { return a += -b; }

    friend GradedCoeff operator*(const GradedCoeff& a, const GradedCoeff& b) {
        a.require_same_order(b);
        GradedCoeff g{a.order, {}};
        for (const auto& [ea, ca] : a.terms) {
            int da = total_degree(ea);
            for (const auto& [eb, cb] : b.terms) {
                if (da + total_degree(eb) > a.order) continue;
                SymbolExponents e = ea;
                for (int k = 0; k < symbol_count; ++k) e[k] = static_cast<std::uint8_t>(e[k] + eb[k]);
                GaussianRational prod = ca * cb;
                auto [it, fresh] = g.terms.try_emplace(e, prod);
                if (!fresh) {
                    it->second += prod;
                    if (it->second.is_zero()) g.terms.erase(it);
                }
            }
        }
        return g;
    }

    GradedCoeff scaled(const GaussianRational& c) const {
        if (c.is_zero()) return zero(order);
        GradedCoeff g{order, terms};
        for (auto& [e, v] : g.terms) v *= c;
        return g;
    }

    friend bool operator==(const GradedCoeff& a, const GradedCoeff& b) {
        return a.order == b.order && a.terms == b.terms;
    }

    // Set the listed symbols to zero (used by the deformation-limit checks).
    // reinterpret at a different truncation order; lowering the order drops
    // the now-overweight terms
    GradedCoeff with_order(int new_order) const {
        GradedCoeff out = zero(new_order);
        for (const auto& [e, c] : terms)
            if (total_degree(e) <= new_order) out.terms.emplace(e, c);
        return out;
    }

    GradedCoeff without(std::initializer_list<Symbol> dropped) const {
        GradedCoeff g{order, {}};
        for (const auto& [e, c] : terms) {
            bool hit = false;
            for (Symbol s : dropped)
                if (e[static_cast<int>(s)] > 0) hit = true;
            if (!hit) g.terms.emplace(e, c);
        }
        return g;
    }

    std::complex<double> eval(const SymbolValues& vals) const {
        std::complex<double> acc{0.0, 0.0};
        for (const auto& [e, c] : terms) {
            double m = 1.0;
            for (int k = 0; k < symbol_count; ++k)
                for (int p = 0; p < e[k]; ++p) m *= vals[k];
            acc += c.to_complex() * m;
        }
        return acc;
    }

    std::string str(bool pretty = false) const {
        if (terms.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [e, c] : terms) {
            std::string mono;
            for (int k = 0; k < symbol_count; ++k)
                for (int p = 0; p < e[k]; ++p) {
                    if (!mono.empty()) mono += "*";
                    mono += pretty ? symbol_name_pretty(static_cast<Symbol>(k))
                                   : symbol_name(static_cast<Symbol>(k));
                }
            std::string piece;
            if (mono.empty())
                piece = c.str();
            else if (c == GaussianRational(1))
                piece = mono;
            else if (c == GaussianRational(-1))
                piece = "-" + mono;
            else
                piece = c.str() + "*" + mono;
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
    void require_same_order(const GradedCoeff& o) const {
        if (order != o.order)
            throw std::invalid_argument("GradedCoeff: truncation-order mismatch");
    }
};

}  // namespace rtwist
