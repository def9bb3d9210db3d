#pragma once

// Shared helpers for the test binaries: terse constructors and seeded random
// generators of polynomials, vectors and matrices.

#include <random>
#include <string>
#include <vector>

#include "hacert/fpmod.hpp"
#include "hacert/ring.hpp"

namespace hacert::testing {

inline RingPtr qq(std::vector<std::string> vars) { return RingDescriptor::polynomial(std::move(vars)); }
inline RingPtr zz() { return RingDescriptor::integers(); }

inline Polynomial poly(const RingPtr& R, const std::string& s) { return Polynomial::parse(s, R); }

inline FreeVector vec(const RingPtr& R, const std::vector<std::string>& entries) {
    FreeVector v;
    for (const auto& e : entries) v.push_back(poly(R, e));
    return v;
}

/// Matrix whose columns are the given vectors.
inline PolyMatrix cols(const RingPtr& R, std::size_t rows, const std::vector<std::vector<std::string>>& columns) {
    std::vector<FreeVector> vs;
    for (const auto& c : columns) vs.push_back(vec(R, c));
    return PolyMatrix::from_columns(R, rows, vs);
}

inline PolyMatrix rows(const RingPtr& R, std::size_t ncols, const std::vector<std::vector<std::string>>& rs) {
    std::vector<FreeVector> vs;
    for (const auto& r : rs) vs.push_back(vec(R, r));
    return PolyMatrix::from_rows(R, ncols, vs);
}

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Random polynomial with at most `max_terms` terms of total degree <= max_degree
/// and integer coefficients in [-coef, coef].
inline Polynomial random_poly(const RingPtr& R, Rng& rng, int max_degree, int max_terms, long coef = 5) {
    if (R->is_integers()) return Polynomial(R, Rational(uniform(rng, -coef, coef)));
    std::vector<Term> terms;
    const int nterms = static_cast<int>(uniform(rng, 0, max_terms));
    for (int t = 0; t < nterms; ++t) {
        Exponents e(R->nvars(), 0);
        int budget = static_cast<int>(uniform(rng, 0, max_degree));
        for (int k = 0; k < budget; ++k) e[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(R->nvars()) - 1))]++;
        terms.push_back(Term{e, Rational(uniform(rng, -coef, coef))});
    }
    return Polynomial::from_terms(R, std::move(terms));
}

inline FreeVector random_vector(const RingPtr& R, Rng& rng, std::size_t n, int max_degree, int max_terms, long coef = 5) {
    FreeVector v(n);
    for (auto& p : v) p = random_poly(R, rng, max_degree, max_terms, coef);
    return v;
}

inline PolyMatrix random_matrix(const RingPtr& R, Rng& rng, std::size_t r, std::size_t c, int max_degree, int max_terms,
                                long coef = 5) {
    PolyMatrix m(R, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = random_poly(R, rng, max_degree, max_terms, coef);
    return m;
}

/// R^g modulo a few random relations.
inline FPModule random_module(const RingPtr& R, Rng& rng, std::size_t g, std::size_t max_rel, int max_degree = 2,
                              int max_terms = 2) {
    const auto r = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(max_rel)));
    return FPModule::present(random_matrix(R, rng, g, r, max_degree, max_terms, 3), g);
}

/// A random well-defined morphism into `target`: pick the matrix first, then
/// take the source relations among those the matrix respects.
inline Morphism random_morphism_into(const FPModule& target, Rng& rng, std::size_t g, int max_degree = 1) {
    const auto& R = target.ring();
    const PolyMatrix F = random_matrix(R, rng, g, target.generators(), max_degree, 2, 3);
    const PolyMatrix syz = syzygies(F.transpose().hstack(target.relations()));
    std::vector<std::size_t> top(g);
    for (std::size_t i = 0; i < g; ++i) top[i] = i;
    const PolyMatrix allowed = syz.select_rows(top);
    std::vector<FreeVector> rels;
    for (std::size_t j = 0; j < allowed.cols(); ++j)
        if (uniform(rng, 0, 2) > 0) rels.push_back(allowed.column(j));
    return Morphism::make(FPModule::present(PolyMatrix::from_columns(R, g, rels), g), target, F);
}

}  // namespace hacert::testing
