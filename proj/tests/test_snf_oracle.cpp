#include "doctest.h"
#include "support.hpp"

#include "hacert/snf_oracle.hpp"

using namespace hacert;
using namespace hacert::testing;

namespace {

IntMatrix ints(std::size_t r, std::size_t c, const std::vector<long>& entries) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entries[i * c + j];
    return m;
}

// Bareiss determinant over Z, written independently of the library's version
Integer int_det(IntMatrix a) {
    const std::size_t n = a.rows();
    Integer prev = 1, sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a.at(p, k) == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return n == 0 ? Integer(1) : Integer(sign * a.at(n - 1, n - 1));
}

IntMatrix random_ints(Rng& rng, std::size_t r, std::size_t c, long bound) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = uniform(rng, -bound, bound);
    return m;
}

PolyMatrix to_poly(const IntMatrix& m) {
    auto Z = zz();
    PolyMatrix out(Z, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = Polynomial(Z, Rational(m.at(i, j)));
    return out;
}

void check_decomposition(const IntMatrix& a) {
    const auto s = smith_normal_form(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(abs(int_det(s.U)) == 1);
    CHECK(abs(int_det(s.V)) == 1);
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D.at(i, j) == 0);
    for (std::size_t k = 0; k + 1 < s.diagonal.size(); ++k) {
        CHECK(s.diagonal[k] >= 0);
        if (s.diagonal[k] == 0) CHECK(s.diagonal[k + 1] == 0);
        else CHECK(s.diagonal[k + 1] % s.diagonal[k] == 0);
    }
}

}  // namespace

TEST_CASE("smith_normal_form examples") {
    auto id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.D == IntMatrix::identity(3));
    auto s = smith_normal_form(ints(2, 2, {2, 4, 6, 8}));
    CHECK(s.diagonal == std::vector<Integer>{2, 4});
    auto z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.D == IntMatrix(2, 3));
    check_decomposition(ints(2, 2, {2, 4, 6, 8}));
    check_decomposition(ints(2, 3, {2, 0, 0, 0, 3, 0}));  // diag(2, 3) needs the divisibility step
    CHECK(smith_normal_form(ints(2, 2, {2, 0, 0, 3})).diagonal == std::vector<Integer>{1, 6});
    check_decomposition(IntMatrix(0, 3));
}

TEST_CASE("smith_normal_form invariants on random matrices") {
    Rng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = static_cast<std::size_t>(uniform(rng, 1, 5)), c = static_cast<std::size_t>(uniform(rng, 1, 6));
        check_decomposition(random_ints(rng, r, c, 20));
    }
}

TEST_CASE("oracle_homology examples") {
    // Z (+) Z/6
    auto h = oracle_homology(ints(2, 1, {0, 6}));
    CHECK(h.module.free_rank == 1);
    CHECK(h.torsion == std::vector<Integer>{6});
    CHECK(h.dual_rank == 1);
    CHECK(h.ext1 == std::vector<Integer>{6});
    CHECK(h.grade == GradeValue::finite(0));

    auto z4 = oracle_homology(ints(1, 1, {4}));
    CHECK(z4.grade == GradeValue::finite(1));
    CHECK(z4.torsion == std::vector<Integer>{4});
    CHECK(oracle_homology(ints(1, 1, {1})).grade.is_infinite());
    CHECK(oracle_homology(IntMatrix(0, 0)).grade.is_infinite());
}

TEST_CASE("oracle_splits examples") {
    auto z2 = ints(1, 1, {2});
    CHECK_FALSE(oracle_splits(z2, ints(1, 1, {4}), z2));
    CHECK(oracle_splits(z2, ints(2, 2, {2, 0, 0, 2}), z2));
    auto a = ints(2, 1, {0, 3});
    auto t = ints(1, 1, {5});
    CHECK(oracle_splits(a, ints(3, 2, {0, 0, 3, 0, 0, 5}), t));
}

TEST_CASE("pipeline agrees with the oracle on random presentations") {
    auto Z = zz();
    Rng rng(67);
    for (int trial = 0; trial < 60; ++trial) {
        const auto g = static_cast<std::size_t>(uniform(rng, 1, 5)), r = static_cast<std::size_t>(uniform(rng, 0, 6));
        const IntMatrix raw = random_ints(rng, g, r, 20);
        const auto oracle = oracle_homology(raw);
        const FPModule m = FPModule::present(to_poly(raw), g);

        const auto tor = torsion_submodule(m).inclusion.source();
        CHECK(abelian_invariants(tor) == AbelianInvariants{0, oracle.torsion});
        CHECK(abelian_invariants(dual(m).module) == AbelianInvariants{oracle.dual_rank, {}});
        CHECK(abelian_invariants(ext(1, m, FPModule::free(Z, 1))) == AbelianInvariants{0, oracle.ext1});
        CHECK(grade(m) == oracle.grade);

        // eps at Z: kernel is the finite part, and the torsion-free factor is reflexive
        const auto tf = torsionfree_factor(m).target();
        CHECK(abelian_invariants(tf) == AbelianInvariants{oracle.module.free_rank, {}});
        const auto eps = evaluation_map(tf);
        CHECK(is_mono(eps));
        CHECK(is_epi(eps));
    }
}

TEST_CASE("splitting over Z matches the oracle") {
    auto Z = zz();
    // 0 -> Z/2 -> Z/4 -> Z/2 -> 0 and 0 -> Z/2 -> Z/2 (+) Z/2 -> Z/2 -> 0
    auto z2 = FPModule::present(to_poly(ints(1, 1, {2})), 1);
    auto z4 = FPModule::present(to_poly(ints(1, 1, {4})), 1);
    ShortExactSequence nonsplit{Morphism::make(z2, z4, to_poly(ints(1, 1, {2}))),
                                Morphism::make(z4, z2, to_poly(ints(1, 1, {1})))};
    REQUIRE(nonsplit.verify());
    CHECK_FALSE(oracle_splits(nonsplit));
    CHECK_FALSE(solve_lift(Morphism::identity(z2), nonsplit.epi).has_value());

    auto sum = direct_sum(z2, z2);
    ShortExactSequence split{sum.in1, sum.pr2};
    REQUIRE(split.verify());
    CHECK(oracle_splits(split));
    CHECK(solve_lift(Morphism::identity(z2), split.epi).has_value());
}
