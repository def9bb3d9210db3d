#pragma once

// Closed-form answers for finitely generated abelian groups via the Smith
// normal form.  Works on plain integer matrices and shares no code with the
// Gröbner/Hermite engine.

#include <vector>

#include "hacert/homology.hpp"

namespace hacert {

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    static IntMatrix identity(std::size_t n);
    /// Entries of an integer-backend PolyMatrix.
    static IntMatrix from_poly(const PolyMatrix& m);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

struct SmithDecomposition {
    IntMatrix U, V, D;  // U * A * V == D
    /// d_1 | d_2 | ... ; zeros last.
    std::vector<Integer> diagonal;
};
SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Z^free_rank (+) sum of Z/d for d in torsion (each d > 1, divisibility chain).
struct AbelianInvariants {
    std::size_t free_rank = 0;
    std::vector<Integer> torsion;
    friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};
/// Invariants of coker of a g x r relation matrix (columns are relations).
AbelianInvariants abelian_invariants(const IntMatrix& relations);
AbelianInvariants abelian_invariants(const FPModule& m);

struct OracleHomology {
    AbelianInvariants module;
    std::vector<Integer> torsion;  // tor(M)
    std::size_t dual_rank = 0;     // M* is free of this rank
    std::vector<Integer> ext1;     // Ext^1(M, Z)
    GradeValue grade = GradeValue::infinite();
};
OracleHomology oracle_homology(const IntMatrix& relations);
OracleHomology oracle_homology(const FPModule& m);

/// N isomorphic to A (+) T, judged by invariant factors.
bool oracle_splits(const IntMatrix& a_rel, const IntMatrix& n_rel, const IntMatrix& t_rel);
bool oracle_splits(const ShortExactSequence& ses);

}  // namespace hacert
