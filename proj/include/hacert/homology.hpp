#pragma once

// Resolutions, Ext, grade and the torsion theory of finitely presented modules.

#include <optional>
#include <string>
#include <vector>

#include "hacert/fpmod.hpp"

namespace hacert {

/// Nonnegative integer or infinity (the grade and codimension of the zero module).
class GradeValue {
public:
    static GradeValue finite(int v) { return GradeValue(v); }
    static GradeValue infinite() { return GradeValue(-1); }

    bool is_infinite() const noexcept { return value_ < 0; }
    int value() const;
    bool at_least(int c) const noexcept { return is_infinite() || value_ >= c; }
    std::string to_string() const { return is_infinite() ? "infinite" : std::to_string(value_); }

    friend bool operator==(GradeValue a, GradeValue b) noexcept { return a.value_ == b.value_; }

private:
    explicit GradeValue(int v) : value_(v) {}
    int value_;
};

/// 0 <- M <- R^{r0} <- R^{r1} <- ... <- R^{rl}.  differentials[i] is the
/// r_i x r_{i+1} matrix of d_{i+1}, acting on column vectors.
struct ResolutionComplex {
    FPModule module;
    std::vector<std::size_t> ranks;
    std::vector<PolyMatrix> differentials;
    /// The last differential is injective, so the complex stops here.
    bool complete = false;

    std::size_t length() const noexcept { return differentials.size(); }
    /// Consecutive differentials compose to zero, the first presents the
    /// module and each spot is exact.
    bool verify() const;
};

/// Resolution of M on its own generators, carried to `length` steps or until
/// a differential is injective.
ResolutionComplex free_resolution(const FPModule& m, std::size_t length);

FPModule ext(std::size_t i, const FPModule& m, const FPModule& n);
bool ext_vanishes(std::size_t i, const FPModule& m, const FPModule& n);

GradeValue grade(const FPModule& t);

/// The ideal {r : r*T = 0} as a submodule of R^1.
Submodule annihilator(const FPModule& t);
/// n minus the dimension of R/Ann(T); polynomial backend only.
GradeValue codimension(const FPModule& t);

/// coker of the transposed presentation matrix.
FPModule auslander_dual(const FPModule& m);

struct Torsion {
    Morphism inclusion;  // tor(M) -> M
    /// Preimage of tor(M) in the free cover R^g of M; contains the relations.
    Submodule preimage;
};
Torsion torsion_submodule(const FPModule& m);

/// Agreement between ker(eps_M) and Ext^1(A(M), R), judged by invariants.
struct TorsionCrossCheck {
    bool generators_torsion = false;   // each generator of ker eps has nonzero annihilator
    bool quotient_torsionless = false; // M / ker eps has injective evaluation map
    bool annihilators_agree = false;
    bool fitting_ideals_agree = false;
    bool ok() const noexcept {
        return generators_torsion && quotient_torsionless && annihilators_agree && fitting_ideals_agree;
    }
};
TorsionCrossCheck torsion_cross_check(const FPModule& m);

/// Epi M -> M/tor(M).
Morphism torsionfree_factor(const FPModule& m);

class NotTorsionFree : public std::invalid_argument {
public:
    NotTorsionFree(const std::string& what, Submodule witness)
        : std::invalid_argument(what), witness_(std::move(witness)) {}
    /// Preimage of the nonzero torsion submodule.
    const Submodule& witness() const noexcept { return witness_; }

private:
    Submodule witness_;
};

/// Mono M -> R^s for torsion-free M; throws NotTorsionFree otherwise.
Morphism free_embedding(const FPModule& m);

/// Determinant by fraction-free elimination.
Polynomial determinant(const PolyMatrix& m);
/// Rank over the field of fractions.
std::size_t fraction_rank(const PolyMatrix& m);
/// Ideal generated by the k x k minors, as a submodule of R^1 (zero if k exceeds a side, R if k == 0).
Submodule minor_ideal(const PolyMatrix& m, std::size_t k);
/// Fitt_j(M): ideal of (g - j)-minors of the presentation matrix.
Submodule fitting_ideal(const FPModule& m, std::size_t j);

struct ProjectivityVerdict {
    bool projective = false;
    std::size_t rank = 0;
};
/// Constant-rank criterion: Fitt_r(M) == R where r is the generic rank.
ProjectivityVerdict is_projective(const FPModule& m);

}  // namespace hacert
