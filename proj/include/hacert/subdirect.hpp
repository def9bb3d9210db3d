#pragma once

// Certification for a pair of submodules A, B of R^q: regularity (A ∩ B = 0),
// the interconnection module T = R^q/(A+B), projectivity of the torsion-free
// factor of M = R^q/A with an explicit section, complements of A containing B,
// and the splitting criterion for 0 -> S/B -> R^q/B -> T -> 0.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hacert/homology.hpp"

namespace hacert {

struct SubdirectInstance {
    RingPtr ring;
    std::size_t q = 0;
    Submodule A;
    Submodule B;

    /// Generators are the columns of a and b, each with q rows.
    static SubdirectInstance make(const PolyMatrix& a, const PolyMatrix& b);
};

bool check_regular(const SubdirectInstance& inst);
FPModule interconnection_module(const SubdirectInstance& inst);

/// Section of an epi, or nullopt when it does not split.  Throws if pi is not epi.
std::optional<Morphism> split_surjection(const Morphism& pi);

enum class FailureReason { None, NotRegular, GradeTooSmall, BudgetExceeded };
std::string to_string(FailureReason r);

struct Certificate {
    bool regular = false;
    FPModule T;
    GradeValue gradeT = GradeValue::infinite();
    bool hypothesis_met = false;
    Submodule torsion_preimage;  // A'
    FPModule tf_factor;          // R^q / A'
    bool projective = false;
    std::size_t rank = 0;
    std::optional<Morphism> section;  // of R^q -> R^q/A'
    bool stably_free_note = false;
    FailureReason failure_reason = FailureReason::None;

    // checks made when the hypothesis holds
    bool section_verified = false;
    bool torsion_meets_b_trivially = false;  // A' ∩ B == 0
    bool torsion_meets_sum_in_a = false;     // A' ∩ (A+B) == A
    bool quotient_grade_two = false;         // grade(R^q/(A'+B)) >= 2
};

/// budget caps S-pairs per basis computation (0 = unlimited).
Certificate certify(const SubdirectInstance& inst, std::uint64_t budget = 0);

struct ComplementResult {
    std::optional<Submodule> complement;  // B'
    FPModule ext_witness;                 // Ext^1(T, A)
    bool contains_b = false;
    bool meets_a_trivially = false;
    bool spans_with_a = false;
    bool projection_isomorphic = false;  // B' -> R^q/A is mono and epi
};
/// Requires A ∩ B == 0.
ComplementResult complement_above(const SubdirectInstance& inst);

struct AppendixReport {
    bool precondition = false;  // Ext^1(T, P) == 0
    bool splits = false;
    bool ext_vanishes = false;  // Ext^1(T, A) == 0
    std::optional<Morphism> section;
    FPModule ext_witness;
    bool equivalent() const noexcept { return splits == ext_vanishes; }
};
AppendixReport appendix_equivalence_check(const ShortExactSequence& ses, const FPModule& p);
/// 0 -> S/B -> R^q/B -> T -> 0 with P = R^q.  When A ∩ B == 0 the first term
/// is presented as A on its own basis.
AppendixReport appendix_equivalence_check(const SubdirectInstance& inst);
ShortExactSequence interconnection_sequence(const SubdirectInstance& inst);

/// Instance with A replaced by the torsion preimage A'.
SubdirectInstance after_torsion_quotient(const SubdirectInstance& inst, const Certificate& cert);

// ---- instance family ----

struct NamedInstance {
    std::string name;
    SubdirectInstance instance;
};

/// A = U (+) 0 in R^a (+) R^b with grade(R^a/U) >= 2, B = 0 (+) R^b, over
/// Q[x,y] and Q[x,y,z].
std::vector<NamedInstance> structured_family();

/// Product of `steps` elementary transvections I + c E_ij with c of degree <= 1.
PolyMatrix random_shear(const RingPtr& ring, std::size_t q, std::mt19937_64& rng, int steps = 6);
SubdirectInstance apply_shear(const SubdirectInstance& inst, const PolyMatrix& g);

}  // namespace hacert
