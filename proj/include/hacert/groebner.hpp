#pragma once

// Submodule computations in free modules R^q: Gröbner bases (Buchberger over
// Q[x1..xn]; Hermite normal form over Z), normal forms, syzygies, lifts,
// intersections and leading-term dimension.
//
// Generator lists are passed as matrices whose columns are the generators;
// the matrix row count is the ambient rank q.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>

#include "hacert/ring.hpp"

namespace hacert {

enum class PositionRule { PositionOverTerm, TermOverPosition };

struct ModuleOrder {
    MonomialOrder base = MonomialOrder::Degrevlex;
    PositionRule rule = PositionRule::PositionOverTerm;
    std::size_t rank = 0;
};

ModuleOrder default_order(const RingPtr& ring, std::size_t rank);

class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(std::uint64_t budget)
        : std::runtime_error("budget exceeded: more than " + std::to_string(budget) + " S-pairs") {}
};

/// Caps the number of S-pairs any single basis computation on this thread may
/// process.  Restores the previous cap on destruction.  Zero means unlimited.
class ScopedBudget {
public:
    explicit ScopedBudget(std::uint64_t max_pairs);
    ~ScopedBudget();
    ScopedBudget(const ScopedBudget&) = delete;
    ScopedBudget& operator=(const ScopedBudget&) = delete;

    static std::uint64_t current() noexcept;

private:
    std::uint64_t previous_;
};

namespace detail {
struct BasisData;
}

/// Reduced Gröbner basis (or reduced Hermite basis over Z) of a submodule.
class GroebnerBasis {
public:
    const RingPtr& ring() const noexcept { return ring_; }
    const ModuleOrder& order() const noexcept { return order_; }
    std::size_t rank() const noexcept { return order_.rank; }
    const std::vector<FreeVector>& generators() const noexcept { return generators_; }
    std::size_t size() const noexcept { return generators_.size(); }
    bool empty() const noexcept { return generators_.empty(); }
    bool reduced() const noexcept { return true; }
    PolyMatrix matrix() const { return PolyMatrix::from_columns(ring_, order_.rank, generators_); }

    /// Leading position and exponent vector of generator i (polynomial backend).
    std::pair<std::size_t, Exponents> leading_monomial(std::size_t i) const;

private:
    friend GroebnerBasis buchberger(const PolyMatrix&, const ModuleOrder&);
    friend FreeVector normal_form(const FreeVector&, const GroebnerBasis&);
    friend class Lifter;
    friend bool satisfies_buchberger_criterion(const GroebnerBasis&);

    RingPtr ring_;
    ModuleOrder order_;
    std::vector<FreeVector> generators_;
    std::shared_ptr<const detail::BasisData> data_;
};

GroebnerBasis buchberger(const PolyMatrix& gens, const ModuleOrder& order);
GroebnerBasis buchberger(const PolyMatrix& gens);

/// Fully reduced remainder; zero iff v lies in the submodule.
FreeVector normal_form(const FreeVector& v, const GroebnerBasis& gb);
bool contains(const GroebnerBasis& gb, const FreeVector& v);

/// Generators of the module of relations among the columns of mat, as the
/// columns of the result (mat * result == 0), in reduced form.
PolyMatrix syzygies(const PolyMatrix& mat);

/// Expresses vectors in terms of a fixed generator list.  Construction runs
/// one tracked basis computation; each call is a reduction.
class Lifter {
public:
    explicit Lifter(const PolyMatrix& gens);
    /// Coefficients c with gens * c == target, or nullopt if target is outside the span.
    std::optional<FreeVector> operator()(const FreeVector& target) const;
    const GroebnerBasis& basis() const noexcept { return basis_; }

private:
    PolyMatrix gens_;
    GroebnerBasis basis_;
    std::vector<FreeVector> transform_;  // basis element k == gens * transform_[k]
};

std::optional<FreeVector> lift(const FreeVector& target, const PolyMatrix& gens);

/// Generators of {c : phi * c lies in the column span of rel}, i.e. the top
/// block of syzygies(phi | rel), computed without coordinates for rel.
PolyMatrix syzygies_modulo(const PolyMatrix& phi, const PolyMatrix& rel);

/// Drops columns lying in the span of the remaining ones, last first.
PolyMatrix prune_columns(const PolyMatrix& m);

/// Generators of the intersection of the column spans of U and V.
PolyMatrix submodule_intersect(const PolyMatrix& U, const PolyMatrix& V);
bool submodule_equal(const PolyMatrix& U, const PolyMatrix& V);
/// Column span of `sub` contained in column span of `sup`.
bool submodule_contains(const PolyMatrix& sup, const PolyMatrix& sub);

/// Krull dimension of R/(leading-term ideal) for a basis of an ideal (rank 1);
/// -1 for the unit ideal.
int lt_dimension(const GroebnerBasis& gb);

/// Post-hoc Buchberger criterion: every S-vector of two basis elements reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& gb);

}  // namespace hacert
