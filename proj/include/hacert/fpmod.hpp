#pragma once

// Finitely presented modules and the morphisms between them.
//
// A module is coker(R^r -> R^g): g generators and a g x r relation matrix
// whose columns are relations, kept as a reduced basis.  An element is a
// coordinate vector in R^g.  A morphism M -> N is a g_M x g_N matrix whose
// row i is the image of generator i, so an element v maps to matrix^T * v and
// the composite g o f has matrix F * G.

#include <memory>
#include <optional>
#include <stdexcept>

#include "hacert/groebner.hpp"

namespace hacert {

class NotWellDefined : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Submodule of R^q stored as a reduced basis.
class Submodule {
public:
    Submodule() = default;
    Submodule(const PolyMatrix& generators);

    static Submodule zero(RingPtr ring, std::size_t q);
    static Submodule whole(RingPtr ring, std::size_t q);

    const RingPtr& ring() const noexcept { return basis_.ring(); }
    std::size_t rank() const noexcept { return basis_.rank(); }
    const GroebnerBasis& basis() const noexcept { return basis_; }
    PolyMatrix matrix() const { return basis_.matrix(); }
    bool is_zero() const noexcept { return basis_.empty(); }

    bool contains(const FreeVector& v) const { return hacert::contains(basis_, v); }
    bool contains(const Submodule& other) const;
    FreeVector reduce(const FreeVector& v) const { return normal_form(v, basis_); }

    friend bool operator==(const Submodule& a, const Submodule& b) { return a.contains(b) && b.contains(a); }
    friend Submodule operator+(const Submodule& a, const Submodule& b);

private:
    GroebnerBasis basis_;
};

Submodule intersect(const Submodule& a, const Submodule& b);

class FPModule {
public:
    FPModule() = default;

    /// Standardizes the relations; relations.rows() must equal g.
    static FPModule present(const PolyMatrix& relations, std::size_t g);
    static FPModule free(RingPtr ring, std::size_t g);
    static FPModule zero(RingPtr ring);
    /// R^q / sub.
    static FPModule quotient(const Submodule& sub);
    /// The submodule of R^g / rel generated by the columns of gens, presented
    /// on those generators.
    static FPModule subquotient(const PolyMatrix& gens, const Submodule& rel);

    const RingPtr& ring() const noexcept { return relations_.ring(); }
    std::size_t generators() const noexcept { return relations_.rank(); }
    PolyMatrix relations() const { return relations_.matrix(); }
    const Submodule& relation_module() const noexcept { return relations_; }

    /// Every generator is killed by the relations.
    bool is_zero() const;
    /// Coordinates equal as elements of the module.
    bool same_element(const FreeVector& a, const FreeVector& b) const;
    bool is_zero_element(const FreeVector& v) const { return relations_.contains(v); }
    FreeVector reduce(const FreeVector& v) const { return relations_.reduce(v); }

    /// Identical standardized presentation (not isomorphism).
    friend bool operator==(const FPModule& a, const FPModule& b);

private:
    Submodule relations_;
};

class Morphism {
public:
    Morphism() = default;

    /// Computes the well-definedness witness; throws NotWellDefined when some
    /// relation of the source does not map into the target relations.
    static Morphism make(const FPModule& source, const FPModule& target, const PolyMatrix& matrix);
    /// Checks matrix^T * Rel_source == Rel_target * witness exactly.
    static Morphism with_witness(const FPModule& source, const FPModule& target, const PolyMatrix& matrix,
                                 const PolyMatrix& witness);
    static Morphism identity(const FPModule& m);
    static Morphism zero(const FPModule& source, const FPModule& target);

    const FPModule& source() const noexcept { return source_; }
    const FPModule& target() const noexcept { return target_; }
    const PolyMatrix& matrix() const noexcept { return matrix_; }
    /// Columns express the images of the source relations over the target relations.
    const PolyMatrix& witness() const noexcept { return witness_; }

    FreeVector operator()(const FreeVector& element) const;
    /// `next` after this.
    Morphism then(const Morphism& next) const;
    bool is_zero() const;
    bool equals(const Morphism& other) const;

private:
    FPModule source_;
    FPModule target_;
    PolyMatrix matrix_;
    PolyMatrix witness_;
};

/// next o first.
inline Morphism compose(const Morphism& next, const Morphism& first) { return first.then(next); }

/// Mono K -> source with image ker f.
Morphism kernel(const Morphism& f);
/// Epi target -> C.
Morphism cokernel(const Morphism& f);

struct ImageFactorization {
    Morphism epi;   // source -> I
    Morphism mono;  // I -> target
};
ImageFactorization image(const Morphism& f);

bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);

struct DirectSum {
    FPModule module;
    Morphism in1, in2, pr1, pr2;
};
DirectSum direct_sum(const FPModule& m, const FPModule& n);

struct Pullback {
    FPModule module;
    Morphism to_first;   // P -> M
    Morphism to_second;  // P -> N
};
/// Fiber product of p: M -> T and q: N -> T.
Pullback pullback(const Morphism& p, const Morphism& q);

struct Dual {
    FPModule module;
    /// g x s; column j lists the values of the j-th generating functional on
    /// the generators of the original module.
    PolyMatrix functionals;
};
Dual dual(const FPModule& m);
/// f*: N* -> M* for f: M -> N, with respect to the given duals.
Morphism dual(const Morphism& f, const Dual& source_dual, const Dual& target_dual);
Morphism dual(const Morphism& f);

/// eps_M: M -> M**, with M** presented as dual(dual(M).module).
Morphism evaluation_map(const FPModule& m);

/// h: X -> Y with g o h == f, or nullopt if none exists.
std::optional<Morphism> solve_lift(const Morphism& f, const Morphism& g);

struct ShortExactSequence {
    Morphism mono;  // A -> N
    Morphism epi;   // N -> T

    /// mono is mono, epi is epi, their composite is zero and im mono == ker epi.
    bool verify() const;
};

struct Simplification {
    FPModule module;
    Morphism to;    // M -> module, an isomorphism
    Morphism from;  // module -> M, its inverse
};
/// Eliminates generators that are a unit multiple of a relation entry.
Simplification simplify(const FPModule& m);

}  // namespace hacert
