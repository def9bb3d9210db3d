#pragma once

// Internal sparse module-vector representation and the Buchberger engine.
// A vector is a list of (position, monomial, coefficient) terms sorted
// descending in the module order.  Positions >= real_rank are "payload"
// positions used to track representations; every payload position is smaller
// than every real position, which makes the payload an elimination block.

#include <cstdint>
#include <vector>

#include "hacert/groebner.hpp"

namespace hacert::detail {

struct MTerm {
    Exponents exps;
    std::uint32_t pos;
    Rational coef;
};

using MVec = std::vector<MTerm>;

class TermOrder {
public:
    TermOrder(MonomialOrder mono, PositionRule rule, std::uint32_t real_rank)
        : mono_(mono), rule_(rule), real_rank_(real_rank) {}
    /// Term-over-position payload block compared by degree plus a per-position
    /// shift first, as in a Schreyer order.
    TermOrder(MonomialOrder mono, PositionRule rule, std::uint32_t real_rank, std::vector<std::int64_t> payload_shift)
        : mono_(mono), rule_(rule), real_rank_(real_rank), shift_(std::move(payload_shift)) {}

    std::strong_ordering compare(std::uint32_t pa, const Exponents& a, std::uint32_t pb, const Exponents& b) const;
    std::strong_ordering compare(const MTerm& a, const MTerm& b) const {
        return compare(a.pos, a.exps, b.pos, b.exps);
    }
    std::uint32_t real_rank() const noexcept { return real_rank_; }
    /// Degree of a term with its position shift.
    std::int64_t degree(std::uint32_t pos, const Exponents& e) const {
        const std::int64_t d = total_degree(e);
        return pos >= real_rank_ && pos - real_rank_ < shift_.size() ? d + shift_[pos - real_rank_] : d;
    }
    MonomialOrder monomial_order() const noexcept { return mono_; }

private:
    MonomialOrder mono_;
    PositionRule rule_;
    std::uint32_t real_rank_;
    std::vector<std::int64_t> shift_;
};

MVec to_mvec(const FreeVector& v, const TermOrder& order, std::uint32_t offset = 0);
void append_payload(MVec& v, const FreeVector& payload, const TermOrder& order, std::uint32_t offset);
/// Splits into the real part (positions < real_rank) and payload part (shifted down).
FreeVector real_part(const MVec& v, const RingPtr& ring, std::size_t real_rank);
FreeVector payload_part(const MVec& v, const RingPtr& ring, std::size_t real_rank, std::size_t payload_rank);

/// f - c * m * g, where g's terms are shifted by monomial m; terms of f before
/// index `from` are dropped.
MVec sub_scaled(const MVec& f, std::size_t from, const Rational& c, const Exponents& m, const MVec& g,
                const TermOrder& order);

class Engine {
public:
    enum class Mode {
        Plain,         // no payload
        DropSyzygies,  // payload tracks representations; payload-leading vectors are discarded
        KeepSyzygies,  // payload-leading vectors are kept: the syzygy module is computed too
    };

    Engine(TermOrder order, std::size_t nvars, Mode mode, bool ideal_case);

    void insert(MVec f);
    void complete();
    /// Reduced basis sorted descending by leading term.
    std::vector<MVec> reduced_basis();
    /// Full reduction of f by the current basis.
    MVec reduce(MVec f) const;

    std::uint64_t pairs_processed() const noexcept { return pairs_processed_; }

private:
    struct Element {
        MVec v;
        bool active;
    };
    struct Pair {
        std::size_t i, j;
        std::uint32_t pos;
        Exponents lcm;
        std::int64_t degree;
    };

    MVec reduce_head(MVec f) const;
    void add_element(MVec h);
    void update(std::size_t t);
    MVec s_vector(const Pair& p) const;
    int find_reducer(const MTerm& t) const;

    TermOrder order_;
    std::size_t nvars_;
    Mode mode_;
    bool ideal_case_;
    std::vector<Element> basis_;
    std::vector<Pair> pairs_;
    std::uint64_t pairs_processed_ = 0;
    std::uint64_t budget_;
};

/// Normal form of f against an already reduced basis (no pair processing).
MVec reduce_against(MVec f, const std::vector<MVec>& basis, const TermOrder& order);

}  // namespace hacert::detail
