#include "hacert/groebner.hpp"

#include <algorithm>
#include <bit>

#include "buchberger.hpp"
#include "hermite.hpp"

namespace hacert {

namespace detail {

struct BasisData {
    TermOrder order{MonomialOrder::Degrevlex, PositionRule::PositionOverTerm, 0};
    std::vector<MVec> vecs;  // polynomial backend
    HermiteForm hermite;     // integer backend
};

}  // namespace detail

using detail::Engine;
using detail::MVec;
using detail::TermOrder;

namespace {

thread_local std::uint64_t t_budget = 0;

TermOrder term_order(const ModuleOrder& order) {
    return TermOrder(order.base, order.rule, static_cast<std::uint32_t>(order.rank));
}

std::vector<detail::IVec> integer_columns(const PolyMatrix& gens) {
    std::vector<detail::IVec> rows;
    rows.reserve(gens.cols());
    for (std::size_t j = 0; j < gens.cols(); ++j) rows.push_back(detail::to_ivec(gens.column(j)));
    return rows;
}

void require_ring(const PolyMatrix& m) {
    if (!m.ring()) throw std::invalid_argument("matrix carries no ring");
}

}  // namespace

ScopedBudget::ScopedBudget(std::uint64_t max_pairs) : previous_(t_budget) { t_budget = max_pairs; }
ScopedBudget::~ScopedBudget() { t_budget = previous_; }
std::uint64_t ScopedBudget::current() noexcept { return t_budget; }

ModuleOrder default_order(const RingPtr& ring, std::size_t rank) {
    return ModuleOrder{ring->order(), PositionRule::TermOverPosition, rank};
}

std::pair<std::size_t, Exponents> GroebnerBasis::leading_monomial(std::size_t i) const {
    if (ring_->is_integers()) return {data_->hermite.pivots.at(i), Exponents{}};
    const auto& lead = data_->vecs.at(i).front();
    return {lead.pos, lead.exps};
}

GroebnerBasis buchberger(const PolyMatrix& gens, const ModuleOrder& order) {
    require_ring(gens);
    if (order.rank != gens.rows()) throw std::invalid_argument("buchberger: generator rank does not match order rank");
    GroebnerBasis gb;
    gb.ring_ = gens.ring();
    gb.order_ = order;
    auto data = std::make_shared<detail::BasisData>();
    if (gb.ring_->is_integers()) {
        data->hermite = detail::hermite(integer_columns(gens), gens.rows(), false);
        for (const auto& r : data->hermite.rows) gb.generators_.push_back(detail::from_ivec(r, gb.ring_));
    } else {
        const TermOrder to = term_order(order);
        Engine engine(to, gb.ring_->nvars(), Engine::Mode::Plain, gens.rows() == 1);
        for (std::size_t j = 0; j < gens.cols(); ++j) engine.insert(detail::to_mvec(gens.column(j), to));
        engine.complete();
        data->order = to;
        data->vecs = engine.reduced_basis();
        for (const auto& v : data->vecs) gb.generators_.push_back(detail::real_part(v, gb.ring_, gens.rows()));
    }
    gb.data_ = std::move(data);
    return gb;
}

GroebnerBasis buchberger(const PolyMatrix& gens) {
    require_ring(gens);
    return buchberger(gens, default_order(gens.ring(), gens.rows()));
}

FreeVector normal_form(const FreeVector& v, const GroebnerBasis& gb) {
    if (v.size() != gb.rank()) throw std::invalid_argument("normal_form: rank mismatch");
    if (gb.ring_->is_integers()) {
        return detail::from_ivec(detail::hermite_reduce(detail::to_ivec(v), gb.data_->hermite, nullptr), gb.ring_);
    }
    MVec r = detail::reduce_against(detail::to_mvec(v, gb.data_->order), gb.data_->vecs, gb.data_->order);
    return detail::real_part(r, gb.ring_, gb.rank());
}

bool contains(const GroebnerBasis& gb, const FreeVector& v) { return is_zero(normal_form(v, gb)); }

namespace {

std::vector<std::int64_t> column_degrees(const PolyMatrix& m) {
    std::vector<std::int64_t> out(m.cols(), 0);
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (const auto& t : m.at(i, j).terms()) out[j] = std::max<std::int64_t>(out[j], total_degree(t.exps));
    return out;
}

// Basis of the columns of [top; bottom] in an order where every top position
// beats every bottom position; returns the bottom halves of the elements whose
// top half vanishes.
std::vector<FreeVector> eliminate_top(const PolyMatrix& top, const PolyMatrix& bottom,
                                      std::vector<std::int64_t> shift = {}) {
    const auto& ring = top.ring();
    const std::size_t q = top.rows(), p = bottom.rows();
    const TermOrder to(ring->order(), default_order(ring, q).rule, static_cast<std::uint32_t>(q), std::move(shift));
    Engine engine(to, ring->nvars(), Engine::Mode::KeepSyzygies, false);
    for (std::size_t j = 0; j < top.cols(); ++j) {
        MVec v = detail::to_mvec(top.column(j), to);
        detail::append_payload(v, bottom.column(j), to, static_cast<std::uint32_t>(q));
        engine.insert(std::move(v));
    }
    engine.complete();
    std::vector<FreeVector> out;
    for (const auto& v : engine.reduced_basis())
        if (v.front().pos >= q) out.push_back(detail::payload_part(v, ring, q, p));
    return out;
}

}  // namespace

PolyMatrix syzygies(const PolyMatrix& mat) {
    require_ring(mat);
    const auto& ring = mat.ring();
    const std::size_t q = mat.rows(), m = mat.cols();
    std::vector<FreeVector> syz;
    if (ring->is_integers()) {
        auto form = detail::hermite(integer_columns(mat), q, true);
        for (const auto& k : form.kernel) syz.push_back(detail::from_ivec(k, ring));
    } else {
        syz = eliminate_top(mat, PolyMatrix::identity(ring, m), column_degrees(mat));
    }
    return PolyMatrix::from_columns(ring, m, syz);
}

Lifter::Lifter(const PolyMatrix& gens) : gens_(gens) {
    require_ring(gens);
    const auto& ring = gens.ring();
    const std::size_t q = gens.rows(), m = gens.cols();
    basis_.ring_ = ring;
    basis_.order_ = default_order(ring, q);
    auto data = std::make_shared<detail::BasisData>();
    if (ring->is_integers()) {
        data->hermite = detail::hermite(integer_columns(gens), q, true);
        for (std::size_t k = 0; k < data->hermite.rows.size(); ++k) {
            basis_.generators_.push_back(detail::from_ivec(data->hermite.rows[k], ring));
            transform_.push_back(detail::from_ivec(data->hermite.transform[k], ring));
        }
    } else {
        const TermOrder to = term_order(basis_.order_);
        Engine engine(to, ring->nvars(), Engine::Mode::DropSyzygies, false);
        for (std::size_t j = 0; j < m; ++j) {
            MVec v = detail::to_mvec(gens.column(j), to);
            detail::append_payload(v, unit_vector(ring, m, j), to, static_cast<std::uint32_t>(q));
            engine.insert(std::move(v));
        }
        engine.complete();
        data->order = to;
        data->vecs = engine.reduced_basis();
        for (const auto& v : data->vecs) {
            basis_.generators_.push_back(detail::real_part(v, ring, q));
            transform_.push_back(detail::payload_part(v, ring, q, m));
        }
    }
    basis_.data_ = std::move(data);
}

std::optional<FreeVector> Lifter::operator()(const FreeVector& target) const {
    const auto& ring = gens_.ring();
    const std::size_t q = gens_.rows(), m = gens_.cols();
    if (target.size() != q) throw std::invalid_argument("lift: rank mismatch");
    const auto& data = *basis_.data_;
    if (ring->is_integers()) {
        detail::IVec coeffs;
        auto rest = detail::hermite_reduce(detail::to_ivec(target), data.hermite, &coeffs);
        if (std::any_of(rest.begin(), rest.end(), [](const Integer& x) { return x != 0; })) return std::nullopt;
        detail::IVec out(m, 0);
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            for (std::size_t j = 0; j < m; ++j) out[j] += coeffs[k] * data.hermite.transform[k][j];
        return detail::from_ivec(out, ring);
    }
    MVec r = detail::reduce_against(detail::to_mvec(target, data.order), data.vecs, data.order);
    if (!r.empty() && r.front().pos < q) return std::nullopt;
    // (target, 0) reduced to (0, w) means target == -gens * w
    FreeVector w = detail::payload_part(r, ring, q, m);
    for (auto& p : w) p = -p;
    return w;
}

std::optional<FreeVector> lift(const FreeVector& target, const PolyMatrix& gens) { return Lifter(gens)(target); }

PolyMatrix syzygies_modulo(const PolyMatrix& phi, const PolyMatrix& rel) {
    if (phi.rows() != rel.rows()) throw std::invalid_argument("syzygies_modulo: rank mismatch");
    const auto ring = phi.ring() ? phi.ring() : rel.ring();
    const std::size_t m = phi.cols();
    if (ring->is_integers() || phi.rows() == 0) {
        const PolyMatrix syz = syzygies(phi.hstack(rel));
        std::vector<std::size_t> top(m);
        for (std::size_t i = 0; i < m; ++i) top[i] = i;
        return syz.select_rows(top);
    }
    const PolyMatrix bottom = PolyMatrix::identity(ring, m).hstack(PolyMatrix(ring, m, rel.cols()));
    return PolyMatrix::from_columns(ring, m, eliminate_top(phi.hstack(rel), bottom, column_degrees(phi)));
}

PolyMatrix submodule_intersect(const PolyMatrix& U, const PolyMatrix& V) {
    if (U.rows() != V.rows()) throw std::invalid_argument("submodule_intersect: rank mismatch");
    const auto ring = U.ring() ? U.ring() : V.ring();
    const std::size_t q = U.rows();
    if (!ring->is_integers()) {
        // {(u + v, u)}: the bottom halves with vanishing top lie in U ∩ V
        const PolyMatrix bottom = U.hstack(PolyMatrix(ring, q, V.cols()));
        return PolyMatrix::from_columns(ring, q, eliminate_top(U.hstack(V), bottom));
    }
    const PolyMatrix syz = syzygies(U.hstack(V));
    std::vector<FreeVector> common;
    for (std::size_t j = 0; j < syz.cols(); ++j) {
        FreeVector a(U.cols());
        for (std::size_t i = 0; i < U.cols(); ++i) a[i] = syz.at(i, j);
        FreeVector v = mat_vec(U, a);
        if (!is_zero(v)) common.push_back(std::move(v));
    }
    if (common.empty()) return PolyMatrix(ring, q, 0);
    return buchberger(PolyMatrix::from_columns(ring, q, common)).matrix();
}

PolyMatrix prune_columns(const PolyMatrix& m) {
    std::vector<std::size_t> keep(m.cols());
    for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = j;
    for (std::size_t pos = keep.size(); pos-- > 0;) {
        const FreeVector col = m.column(keep[pos]);
        if (is_zero(col)) {
            keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(pos));
            continue;
        }
        std::vector<std::size_t> others = keep;
        others.erase(others.begin() + static_cast<std::ptrdiff_t>(pos));
        if (others.empty()) continue;
        if (contains(buchberger(m.select_columns(others)), col)) keep = std::move(others);
    }
    return m.select_columns(keep);
}

bool submodule_contains(const PolyMatrix& sup, const PolyMatrix& sub) {
    if (sup.rows() != sub.rows()) throw std::invalid_argument("submodule_contains: rank mismatch");
    if (sub.cols() == 0 || sub.is_zero()) return true;
    const auto gb = buchberger(sup);
    for (std::size_t j = 0; j < sub.cols(); ++j)
        if (!contains(gb, sub.column(j))) return false;
    return true;
}

bool submodule_equal(const PolyMatrix& U, const PolyMatrix& V) {
    return submodule_contains(U, V) && submodule_contains(V, U);
}

int lt_dimension(const GroebnerBasis& gb) {
    if (gb.rank() != 1) throw std::invalid_argument("lt_dimension: basis of an ideal (rank 1) required");
    if (gb.ring()->is_integers()) throw std::invalid_argument("lt_dimension: polynomial backend required");
    const std::size_t n = gb.ring()->nvars();
    if (n > 20) throw std::invalid_argument("lt_dimension: too many variables");
    std::vector<std::uint32_t> supports;
    for (std::size_t i = 0; i < gb.size(); ++i) {
        const auto lm = gb.leading_monomial(i).second;
        std::uint32_t s = 0;
        for (std::size_t k = 0; k < n; ++k)
            if (lm[k] > 0) s |= 1u << k;
        if (s == 0) return -1;
        supports.push_back(s);
    }
    int best = 0;
    for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
        const int size = std::popcount(subset);
        if (size <= best) continue;
        // independent: no leading monomial lives entirely in these variables
        const bool independent = std::none_of(supports.begin(), supports.end(),
                                              [subset](std::uint32_t s) { return (s & ~subset) == 0; });
        if (independent) best = size;
    }
    return best;
}

bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
    if (gb.ring()->is_integers()) return true;
    const auto& data = *gb.data_;
    for (std::size_t i = 0; i < data.vecs.size(); ++i) {
        for (std::size_t j = i + 1; j < data.vecs.size(); ++j) {
            const auto& f = data.vecs[i];
            const auto& g = data.vecs[j];
            if (f.front().pos != g.front().pos) continue;
            const Exponents l = monomial_lcm(f.front().exps, g.front().exps);
            const Exponents mf = monomial_quotient(l, f.front().exps);
            const Exponents mg = monomial_quotient(l, g.front().exps);
            MVec sf;
            for (const auto& t : f) sf.push_back(detail::MTerm{monomial_product(t.exps, mf), t.pos, t.coef / f.front().coef});
            MVec s = detail::sub_scaled(sf, 0, 1 / g.front().coef, mg, g, data.order);
            if (!detail::reduce_against(std::move(s), data.vecs, data.order).empty()) return false;
        }
    }
    return true;
}

}  // namespace hacert
