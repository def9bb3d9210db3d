#include "buchberger.hpp"

#include <algorithm>
#include <tuple>

namespace hacert::detail {

std::strong_ordering TermOrder::compare(std::uint32_t pa, const Exponents& a, std::uint32_t pb,
                                        const Exponents& b) const {
    const bool ra = pa < real_rank_, rb = pb < real_rank_;
    if (ra != rb) return ra ? std::strong_ordering::greater : std::strong_ordering::less;
    if (rule_ == PositionRule::PositionOverTerm) {
        if (pa != pb) return pb <=> pa;
        return monomial_compare(a, b, mono_);
    }
    if (!ra && !shift_.empty()) {
        const auto c = degree(pa, a) <=> degree(pb, b);
        if (c != std::strong_ordering::equal) return c;
    }
    auto c = monomial_compare(a, b, mono_);
    if (c != std::strong_ordering::equal) return c;
    return pb <=> pa;
}

MVec to_mvec(const FreeVector& v, const TermOrder& order, std::uint32_t offset) {
    MVec out;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (const auto& t : v[i].terms()) out.push_back(MTerm{t.exps, static_cast<std::uint32_t>(i) + offset, t.coef});
    std::sort(out.begin(), out.end(),
              [&](const MTerm& a, const MTerm& b) { return order.compare(a, b) == std::strong_ordering::greater; });
    return out;
}

void append_payload(MVec& v, const FreeVector& payload, const TermOrder& order, std::uint32_t offset) {
    MVec extra = to_mvec(payload, order, offset);
    // payload positions sort below every real position
    v.insert(v.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
}

namespace {

FreeVector slice(const MVec& v, const RingPtr& ring, std::size_t lo, std::size_t hi) {
    std::vector<std::vector<Term>> comps(hi - lo);
    for (const auto& t : v)
        if (t.pos >= lo && t.pos < hi) comps[t.pos - lo].push_back(Term{t.exps, t.coef});
    FreeVector out(hi - lo);
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (!comps[i].empty()) out[i] = Polynomial::from_terms(ring, std::move(comps[i]));
    return out;
}

void make_monic(MVec& v) {
    if (v.empty() || v.front().coef == 1) return;
    const Rational inv = 1 / v.front().coef;
    for (auto& t : v) t.coef *= inv;
}

// Scales to integer coefficients with no common factor and a positive leading
// coefficient.
void make_primitive(MVec& v) {
    if (v.empty()) return;
    Integer den = 1, num = 0;
    for (const auto& t : v) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coef.get_den_mpz_t());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coef.get_num_mpz_t());
    }
    if (v.front().coef < 0) num = -num;
    if (den == 1 && num == 1) return;
    Rational scale(den, num);
    scale.canonicalize();
    for (auto& t : v) t.coef *= scale;
}

}  // namespace

FreeVector real_part(const MVec& v, const RingPtr& ring, std::size_t real_rank) {
    return slice(v, ring, 0, real_rank);
}

FreeVector payload_part(const MVec& v, const RingPtr& ring, std::size_t real_rank, std::size_t payload_rank) {
    return slice(v, ring, real_rank, real_rank + payload_rank);
}

MVec sub_scaled(const MVec& f, std::size_t from, const Rational& c, const Exponents& m, const MVec& g,
                const TermOrder& order) {
    MVec out;
    out.reserve(f.size() - from + g.size());
    std::size_t i = from, j = 0;
    Exponents shifted;
    while (i < f.size() || j < g.size()) {
        if (j < g.size()) shifted = monomial_product(g[j].exps, m);
        std::strong_ordering cmp = std::strong_ordering::equal;
        if (i == f.size()) cmp = std::strong_ordering::less;
        else if (j == g.size()) cmp = std::strong_ordering::greater;
        else cmp = order.compare(f[i].pos, f[i].exps, g[j].pos, shifted);
        if (cmp == std::strong_ordering::greater) {
            out.push_back(f[i++]);
        } else if (cmp == std::strong_ordering::less) {
            out.push_back(MTerm{shifted, g[j].pos, -c * g[j].coef});
            ++j;
        } else {
            Rational s = f[i].coef - c * g[j].coef;
            if (s != 0) out.push_back(MTerm{shifted, g[j].pos, std::move(s)});
            ++i;
            ++j;
        }
    }
    return out;
}

namespace {

template <class Reducers>
MVec full_reduce(MVec f, const Reducers& find, const TermOrder& order) {
    MVec result;
    std::size_t k = 0;
    while (k < f.size()) {
        const MVec* g = find(f[k]);
        if (!g) {
            result.push_back(std::move(f[k]));
            ++k;
            continue;
        }
        const Rational c = f[k].coef / g->front().coef;
        const Exponents m = monomial_quotient(f[k].exps, g->front().exps);
        f = sub_scaled(f, k, c, m, *g, order);
        k = 0;
    }
    return result;
}

// Fraction-free reduction: f <- b f - a m g for the coefficient a of the
// reduced term of f and the leading coefficient b of g, kept primitive.  Stops
// at the first irreducible term unless `tails` is set.
template <class Reducers>
MVec reduce_fraction_free(MVec f, const Reducers& find, const TermOrder& order, bool tails) {
    make_primitive(f);
    std::size_t k = 0;
    while (k < f.size()) {
        const MVec* g = find(f[k]);
        if (!g) {
            if (!tails) break;
            ++k;
            continue;
        }
        Integer a = f[k].coef.get_num(), b = g->front().coef.get_num(), h;
        mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        a /= h;
        b /= h;
        if (b != 1)
            for (auto& t : f) t.coef *= b;
        const Exponents m = monomial_quotient(f[k].exps, g->front().exps);
        MVec rest = sub_scaled(f, k, Rational(a), m, *g, order);
        f.resize(k);
        f.insert(f.end(), std::make_move_iterator(rest.begin()), std::make_move_iterator(rest.end()));
        make_primitive(f);
    }
    return f;
}

}  // namespace

MVec reduce_against(MVec f, const std::vector<MVec>& basis, const TermOrder& order) {
    auto find = [&](const MTerm& t) -> const MVec* {
        for (const auto& g : basis)
            if (g.front().pos == t.pos && divides(g.front().exps, t.exps)) return &g;
        return nullptr;
    };
    return full_reduce(std::move(f), find, order);
}

Engine::Engine(TermOrder order, std::size_t nvars, Mode mode, bool ideal_case)
    : order_(order), nvars_(nvars), mode_(mode), ideal_case_(ideal_case), budget_(ScopedBudget::current()) {}

int Engine::find_reducer(const MTerm& t) const {
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const auto& e = basis_[i];
        if (!e.active) continue;
        const auto& lead = e.v.front();
        if (lead.pos == t.pos && divides(lead.exps, t.exps)) return static_cast<int>(i);
    }
    return -1;
}

MVec Engine::reduce(MVec f) const {
    auto find = [&](const MTerm& t) -> const MVec* {
        const int r = find_reducer(t);
        return r < 0 ? nullptr : &basis_[static_cast<std::size_t>(r)].v;
    };
    return full_reduce(std::move(f), find, order_);
}

MVec Engine::reduce_head(MVec f) const {
    auto find = [&](const MTerm& t) -> const MVec* {
        const int r = find_reducer(t);
        return r < 0 ? nullptr : &basis_[static_cast<std::size_t>(r)].v;
    };
    f = reduce_fraction_free(std::move(f), find, order_, false);
    // syzygy tails are reduced as well, which keeps their coefficients small
    if (mode_ == Mode::KeepSyzygies && !f.empty() && f.front().pos >= order_.real_rank())
        f = reduce_fraction_free(std::move(f), find, order_, true);
    return f;
}

void Engine::insert(MVec f) { add_element(reduce_head(std::move(f))); }

void Engine::add_element(MVec h) {
    if (h.empty()) return;
    if (mode_ == Mode::DropSyzygies && h.front().pos >= order_.real_rank()) return;
    make_primitive(h);
    basis_.push_back(Element{std::move(h), true});
    update(basis_.size() - 1);
}

// Gebauer-Möller installation of the new element t: chain criterion on the new
// pairs and on the old pairs, product criterion only in the ideal case.
void Engine::update(std::size_t t) {
    const MTerm& lead = basis_[t].v.front();
    auto coprime = [&](const Exponents& a) {
        for (std::size_t k = 0; k < nvars_; ++k)
            if (a[k] != 0 && lead.exps[k] != 0) return false;
        return true;
    };

    std::vector<Pair> candidates;
    for (std::size_t i = 0; i < t; ++i) {
        if (!basis_[i].active) continue;
        const MTerm& li = basis_[i].v.front();
        if (li.pos != lead.pos) continue;
        Exponents l = monomial_lcm(li.exps, lead.exps);
        const auto d = order_.degree(lead.pos, l);
        candidates.push_back(Pair{i, t, lead.pos, std::move(l), d});
    }

    std::vector<Pair> kept;
    std::vector<bool> kept_coprime;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const bool cp = ideal_case_ && coprime(basis_[candidates[c].i].v.front().exps);
        bool keep = cp;
        if (!keep) {
            keep = true;
            for (std::size_t o = c + 1; o < candidates.size() && keep; ++o)
                if (divides(candidates[o].lcm, candidates[c].lcm)) keep = false;
            for (std::size_t o = 0; o < kept.size() && keep; ++o)
                if (divides(kept[o].lcm, candidates[c].lcm)) keep = false;
        }
        if (keep) {
            kept.push_back(candidates[c]);
            kept_coprime.push_back(cp);
        }
    }

    std::vector<Pair> next;
    next.reserve(pairs_.size() + kept.size());
    for (auto& p : pairs_) {
        if (p.pos == lead.pos && divides(lead.exps, p.lcm)) {
            const auto lit = monomial_lcm(basis_[p.i].v.front().exps, lead.exps);
            const auto ljt = monomial_lcm(basis_[p.j].v.front().exps, lead.exps);
            if (lit != p.lcm && ljt != p.lcm) continue;
        }
        next.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < kept.size(); ++k)
        if (!kept_coprime[k]) next.push_back(std::move(kept[k]));
    pairs_ = std::move(next);

    for (std::size_t i = 0; i < t; ++i) {
        auto& e = basis_[i];
        if (e.active && e.v.front().pos == lead.pos && divides(lead.exps, e.v.front().exps)) e.active = false;
    }
}

MVec Engine::s_vector(const Pair& p) const {
    const MVec& f = basis_[p.i].v;
    const MVec& g = basis_[p.j].v;
    const Exponents mf = monomial_quotient(p.lcm, f.front().exps);
    const Exponents mg = monomial_quotient(p.lcm, g.front().exps);
    MVec shifted_f;
    shifted_f.reserve(f.size());
    for (const auto& t : f) shifted_f.push_back(MTerm{monomial_product(t.exps, mf), t.pos, t.coef});
    // both are primitive: S = b mf f - a mg g with the leading terms cancelling
    Integer a = f.front().coef.get_num(), b = g.front().coef.get_num(), h;
    mpz_gcd(h.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    a /= h;
    b /= h;
    if (b != 1)
        for (auto& t : shifted_f) t.coef *= b;
    return sub_scaled(shifted_f, 0, Rational(a), mg, g, order_);
}

void Engine::complete() {
    while (!pairs_.empty()) {
        auto best = pairs_.begin();
        for (auto it = std::next(pairs_.begin()); it != pairs_.end(); ++it) {
            if (it->degree != best->degree) {
                if (it->degree < best->degree) best = it;
                continue;
            }
            const auto c = order_.compare(it->pos, it->lcm, best->pos, best->lcm);
            if (c == std::strong_ordering::less ||
                (c == std::strong_ordering::equal && std::tie(it->i, it->j) < std::tie(best->i, best->j)))
                best = it;
        }
        const Pair p = *best;
        pairs_.erase(best);
        ++pairs_processed_;
        if (budget_ != 0 && pairs_processed_ > budget_) throw BudgetExceeded(budget_);
        add_element(reduce_head(s_vector(p)));
    }
}

std::vector<MVec> Engine::reduced_basis() {
    std::vector<MVec> leads;
    for (const auto& e : basis_)
        if (e.active) leads.push_back(e.v);
    std::vector<MVec> out;
    out.reserve(leads.size());
    for (std::size_t i = 0; i < leads.size(); ++i) {
        const MVec& g = leads[i];
        auto find = [&](const MTerm& t) -> const MVec* {
            for (std::size_t k = 0; k < leads.size(); ++k) {
                if (k == i) continue;
                const auto& h = leads[k];
                if (h.front().pos == t.pos && divides(h.front().exps, t.exps)) return &h;
            }
            return nullptr;
        };
        MVec tail(g.begin() + 1, g.end());
        MVec reduced = full_reduce(std::move(tail), find, order_);
        MVec v;
        v.reserve(reduced.size() + 1);
        v.push_back(g.front());
        v.insert(v.end(), std::make_move_iterator(reduced.begin()), std::make_move_iterator(reduced.end()));
        make_monic(v);
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end(), [&](const MVec& a, const MVec& b) {
        return order_.compare(a.front(), b.front()) == std::strong_ordering::greater;
    });
    return out;
}

}  // namespace hacert::detail
