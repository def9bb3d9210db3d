#include "hacert/homology.hpp"

#include <algorithm>
#include <numeric>

namespace hacert {

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> idx(hi - lo);
    std::iota(idx.begin(), idx.end(), lo);
    return idx;
}


/// (D^T tensor I_g): the map phi -> phi * D on g x rows(D) matrices stored
/// column by column.
PolyMatrix hom_into(const PolyMatrix& d, std::size_t g) {
    PolyMatrix out(d.ring(), g * d.cols(), g * d.rows());
    for (std::size_t j = 0; j < d.rows(); ++j)
        for (std::size_t k = 0; k < d.cols(); ++k)
            if (!d.at(j, k).is_zero())
                for (std::size_t a = 0; a < g; ++a) out.at(k * g + a, j * g + a) = d.at(j, k);
    return out;
}

PolyMatrix repeat_diagonal(const PolyMatrix& m, std::size_t times) {
    PolyMatrix out(m.ring(), m.rows() * times, m.cols() * times);
    for (std::size_t t = 0; t < times; ++t)
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) out.at(t * m.rows() + i, t * m.cols() + j) = m.at(i, j);
    return out;
}

struct Cohomology {
    PolyMatrix cycles;    // generators of Z^i in N^{r_i}
    Submodule boundaries; // B^i plus the relations of N^{r_i}
};

/// Z^i and B^i of Hom(F_*, N) for a resolution F_* reaching at least i + 1 steps.
Cohomology cohomology(const ResolutionComplex& res, std::size_t i, const FPModule& n) {
    const auto& ring = n.ring();
    const std::size_t g = n.generators();
    const auto rank_at = [&](std::size_t k) { return k < res.ranks.size() ? res.ranks[k] : std::size_t{0}; };
    const std::size_t ri = rank_at(i);
    const PolyMatrix rel = prune_columns(n.relations());

    PolyMatrix cycles;
    if (i < res.length() && res.ranks[i + 1] > 0) {
        const PolyMatrix d = hom_into(res.differentials[i], g);
        cycles = syzygies_modulo(d, repeat_diagonal(rel, res.ranks[i + 1]));
    } else {
        cycles = PolyMatrix::identity(ring, g * ri);
    }
    PolyMatrix bounds = repeat_diagonal(rel, ri);
    if (i > 0 && ri > 0) bounds = bounds.hstack(hom_into(res.differentials[i - 1], g));
    return Cohomology{std::move(cycles), Submodule(bounds)};
}

bool cohomology_vanishes(const Cohomology& c) {
    for (std::size_t j = 0; j < c.cycles.cols(); ++j)
        if (!c.boundaries.contains(c.cycles.column(j))) return false;
    return true;
}

/// First step of a resolution: the pruned relations of M.
ResolutionComplex start_resolution(const FPModule& m) {
    ResolutionComplex res;
    res.module = m;
    res.ranks.push_back(m.generators());
    const PolyMatrix d = prune_columns(m.relations());
    res.differentials.push_back(d);
    res.ranks.push_back(d.cols());
    res.complete = d.cols() == 0;
    return res;
}

/// Appends the next differential; false once the resolution is complete.
bool extend(ResolutionComplex& res) {
    if (res.complete) return false;
    const PolyMatrix next = syzygies(res.differentials.back());
    if (next.cols() == 0) {
        res.complete = true;
        return false;
    }
    const PolyMatrix d = prune_columns(next);
    res.differentials.push_back(d);
    res.ranks.push_back(d.cols());
    return true;
}

/// Resolution of a simplified copy of M with `steps` differentials or fewer
/// when it ends earlier; completeness of the last one is not decided.
ResolutionComplex resolve_simplified(const FPModule& m, std::size_t steps) {
    ResolutionComplex res = start_resolution(simplify(m).module);
    while (res.length() < steps && extend(res)) {
    }
    return res;
}

std::size_t dimension_cap(const RingPtr& ring) { return ring->krull_dimension(); }

}  // namespace

int GradeValue::value() const {
    if (is_infinite()) throw std::logic_error("GradeValue: infinite value has no integer");
    return value_;
}

// ---- resolutions ----

ResolutionComplex free_resolution(const FPModule& m, std::size_t length) {
    if (length < 1) throw std::invalid_argument("free_resolution: length must be at least 1");
    ResolutionComplex res = start_resolution(m);
    while (res.length() < length && extend(res)) {
    }
    if (!res.complete && syzygies(res.differentials.back()).cols() == 0) res.complete = true;
    return res;
}

bool ResolutionComplex::verify() const {
    if (differentials.empty() || ranks.size() != differentials.size() + 1) return false;
    if (!(Submodule(differentials[0]) == module.relation_module())) return false;
    for (std::size_t i = 0; i < differentials.size(); ++i) {
        const auto& d = differentials[i];
        if (d.rows() != ranks[i] || d.cols() != ranks[i + 1]) return false;
        if (i + 1 < differentials.size()) {
            if (!(d * differentials[i + 1]).is_zero()) return false;
            if (!(Submodule(syzygies(d)) == Submodule(differentials[i + 1]))) return false;
        }
    }
    if (complete && syzygies(differentials.back()).cols() != 0) return false;
    return true;
}

// ---- Ext and grade ----

FPModule ext(std::size_t i, const FPModule& m, const FPModule& n) {
    if (!same_ring(m.ring(), n.ring())) throw std::invalid_argument("ext: ring mismatch");
    const ResolutionComplex res = resolve_simplified(m, i + 1);
    const Cohomology c = cohomology(res, i, simplify(n).module);
    return simplify(FPModule::subquotient(c.cycles, c.boundaries)).module;
}

bool ext_vanishes(std::size_t i, const FPModule& m, const FPModule& n) {
    if (!same_ring(m.ring(), n.ring())) throw std::invalid_argument("ext: ring mismatch");
    const ResolutionComplex res = resolve_simplified(m, i + 1);
    return cohomology_vanishes(cohomology(res, i, simplify(n).module));
}

GradeValue grade(const FPModule& t) {
    const FPModule s = simplify(t).module;
    if (s.is_zero()) return GradeValue::infinite();
    const std::size_t cap = dimension_cap(s.ring());
    const FPModule r = FPModule::free(s.ring(), 1);
    // Ext^i needs only i + 1 differentials; grow the resolution on demand
    ResolutionComplex res = start_resolution(s);
    for (std::size_t i = 0; i <= cap; ++i) {
        while (res.length() < i + 1 && extend(res)) {
        }
        if (!cohomology_vanishes(cohomology(res, i, r))) return GradeValue::finite(static_cast<int>(i));
    }
    throw std::logic_error("grade: every Ext up to the dimension vanishes for a nonzero module");
}

Submodule annihilator(const FPModule& t) {
    const auto& ring = t.ring();
    const std::size_t g = t.generators();
    Submodule ann = Submodule::whole(ring, 1);
    const PolyMatrix rel = t.relations();
    for (std::size_t j = 0; j < g; ++j) {
        PolyMatrix e(ring, g, 1);
        e.at(j, 0) = Polynomial(ring, 1L);
        const Submodule quotient(syzygies_modulo(e, rel));
        ann = intersect(ann, quotient);
    }
    return ann;
}

GradeValue codimension(const FPModule& t) {
    if (t.ring()->is_integers()) throw std::invalid_argument("codimension: polynomial backend required");
    if (t.is_zero()) return GradeValue::infinite();
    const int dim = lt_dimension(annihilator(t).basis());
    return GradeValue::finite(static_cast<int>(t.ring()->nvars()) - dim);
}

FPModule auslander_dual(const FPModule& m) {
    const PolyMatrix rel = m.relations();
    return FPModule::present(rel.transpose(), rel.cols());
}

// ---- torsion ----

Torsion torsion_submodule(const FPModule& m) {
    const Morphism inclusion = kernel(evaluation_map(m));
    Submodule preimage(inclusion.matrix().transpose().hstack(m.relations()));
    return Torsion{inclusion, std::move(preimage)};
}

TorsionCrossCheck torsion_cross_check(const FPModule& m) {
    TorsionCrossCheck out;
    const Torsion tor = torsion_submodule(m);
    const FPModule& k = tor.inclusion.source();

    out.generators_torsion = true;
    for (std::size_t j = 0; j < k.generators(); ++j) {
        PolyMatrix e(m.ring(), k.generators(), 1);
        e.at(j, 0) = Polynomial(m.ring(), 1L);
        const FPModule cyc = FPModule::subquotient(e, k.relation_module());
        if (!cyc.is_zero() && annihilator(cyc).is_zero()) out.generators_torsion = false;
    }

    const FPModule quotient = FPModule::quotient(tor.preimage);
    out.quotient_torsionless = is_mono(evaluation_map(quotient));

    const FPModule e1 = ext(1, auslander_dual(m), FPModule::free(m.ring(), 1));
    const FPModule ks = simplify(k).module;
    out.annihilators_agree = annihilator(e1) == annihilator(ks);
    out.fitting_ideals_agree = true;
    const std::size_t top = std::max(e1.generators(), ks.generators());
    for (std::size_t j = 0; j <= top && out.fitting_ideals_agree; ++j)
        out.fitting_ideals_agree = fitting_ideal(e1, j) == fitting_ideal(ks, j);
    return out;
}

Morphism torsionfree_factor(const FPModule& m) {
    const Torsion tor = torsion_submodule(m);
    const FPModule factor = FPModule::quotient(tor.preimage);
    return Morphism::make(m, factor, PolyMatrix::identity(m.ring(), m.generators()));
}

Morphism free_embedding(const FPModule& m) {
    const Dual d = dual(m);
    // the dual presentation R^s -> R^g -> R^r, read back: M -> R^s
    const Morphism f = Morphism::make(m, FPModule::free(m.ring(), d.functionals.cols()), d.functionals);
    const Morphism k = kernel(f);
    if (!k.source().is_zero())
        throw NotTorsionFree("free_embedding: module has nonzero torsion",
                             Submodule(k.matrix().transpose().hstack(m.relations())));
    return f;
}

// ---- minors and projectivity ----

Polynomial determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return Polynomial(m.ring(), 1L);
    PolyMatrix a = m;
    Polynomial sign(m.ring(), 1L), prev(m.ring(), 1L);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && a.at(p, k).is_zero()) ++p;
        if (p == n) return Polynomial();
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                auto q = divide_exact(a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j), prev);
                if (!q) throw std::logic_error("determinant: inexact fraction-free step");
                a.at(i, j) = std::move(*q);
            }
            a.at(i, k) = Polynomial();
        }
        prev = a.at(k, k);
    }
    return sign * a.at(n - 1, n - 1);
}

std::size_t fraction_rank(const PolyMatrix& m) {
    PolyMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    Polynomial prev(m.ring(), 1L);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a.at(p, c).is_zero()) ++p;
        if (p == rows) continue;
        if (p != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(r, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                auto q = divide_exact(a.at(r, c) * a.at(i, j) - a.at(i, c) * a.at(r, j), prev);
                if (!q) throw std::logic_error("fraction_rank: inexact fraction-free step");
                a.at(i, j) = std::move(*q);
            }
            a.at(i, c) = Polynomial();
        }
        prev = a.at(r, c);
        ++r;
    }
    return r;
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t pos = k; pos-- > 0;) {
        if (idx[pos] < n - k + pos) {
            ++idx[pos];
            for (std::size_t t = pos + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

Submodule minor_ideal(const PolyMatrix& m, std::size_t k) {
    const auto& ring = m.ring();
    if (k == 0) return Submodule::whole(ring, 1);
    if (k > m.rows() || k > m.cols()) return Submodule::zero(ring, 1);
    std::vector<FreeVector> minors;
    std::vector<std::size_t> rs = range(0, k);
    do {
        const PolyMatrix sub = m.select_rows(rs);
        std::vector<std::size_t> cs = range(0, k);
        do {
            Polynomial d = determinant(sub.select_columns(cs));
            if (d.is_zero()) continue;
            if (d.is_unit()) return Submodule::whole(ring, 1);
            if (std::find(minors.begin(), minors.end(), FreeVector{d}) == minors.end()) minors.push_back({d});
        } while (next_combination(cs, m.cols()));
    } while (next_combination(rs, m.rows()));
    return Submodule(PolyMatrix::from_columns(ring, 1, minors));
}

Submodule fitting_ideal(const FPModule& m, std::size_t j) {
    const std::size_t g = m.generators();
    if (j >= g) return Submodule::whole(m.ring(), 1);
    return minor_ideal(m.relations(), g - j);
}

ProjectivityVerdict is_projective(const FPModule& m) {
    const FPModule s = simplify(m).module;
    const PolyMatrix rel = s.relations();
    const std::size_t k = fraction_rank(rel);
    ProjectivityVerdict v;
    v.rank = s.generators() - k;
    const Submodule fitt = minor_ideal(rel, k);
    v.projective = fitt.contains(FreeVector{Polynomial(s.ring(), 1L)});
    return v;
}

}  // namespace hacert
