#include "hacert/fpmod.hpp"

#include <algorithm>
#include <numeric>

namespace hacert {

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> idx(hi - lo);
    std::iota(idx.begin(), idx.end(), lo);
    return idx;
}

PolyMatrix top_rows(const PolyMatrix& m, std::size_t k) { return m.select_rows(range(0, k)); }

PolyMatrix block_diagonal(const PolyMatrix& a, const PolyMatrix& b) {
    const auto& ring = a.ring() ? a.ring() : b.ring();
    PolyMatrix out(ring, a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = a.at(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return out;
}

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* what) {
    if (!same_ring(a, b)) throw std::invalid_argument(std::string(what) + ": ring mismatch");
}

/// Normal forms of the columns modulo rel, without zeros and duplicates.
PolyMatrix clean_columns(const PolyMatrix& gens, const Submodule& rel) {
    std::vector<FreeVector> kept;
    for (std::size_t j = 0; j < gens.cols(); ++j) {
        FreeVector v = rel.reduce(gens.column(j));
        if (is_zero(v) || std::find(kept.begin(), kept.end(), v) != kept.end()) continue;
        kept.push_back(std::move(v));
    }
    return PolyMatrix::from_columns(gens.ring(), gens.rows(), kept);
}

}  // namespace

// ---- Submodule ----

Submodule::Submodule(const PolyMatrix& generators) : basis_(buchberger(generators)) {}

Submodule Submodule::zero(RingPtr ring, std::size_t q) { return Submodule(PolyMatrix(std::move(ring), q, 0)); }

Submodule Submodule::whole(RingPtr ring, std::size_t q) { return Submodule(PolyMatrix::identity(std::move(ring), q)); }

bool Submodule::contains(const Submodule& other) const {
    if (other.rank() != rank()) throw std::invalid_argument("Submodule::contains: rank mismatch");
    for (const auto& v : other.basis_.generators())
        if (!contains(v)) return false;
    return true;
}

Submodule operator+(const Submodule& a, const Submodule& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("submodule sum: rank mismatch");
    return Submodule(a.matrix().hstack(b.matrix()));
}

Submodule intersect(const Submodule& a, const Submodule& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("intersect: rank mismatch");
    return Submodule(submodule_intersect(a.matrix(), b.matrix()));
}

// ---- FPModule ----

FPModule FPModule::present(const PolyMatrix& relations, std::size_t g) {
    if (relations.rows() != g)
        throw std::invalid_argument("present: relation matrix has " + std::to_string(relations.rows()) +
                                    " rows, expected " + std::to_string(g));
    FPModule m;
    m.relations_ = Submodule(relations);
    return m;
}

FPModule FPModule::free(RingPtr ring, std::size_t g) { return present(PolyMatrix(std::move(ring), g, 0), g); }

FPModule FPModule::zero(RingPtr ring) { return free(std::move(ring), 0); }

FPModule FPModule::quotient(const Submodule& sub) {
    FPModule m;
    m.relations_ = sub;
    return m;
}

FPModule FPModule::subquotient(const PolyMatrix& gens, const Submodule& rel) {
    if (gens.rows() != rel.rank()) throw std::invalid_argument("subquotient: rank mismatch");
    const std::size_t k = gens.cols();
    return present(syzygies_modulo(gens, rel.matrix()), k);
}

bool FPModule::is_zero() const {
    for (std::size_t i = 0; i < generators(); ++i)
        if (!relations_.contains(unit_vector(ring(), generators(), i))) return false;
    return true;
}

bool FPModule::same_element(const FreeVector& a, const FreeVector& b) const {
    return is_zero_element(add(a, scale(Polynomial(ring(), -1L), b)));
}

bool operator==(const FPModule& a, const FPModule& b) {
    return a.generators() == b.generators() && a.relations() == b.relations();
}

// ---- Morphism ----

Morphism Morphism::with_witness(const FPModule& source, const FPModule& target, const PolyMatrix& matrix,
                                const PolyMatrix& witness) {
    require_same_ring(source.ring(), target.ring(), "Morphism");
    if (matrix.rows() != source.generators() || matrix.cols() != target.generators())
        throw std::invalid_argument("Morphism: matrix shape does not match the modules");
    const PolyMatrix rs = source.relations(), rt = target.relations();
    if (witness.rows() != rt.cols() || witness.cols() != rs.cols() || !(matrix.transpose() * rs == rt * witness))
        throw NotWellDefined("Morphism: witness does not certify well-definedness");
    Morphism f;
    f.source_ = source;
    f.target_ = target;
    f.matrix_ = matrix;
    f.witness_ = witness;
    return f;
}

Morphism Morphism::make(const FPModule& source, const FPModule& target, const PolyMatrix& matrix) {
    require_same_ring(source.ring(), target.ring(), "Morphism");
    if (matrix.rows() != source.generators() || matrix.cols() != target.generators())
        throw std::invalid_argument("Morphism: matrix shape does not match the modules");
    const PolyMatrix rs = source.relations(), rt = target.relations();
    const PolyMatrix images = matrix.transpose() * rs;
    std::vector<FreeVector> w;
    if (images.cols() > 0) {
        Lifter lifter(rt);
        for (std::size_t j = 0; j < images.cols(); ++j) {
            auto c = lifter(images.column(j));
            if (!c) throw NotWellDefined("Morphism: relation " + std::to_string(j) + " of the source does not map into the target relations");
            w.push_back(std::move(*c));
        }
    }
    return with_witness(source, target, matrix, PolyMatrix::from_columns(source.ring(), rt.cols(), w));
}

Morphism Morphism::identity(const FPModule& m) {
    const std::size_t r = m.relations().cols();
    return with_witness(m, m, PolyMatrix::identity(m.ring(), m.generators()), PolyMatrix::identity(m.ring(), r));
}

Morphism Morphism::zero(const FPModule& source, const FPModule& target) {
    return with_witness(source, target, PolyMatrix(source.ring(), source.generators(), target.generators()),
                        PolyMatrix(source.ring(), target.relations().cols(), source.relations().cols()));
}

FreeVector Morphism::operator()(const FreeVector& element) const {
    if (element.size() != source_.generators()) throw std::invalid_argument("Morphism: element has wrong length");
    return mat_vec(matrix_.transpose(), element);
}

Morphism Morphism::then(const Morphism& next) const {
    if (!(target_ == next.source_)) throw std::invalid_argument("Morphism::then: modules do not match");
    return with_witness(source_, next.target_, matrix_ * next.matrix_, next.witness_ * witness_);
}

bool Morphism::is_zero() const {
    for (std::size_t i = 0; i < matrix_.rows(); ++i)
        if (!target_.is_zero_element(matrix_.row(i))) return false;
    return true;
}

bool Morphism::equals(const Morphism& other) const {
    if (!(source_ == other.source_) || !(target_ == other.target_)) return false;
    const PolyMatrix diff = matrix_ - other.matrix_;
    for (std::size_t i = 0; i < diff.rows(); ++i)
        if (!target_.is_zero_element(diff.row(i))) return false;
    return true;
}

// ---- constructions ----

Morphism kernel(const Morphism& f) {
    const FPModule& m = f.source();
    const PolyMatrix gens =
        clean_columns(syzygies_modulo(f.matrix().transpose(), f.target().relations()), m.relation_module());
    const FPModule k = FPModule::subquotient(gens, m.relation_module());
    return Morphism::make(k, m, gens.transpose());
}

Morphism cokernel(const Morphism& f) {
    const FPModule& n = f.target();
    const FPModule c = FPModule::present(n.relations().hstack(f.matrix().transpose()), n.generators());
    return Morphism::make(n, c, PolyMatrix::identity(n.ring(), n.generators()));
}

ImageFactorization image(const Morphism& f) {
    const PolyMatrix gens = f.matrix().transpose();
    const FPModule i = FPModule::subquotient(gens, f.target().relation_module());
    return ImageFactorization{Morphism::make(f.source(), i, PolyMatrix::identity(f.source().ring(), gens.cols())),
                              Morphism::make(i, f.target(), f.matrix())};
}

bool is_mono(const Morphism& f) { return kernel(f).source().is_zero(); }

bool is_epi(const Morphism& f) { return cokernel(f).target().is_zero(); }

DirectSum direct_sum(const FPModule& m, const FPModule& n) {
    require_same_ring(m.ring(), n.ring(), "direct_sum");
    const auto& ring = m.ring();
    const std::size_t a = m.generators(), b = n.generators();
    const FPModule s = FPModule::present(block_diagonal(m.relations(), n.relations()), a + b);
    const PolyMatrix id = PolyMatrix::identity(ring, a + b);
    return DirectSum{s,
                     Morphism::make(m, s, id.select_rows(range(0, a))),
                     Morphism::make(n, s, id.select_rows(range(a, a + b))),
                     Morphism::make(s, m, id.select_columns(range(0, a))),
                     Morphism::make(s, n, id.select_columns(range(a, a + b)))};
}

Pullback pullback(const Morphism& p, const Morphism& q) {
    if (!(p.target() == q.target())) throw std::invalid_argument("pullback: the two maps have different targets");
    const DirectSum s = direct_sum(p.source(), q.source());
    PolyMatrix neg_q = q.matrix();
    for (std::size_t i = 0; i < neg_q.rows(); ++i)
        for (std::size_t j = 0; j < neg_q.cols(); ++j) neg_q.at(i, j) = -neg_q.at(i, j);
    const Morphism diff = Morphism::make(s.module, p.target(), p.matrix().vstack(neg_q));
    const Morphism k = kernel(diff);
    return Pullback{k.source(), k.then(s.pr1), k.then(s.pr2)};
}

Dual dual(const FPModule& m) {
    const PolyMatrix s = syzygies(m.relations().transpose());
    return Dual{FPModule::present(syzygies(s), s.cols()), s};
}

Morphism dual(const Morphism& f, const Dual& source_dual, const Dual& target_dual) {
    const PolyMatrix values = f.matrix() * target_dual.functionals;
    std::vector<FreeVector> rows;
    if (values.cols() > 0) {
        Lifter lifter(source_dual.functionals);
        for (std::size_t j = 0; j < values.cols(); ++j) {
            auto c = lifter(values.column(j));
            if (!c) throw std::logic_error("dual: pulled-back functional is not a combination of the dual basis");
            rows.push_back(std::move(*c));
        }
    }
    return Morphism::make(target_dual.module, source_dual.module,
                          PolyMatrix::from_rows(f.source().ring(), source_dual.functionals.cols(), rows));
}

Morphism dual(const Morphism& f) { return dual(f, dual(f.source()), dual(f.target())); }

Morphism evaluation_map(const FPModule& m) {
    const Dual d1 = dual(m);
    const Dual d2 = dual(d1.module);
    std::vector<FreeVector> rows;
    if (m.generators() > 0) {
        Lifter lifter(d2.functionals);
        for (std::size_t i = 0; i < m.generators(); ++i) {
            auto c = lifter(d1.functionals.row(i));
            if (!c) throw std::logic_error("evaluation_map: evaluation is not a combination of the double-dual basis");
            rows.push_back(std::move(*c));
        }
    }
    return Morphism::make(m, d2.module, PolyMatrix::from_rows(m.ring(), d2.functionals.cols(), rows));
}

std::optional<Morphism> solve_lift(const Morphism& f, const Morphism& g) {
    if (!(f.target() == g.target())) throw std::invalid_argument("solve_lift: the two maps have different targets");
    const FPModule& x = f.source();
    const FPModule& y = g.source();
    const auto& ring = x.ring();
    const std::size_t gx = x.generators(), gy = y.generators();

    // particular solution generator by generator: G^T y_i == F^T e_i modulo Rel_Z
    const PolyMatrix system = g.matrix().transpose().hstack(f.target().relations());
    PolyMatrix y0(ring, gy, gx);
    if (gx > 0) {
        Lifter lifter(system);
        for (std::size_t i = 0; i < gx; ++i) {
            auto c = lifter(f.matrix().row(i));
            if (!c) return std::nullopt;
            for (std::size_t k = 0; k < gy; ++k) y0.at(k, i) = (*c)[k];
        }
    }

    // the chosen images must also respect the relations of X; correct by
    // homogeneous solutions Kg * C when they do not
    const PolyMatrix rx = x.relations(), ry = y.relations();
    const PolyMatrix defect = y0 * rx;
    bool consistent = true;
    for (std::size_t j = 0; j < defect.cols() && consistent; ++j) consistent = y.is_zero_element(defect.column(j));
    if (!consistent) {
        const PolyMatrix kg = top_rows(syzygies(system), gy);
        const std::size_t k = kg.cols(), rho = rx.cols();
        std::vector<FreeVector> columns;
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < gx; ++b) {
                FreeVector col(gy * rho);
                for (std::size_t j = 0; j < rho; ++j)
                    for (std::size_t t = 0; t < gy; ++t) col[j * gy + t] = rx.at(b, j) * kg.at(t, a);
                columns.push_back(std::move(col));
            }
        }
        for (std::size_t j = 0; j < rho; ++j) {
            for (std::size_t l = 0; l < ry.cols(); ++l) {
                FreeVector col(gy * rho);
                for (std::size_t t = 0; t < gy; ++t) col[j * gy + t] = ry.at(t, l);
                columns.push_back(std::move(col));
            }
        }
        FreeVector target(gy * rho);
        for (std::size_t j = 0; j < rho; ++j)
            for (std::size_t t = 0; t < gy; ++t) target[j * gy + t] = -defect.at(t, j);
        auto sol = lift(target, PolyMatrix::from_columns(ring, gy * rho, columns));
        if (!sol) return std::nullopt;
        PolyMatrix c(ring, k, gx);
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < gx; ++b) c.at(a, b) = (*sol)[a * gx + b];
        y0 = y0 + kg * c;
    }

    Morphism h = Morphism::make(x, y, y0.transpose());
    if (!h.then(g).equals(f)) throw std::logic_error("solve_lift: computed lift does not factor f");
    return h;
}

bool ShortExactSequence::verify() const {
    if (!(mono.target() == epi.source())) return false;
    if (!is_mono(mono) || !is_epi(epi) || !mono.then(epi).is_zero()) return false;
    const FPModule& n = epi.source();
    const Submodule im(mono.matrix().transpose().hstack(n.relations()));
    const Submodule ker(kernel(epi).matrix().transpose().hstack(n.relations()));
    return im == ker;
}

Simplification simplify(const FPModule& m) {
    const auto& ring = m.ring();
    PolyMatrix rel = m.relations();
    PolyMatrix to = PolyMatrix::identity(ring, m.generators());
    PolyMatrix from = PolyMatrix::identity(ring, m.generators());
    for (;;) {
        std::size_t pc = rel.cols(), pk = 0;
        for (std::size_t c = 0; c < rel.cols() && pc == rel.cols(); ++c)
            for (std::size_t k = 0; k < rel.rows(); ++k)
                if (rel.at(k, c).is_unit()) {
                    pc = c;
                    pk = k;
                    break;
                }
        if (pc == rel.cols()) break;
        const std::size_t g = rel.rows();
        const Rational inv = 1 / rel.at(pk, pc).constant_coefficient();
        const FreeVector r = rel.column(pc);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < g; ++i)
            if (i != pk) keep.push_back(i);

        // generator pk equals -inv * sum_{i != pk} r_i e_i
        PolyMatrix elim(ring, g, g - 1);
        for (std::size_t t = 0; t < keep.size(); ++t) {
            elim.at(keep[t], t) = Polynomial(ring, 1L);
            elim.at(pk, t) = -r[keep[t]].scaled(inv);
        }
        std::vector<FreeVector> next;
        for (std::size_t c = 0; c < rel.cols(); ++c) {
            if (c == pc) continue;
            FreeVector s = rel.column(c);
            const Polynomial factor = s[pk].scaled(inv);
            FreeVector reduced;
            for (std::size_t i : keep) reduced.push_back(s[i] - factor * r[i]);
            next.push_back(std::move(reduced));
        }
        to = to * elim;
        from = from.select_rows(keep);
        rel = FPModule::present(PolyMatrix::from_columns(ring, g - 1, next), g - 1).relations();
    }
    const FPModule s = FPModule::present(rel, rel.rows());
    return Simplification{s, Morphism::make(m, s, to), Morphism::make(s, m, from)};
}

}  // namespace hacert
