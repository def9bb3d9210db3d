#include "hacert/snf_oracle.hpp"

#include <algorithm>

namespace hacert {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_poly(const PolyMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Polynomial& p = m.at(i, j);
            const Rational c = p.constant_coefficient();
            if (!p.is_constant() || c.get_den() != 1) throw std::invalid_argument("IntMatrix: entry is not an integer");
            out.at(i, j) = c.get_num();
        }
    }
    return out;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix: shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

namespace {

struct Work {
    IntMatrix a, u, v;

    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(i, j), a.at(k, j));
        for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a.at(i, j), a.at(i, k));
        for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, k));
    }
    // row i -= q * row k
    void row_op(std::size_t i, const Integer& q, std::size_t k) {
        for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) -= q * a.at(k, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) -= q * u.at(k, j);
    }
    // col j -= q * col k
    void col_op(std::size_t j, const Integer& q, std::size_t k) {
        for (std::size_t i = 0; i < a.rows(); ++i) a.at(i, j) -= q * a.at(i, k);
        for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, j) -= q * v.at(i, k);
    }
    void negate_row(std::size_t i) {
        for (std::size_t j = 0; j < a.cols(); ++j) a.at(i, j) = -a.at(i, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
    }
};

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& input) {
    const std::size_t m = input.rows(), n = input.cols();
    Work w{input, IntMatrix::identity(m), IntMatrix::identity(n)};
    auto& a = w.a;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest |entry| of the trailing block becomes the pivot
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a.at(i, j) != 0 && (pi == m || abs(a.at(i, j)) < abs(a.at(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) break;
            if (pi != t) w.swap_rows(pi, t);
            if (pj != t) w.swap_cols(pj, t);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a.at(i, t) == 0) continue;
                w.row_op(i, floor_div(a.at(i, t), a.at(t, t)), t);
                if (a.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a.at(t, j) == 0) continue;
                w.col_op(j, floor_div(a.at(t, j), a.at(t, t)), t);
                if (a.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: fold a row carrying a non-multiple into row t
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a.at(i, j) % a.at(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            w.row_op(t, Integer(-1), bad);
        }
        if (a.at(t, t) < 0) w.negate_row(t);
    }
    SmithDecomposition out;
    for (std::size_t t = 0; t < std::min(m, n); ++t) out.diagonal.push_back(a.at(t, t));
    out.U = std::move(w.u);
    out.V = std::move(w.v);
    out.D = std::move(w.a);
    return out;
}

AbelianInvariants abelian_invariants(const IntMatrix& relations) {
    const SmithDecomposition s = smith_normal_form(relations);
    AbelianInvariants inv;
    std::size_t nonzero = 0;
    for (const auto& d : s.diagonal) {
        if (d == 0) continue;
        ++nonzero;
        if (d != 1) inv.torsion.push_back(d);
    }
    inv.free_rank = relations.rows() - nonzero;
    return inv;
}

AbelianInvariants abelian_invariants(const FPModule& m) {
    if (!m.ring()->is_integers()) throw std::invalid_argument("abelian_invariants: integer backend required");
    return abelian_invariants(IntMatrix::from_poly(m.relations()));
}

OracleHomology oracle_homology(const IntMatrix& relations) {
    OracleHomology h;
    h.module = abelian_invariants(relations);
    h.torsion = h.module.torsion;
    h.dual_rank = h.module.free_rank;
    h.ext1 = h.module.torsion;
    if (h.module.free_rank > 0) h.grade = GradeValue::finite(0);
    else if (!h.module.torsion.empty()) h.grade = GradeValue::finite(1);
    return h;
}

OracleHomology oracle_homology(const FPModule& m) {
    if (!m.ring()->is_integers()) throw std::invalid_argument("oracle_homology: integer backend required");
    return oracle_homology(IntMatrix::from_poly(m.relations()));
}

bool oracle_splits(const IntMatrix& a_rel, const IntMatrix& n_rel, const IntMatrix& t_rel) {
    IntMatrix sum(a_rel.rows() + t_rel.rows(), a_rel.cols() + t_rel.cols());
    for (std::size_t i = 0; i < a_rel.rows(); ++i)
        for (std::size_t j = 0; j < a_rel.cols(); ++j) sum.at(i, j) = a_rel.at(i, j);
    for (std::size_t i = 0; i < t_rel.rows(); ++i)
        for (std::size_t j = 0; j < t_rel.cols(); ++j) sum.at(a_rel.rows() + i, a_rel.cols() + j) = t_rel.at(i, j);
    return abelian_invariants(n_rel) == abelian_invariants(sum);
}

bool oracle_splits(const ShortExactSequence& ses) {
    return oracle_splits(IntMatrix::from_poly(ses.mono.source().relations()),
                         IntMatrix::from_poly(ses.epi.source().relations()),
                         IntMatrix::from_poly(ses.epi.target().relations()));
}

}  // namespace hacert
