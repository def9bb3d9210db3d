#include "hermite.hpp"

#include <algorithm>

namespace hacert::detail {

namespace {

void axpy(IVec& dst, const Integer& c, const IVec& src) {
    for (std::size_t k = 0; k < dst.size(); ++k) dst[k] -= c * src[k];
}

HermiteForm echelon(std::vector<IVec> g, std::size_t width, bool with_transform) {
    const std::size_t m = g.size();
    std::vector<IVec> u;
    if (with_transform) {
        u.assign(m, IVec(m, 0));
        for (std::size_t i = 0; i < m; ++i) u[i][i] = 1;
    }
    auto swap_rows = [&](std::size_t a, std::size_t b) {
        std::swap(g[a], g[b]);
        if (with_transform) std::swap(u[a], u[b]);
    };
    auto sub_rows = [&](std::size_t dst, const Integer& c, std::size_t src) {
        axpy(g[dst], c, g[src]);
        if (with_transform) axpy(u[dst], c, u[src]);
    };

    HermiteForm form;
    form.width = width;
    std::size_t r = 0;
    for (std::size_t col = 0; col < width && r < m; ++col) {
        for (;;) {
            // smallest nonzero |entry| in this column at or below r
            std::size_t best = m;
            for (std::size_t i = r; i < m; ++i) {
                if (g[i][col] == 0) continue;
                if (best == m || abs(g[i][col]) < abs(g[best][col])) best = i;
            }
            if (best == m) break;
            swap_rows(r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < m; ++i) {
                if (g[i][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), g[i][col].get_mpz_t(), g[r][col].get_mpz_t());
                sub_rows(i, q, r);
                if (g[i][col] != 0) done = false;
            }
            if (done) break;
        }
        if (r < m && g[r][col] != 0) {
            if (g[r][col] < 0) {
                for (auto& x : g[r]) x = -x;
                if (with_transform)
                    for (auto& x : u[r]) x = -x;
            }
            for (std::size_t i = 0; i < r; ++i) {
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), g[i][col].get_mpz_t(), g[r][col].get_mpz_t());
                if (q != 0) sub_rows(i, q, r);
            }
            form.pivots.push_back(col);
            ++r;
        }
    }
    for (std::size_t i = 0; i < r; ++i) {
        form.rows.push_back(g[i]);
        if (with_transform) form.transform.push_back(u[i]);
    }
    if (with_transform) {
        std::vector<IVec> ker(u.begin() + static_cast<std::ptrdiff_t>(r), u.end());
        if (!ker.empty()) form.kernel = echelon(std::move(ker), m, false).rows;
    }
    return form;
}

}  // namespace

HermiteForm hermite(const std::vector<IVec>& generators, std::size_t width, bool with_transform) {
    for (const auto& v : generators)
        if (v.size() != width) throw std::invalid_argument("hermite: row width mismatch");
    return echelon(generators, width, with_transform);
}

IVec hermite_reduce(IVec v, const HermiteForm& form, IVec* coefficients) {
    if (coefficients) coefficients->assign(form.rows.size(), 0);
    for (std::size_t k = 0; k < form.rows.size(); ++k) {
        const auto p = form.pivots[k];
        if (v[p] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), form.rows[k][p].get_mpz_t());
        if (q == 0) continue;
        axpy(v, q, form.rows[k]);
        if (coefficients) (*coefficients)[k] = q;
    }
    return v;
}

IVec to_ivec(const FreeVector& v) {
    IVec out(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational c = v[i].constant_coefficient();
        if (!v[i].is_constant() || c.get_den() != 1) throw std::invalid_argument("entry is not an integer");
        out[i] = c.get_num();
    }
    return out;
}

FreeVector from_ivec(const IVec& v, const RingPtr& ring) {
    FreeVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out[i] = Polynomial(ring, Rational(v[i]));
    return out;
}

}  // namespace hacert::detail
