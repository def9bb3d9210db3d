#include "hacert/ring.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>
#include <unordered_set>

namespace hacert {

namespace {

bool valid_variable_name(const std::string& name) {
    static const std::regex pattern("[A-Za-z][A-Za-z0-9_]*");
    return std::regex_match(name, pattern);
}

void require_integral(const RingPtr& ring, const Rational& c) {
    if (ring && ring->is_integers() && c.get_den() != 1) {
        throw std::invalid_argument("non-integral coefficient " + c.get_str() + " over ZZ");
    }
}

}  // namespace

RingPtr RingDescriptor::polynomial(std::vector<std::string> variables, MonomialOrder order) {
    std::unordered_set<std::string> seen;
    for (const auto& v : variables) {
        if (!valid_variable_name(v)) throw std::invalid_argument("invalid variable name '" + v + "'");
        if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable name '" + v + "'");
    }
    return RingPtr(new RingDescriptor(RingKind::PolynomialOverQ, std::move(variables), order));
}

RingPtr RingDescriptor::integers() {
    return RingPtr(new RingDescriptor(RingKind::Integers, {}, MonomialOrder::Degrevlex));
}

std::optional<std::size_t> RingDescriptor::variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == name) return i;
    return std::nullopt;
}

bool RingDescriptor::operator==(const RingDescriptor& other) const noexcept {
    if (kind_ != other.kind_) return false;
    if (kind_ == RingKind::Integers) return true;
    return variables_ == other.variables_ && order_ == other.order_;
}

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

// ---------------------------------------------------------------------------
// Monomials

std::strong_ordering monomial_compare(const Exponents& a, const Exponents& b, MonomialOrder order) {
    if (a.size() != b.size()) throw std::invalid_argument("monomial_compare: exponent length mismatch");
    if (order == MonomialOrder::Degrevlex) {
        const auto da = total_degree(a), db = total_degree(b);
        if (da != db) return da <=> db;
        for (std::size_t k = a.size(); k-- > 0;) {
            if (a[k] != b[k]) return b[k] <=> a[k];  // smaller exponent in the last variable wins
        }
        return std::strong_ordering::equal;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] != b[k]) return a[k] <=> b[k];
    }
    return std::strong_ordering::equal;
}

bool divides(const Exponents& a, const Exponents& b) noexcept {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] > b[k]) return false;
    return true;
}

Exponents monomial_lcm(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = std::max(a[k], b[k]);
    return r;
}

Exponents monomial_quotient(const Exponents& b, const Exponents& a) {
    Exponents r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = b[k] - a[k];
    return r;
}

Exponents monomial_product(const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
    return r;
}

std::int64_t total_degree(const Exponents& e) noexcept {
    std::int64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

ParseError::ParseError(std::size_t position, std::string token, const std::string& message)
    : std::runtime_error(message + " at position " + std::to_string(position) +
                         (token.empty() ? std::string() : " near '" + token + "'")),
      position_(position),
      token_(std::move(token)) {}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial::Polynomial(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
    require_integral(ring_, constant);
    if (constant != 0) {
        Term t;
        t.exps.assign(ring_ ? ring_->nvars() : 0, 0);
        t.coef = constant;
        terms_.push_back(std::move(t));
    }
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
    if (!ring || index >= ring->nvars()) throw std::out_of_range("variable index out of range");
    Exponents e(ring->nvars(), 0);
    e[index] = 1;
    return monomial(std::move(ring), std::move(e), 1);
}

Polynomial Polynomial::monomial(RingPtr ring, Exponents exps, const Rational& coef) {
    require_integral(ring, coef);
    if (exps.size() != ring->nvars()) throw std::invalid_argument("exponent vector length mismatch");
    if (coef == 0) return Polynomial(std::move(ring), std::vector<Term>{}, true);
    return Polynomial(std::move(ring), std::vector<Term>{Term{std::move(exps), coef}}, true);
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
    const auto order = ring->order();
    for (const auto& t : terms) {
        if (t.exps.size() != ring->nvars()) throw std::invalid_argument("exponent vector length mismatch");
    }
    std::sort(terms.begin(), terms.end(), [order](const Term& a, const Term& b) {
        return monomial_compare(a.exps, b.exps, order) == std::strong_ordering::greater;
    });
    std::vector<Term> out;
    for (auto& t : terms) {
        if (!out.empty() && out.back().exps == t.exps) {
            out.back().coef += t.coef;
        } else {
            if (!out.empty() && out.back().coef == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coef == 0) out.pop_back();
    for (const auto& t : out) require_integral(ring, t.coef);
    return Polynomial(std::move(ring), std::move(out), true);
}

bool Polynomial::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && hacert::total_degree(terms_[0].exps) == 0);
}

bool Polynomial::is_unit() const noexcept {
    if (terms_.size() != 1 || hacert::total_degree(terms_[0].exps) != 0) return false;
    if (ring_ && ring_->is_integers()) return abs(terms_[0].coef) == 1;
    return true;
}

std::int64_t Polynomial::total_degree() const noexcept {
    std::int64_t d = -1;
    for (const auto& t : terms_) d = std::max(d, hacert::total_degree(t.exps));
    return d;
}

Rational Polynomial::constant_coefficient() const {
    if (!terms_.empty() && hacert::total_degree(terms_.back().exps) == 0) return terms_.back().coef;
    return 0;
}

Polynomial Polynomial::merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
    if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_)) throw std::invalid_argument("ring mismatch");
    std::vector<Term> out;
    out.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    const auto order = ring ? ring->order() : MonomialOrder::Degrevlex;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        std::strong_ordering c = std::strong_ordering::equal;
        if (i == a.terms_.size()) c = std::strong_ordering::less;
        else if (j == b.terms_.size()) c = std::strong_ordering::greater;
        else c = monomial_compare(a.terms_[i].exps, b.terms_[j].exps, order);
        if (c == std::strong_ordering::greater) {
            out.push_back(a.terms_[i++]);
        } else if (c == std::strong_ordering::less) {
            out.push_back(b.terms_[j]);
            if (subtract) out.back().coef = -out.back().coef;
            ++j;
        } else {
            Rational s = subtract ? Rational(a.terms_[i].coef - b.terms_[j].coef)
                                  : Rational(a.terms_[i].coef + b.terms_[j].coef);
            if (s != 0) out.push_back(Term{a.terms_[i].exps, s});
            ++i;
            ++j;
        }
    }
    return Polynomial(std::move(ring), std::move(out), true);
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) { return *this = merge(*this, rhs, false); }
Polynomial& Polynomial::operator-=(const Polynomial& rhs) { return *this = merge(*this, rhs, true); }
Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
    if (a.is_zero() || b.is_zero()) return Polynomial(ring, std::vector<Term>{}, true);
    if (!same_ring(a.ring_, b.ring_)) throw std::invalid_argument("ring mismatch");
    if (b.terms_.size() == 1) {
        std::vector<Term> out;
        out.reserve(a.terms_.size());
        const auto& m = b.terms_[0];
        for (const auto& t : a.terms_) out.push_back(Term{monomial_product(t.exps, m.exps), t.coef * m.coef});
        return Polynomial(ring, std::move(out), true);  // monomial multiplication preserves the order
    }
    std::vector<Term> all;
    all.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) all.push_back(Term{monomial_product(s.exps, t.exps), s.coef * t.coef});
    return Polynomial::from_terms(ring, std::move(all));
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (c == 0) return Polynomial(ring_, std::vector<Term>{}, true);
    require_integral(ring_, c);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned exponent) const {
    Polynomial result(ring_, Rational(1));
    Polynomial base = *this;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1u;
        if (exponent) base = base * base;
    }
    return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coef != b.terms_[i].coef) return false;
    }
    return true;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coef;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        c = abs(c);
        std::vector<std::string> factors;
        for (std::size_t k = 0; k < t.exps.size(); ++k) {
            if (t.exps[k] == 0) continue;
            std::string f = ring_->variables()[k];
            if (t.exps[k] > 1) f += "^" + std::to_string(t.exps[k]);
            factors.push_back(std::move(f));
        }
        if (factors.empty() || c != 1) factors.insert(factors.begin(), c.get_str());
        for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
    }
    return os.str();
}

std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    RingPtr ring = a.ring() ? a.ring() : b.ring();
    Polynomial rest = a;
    std::vector<Term> quotient;
    const auto& lb = b.leading_term();
    while (!rest.is_zero()) {
        const auto& lr = rest.leading_term();
        if (!divides(lb.exps, lr.exps)) return std::nullopt;
        Rational c = lr.coef / lb.coef;
        if (ring->is_integers() && c.get_den() != 1) return std::nullopt;
        auto q = Polynomial::monomial(ring, monomial_quotient(lr.exps, lb.exps), c);
        quotient.push_back(q.leading_term());
        rest -= q * b;
    }
    return Polynomial::from_terms(ring, std::move(quotient));
}

// ---------------------------------------------------------------------------
// Parser for the polynomial grammar: + - * ^, parentheses, integer and p/q
// literals, variable names.

namespace {

class Parser {
public:
    Parser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

    Polynomial parse() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError(pos_, "", "empty polynomial");
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(pos_, token_at(pos_), "unexpected token");
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string token_at(std::size_t p) const {
        if (p >= text_.size()) return "<end>";
        std::size_t e = p;
        if (std::isalnum(static_cast<unsigned char>(text_[p])) || text_[p] == '_') {
            while (e < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[e])) || text_[e] == '_')) ++e;
        } else {
            e = p + 1;
        }
        return std::string(text_.substr(p, e - p));
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else return acc;
        }
    }

    Polynomial term() {
        Polynomial acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    Polynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Polynomial power() {
        Polynomial base = atom();
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            Integer e = digits();
            if (start == pos_) throw ParseError(pos_, token_at(pos_), "expected nonnegative integer exponent");
            if (e > 100000) throw ParseError(start, e.get_str(), "exponent too large");
            base = base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    Integer digits() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) return 0;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Polynomial atom() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError(pos_, "<end>", "unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) throw ParseError(pos_, token_at(pos_), "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            Integer num = digits();
            Integer den = 1;
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_ws();
                const std::size_t dstart = pos_;
                den = digits();
                if (dstart == pos_) throw ParseError(pos_, token_at(pos_), "expected integer denominator");
                if (den == 0) throw ParseError(dstart, "0", "zero denominator");
            }
            Rational value(num, den);
            value.canonicalize();
            if (ring_->is_integers() && value.get_den() != 1)
                throw ParseError(start, std::string(text_.substr(start, pos_ - start)), "non-integral literal over ZZ");
            return Polynomial(ring_, value);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            std::string name = token_at(pos_);
            pos_ += name.size();
            auto idx = ring_->variable_index(name);
            if (!idx) throw ParseError(start, name, "unknown variable");
            return Polynomial::variable(ring_, *idx);
        }
        throw ParseError(pos_, token_at(pos_), "syntax error");
    }

    std::string_view text_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, RingPtr ring) {
    Polynomial p = Parser(text, ring).parse();
    if (!p.ring_) p.ring_ = ring;
    return p;
}

// ---------------------------------------------------------------------------
// Vectors and matrices

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Polynomial(ring, 1);
    return m;
}

PolyMatrix PolyMatrix::from_columns(RingPtr ring, std::size_t rows, const std::vector<FreeVector>& columns) {
    PolyMatrix m(std::move(ring), rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = columns[j][i];
    }
    return m;
}

PolyMatrix PolyMatrix::from_rows(RingPtr ring, std::size_t cols, const std::vector<FreeVector>& rows) {
    PolyMatrix m(std::move(ring), rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

FreeVector PolyMatrix::column(std::size_t j) const {
    FreeVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
    return v;
}

FreeVector PolyMatrix::row(std::size_t i) const {
    return FreeVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<FreeVector> PolyMatrix::columns() const {
    std::vector<FreeVector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
}

std::vector<FreeVector> PolyMatrix::row_list() const {
    std::vector<FreeVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

PolyMatrix PolyMatrix::hstack(const PolyMatrix& right) const {
    if (rows_ != right.rows_) throw std::invalid_argument("hstack: row count mismatch");
    PolyMatrix m(ring_ ? ring_ : right.ring_, rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (std::size_t j = 0; j < right.cols_; ++j) m.at(i, cols_ + j) = right.at(i, j);
    }
    return m;
}

PolyMatrix PolyMatrix::vstack(const PolyMatrix& below) const {
    if (cols_ != below.cols_) throw std::invalid_argument("vstack: column count mismatch");
    PolyMatrix m(ring_ ? ring_ : below.ring_, rows_ + below.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (std::size_t i = 0; i < below.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(rows_ + i, j) = below.at(i, j);
    return m;
}

PolyMatrix PolyMatrix::select_columns(const std::vector<std::size_t>& idx) const {
    PolyMatrix m(ring_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) m.at(i, j) = at(i, idx[j]);
    return m;
}

PolyMatrix PolyMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    PolyMatrix m(ring_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
    return m;
}

bool PolyMatrix::is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
    PolyMatrix m(a.ring_ ? a.ring_ : b.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const auto& bkj = b.at(k, j);
                if (!bkj.is_zero()) m.at(i, j) += aik * bkj;
            }
        }
    }
    return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum: dimension mismatch");
    PolyMatrix m = a;
    if (!m.ring_) m.ring_ = b.ring_;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix difference: dimension mismatch");
    PolyMatrix m = a;
    if (!m.ring_) m.ring_ = b.ring_;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
    return m;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

FreeVector zero_vector(std::size_t n) { return FreeVector(n); }

FreeVector unit_vector(const RingPtr& ring, std::size_t n, std::size_t i) {
    FreeVector v(n);
    v.at(i) = Polynomial(ring, 1);
    return v;
}

bool is_zero(const FreeVector& v) noexcept {
    return std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
}

FreeVector add(const FreeVector& a, const FreeVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector sum: length mismatch");
    FreeVector r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

FreeVector scale(const Polynomial& c, const FreeVector& v) {
    FreeVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

FreeVector mat_vec(const PolyMatrix& m, const FreeVector& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
    FreeVector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m.at(i, j).is_zero() && !v[j].is_zero()) r[i] += m.at(i, j) * v[j];
    return r;
}

}  // namespace hacert
