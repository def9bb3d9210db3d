#pragma once

// Exact arithmetic for the two supported base rings: multivariate polynomials
// over the rationals (with a monomial order) and the integers.  Integers are
// modelled as the polynomial ring in zero variables whose coefficients are
// restricted to be integral, so vectors and matrices share one element type.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace hacert {

using Rational = mpq_class;
using Integer = mpz_class;

enum class MonomialOrder { Degrevlex, Lex };
enum class RingKind { PolynomialOverQ, Integers };

class RingDescriptor;
using RingPtr = std::shared_ptr<const RingDescriptor>;

/// The computable base ring R.
class RingDescriptor {
public:
    static RingPtr polynomial(std::vector<std::string> variables,
                              MonomialOrder order = MonomialOrder::Degrevlex);
    static RingPtr integers();

    RingKind kind() const noexcept { return kind_; }
    bool is_integers() const noexcept { return kind_ == RingKind::Integers; }
    const std::vector<std::string>& variables() const noexcept { return variables_; }
    std::size_t nvars() const noexcept { return variables_.size(); }
    MonomialOrder order() const noexcept { return order_; }

    /// Krull dimension: number of variables over Q, one for Z.
    int krull_dimension() const noexcept {
        return is_integers() ? 1 : static_cast<int>(variables_.size());
    }

    std::optional<std::size_t> variable_index(std::string_view name) const;

    bool operator==(const RingDescriptor& other) const noexcept;

private:
    RingDescriptor(RingKind kind, std::vector<std::string> variables, MonomialOrder order)
        : kind_(kind), variables_(std::move(variables)), order_(order) {}

    RingKind kind_;
    std::vector<std::string> variables_;
    MonomialOrder order_;
};

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept;

using Exponents = boost::container::small_vector<std::int32_t, 4>;

/// Three-way comparison of exponent vectors under `order`.
/// Throws std::invalid_argument on a length mismatch.
std::strong_ordering monomial_compare(const Exponents& a, const Exponents& b, MonomialOrder order);

bool divides(const Exponents& a, const Exponents& b) noexcept;  // a | b
Exponents monomial_lcm(const Exponents& a, const Exponents& b);
Exponents monomial_quotient(const Exponents& b, const Exponents& a);  // b / a, requires a | b
Exponents monomial_product(const Exponents& a, const Exponents& b);
std::int64_t total_degree(const Exponents& e) noexcept;

struct Term {
    Exponents exps;
    Rational coef;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, std::string token, const std::string& message);
    std::size_t position() const noexcept { return position_; }
    const std::string& token() const noexcept { return token_; }

private:
    std::size_t position_;
    std::string token_;
};

/// Element of R.  Terms are kept strictly descending in the ring's monomial
/// order with nonzero coefficients; the zero polynomial has no terms and may
/// carry no ring.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(RingPtr ring, const Rational& constant);
    Polynomial(RingPtr ring, long constant) : Polynomial(std::move(ring), Rational(constant)) {}

    static Polynomial variable(RingPtr ring, std::size_t index);
    static Polynomial monomial(RingPtr ring, Exponents exps, const Rational& coef);
    /// Collects like terms, drops zeros and sorts.
    static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
    static Polynomial parse(std::string_view text, RingPtr ring);

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Nonzero constant over Q; +-1 over Z.
    bool is_unit() const noexcept;
    const Term& leading_term() const { return terms_.front(); }
    const Rational& leading_coefficient() const { return terms_.front().coef; }
    std::int64_t total_degree() const noexcept;
    Rational constant_coefficient() const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial scaled(const Rational& c) const;
    Polynomial pow(unsigned exponent) const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept;

    std::string to_string() const;

private:
    Polynomial(RingPtr ring, std::vector<Term> sorted_terms, bool /*already canonical*/)
        : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}
    static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract);

    RingPtr ring_;
    std::vector<Term> terms_;
};

/// Quotient a / b when b divides a exactly; std::nullopt otherwise.
std::optional<Polynomial> divide_exact(const Polynomial& a, const Polynomial& b);

using FreeVector = std::vector<Polynomial>;

/// Dense rectangular matrix over R; zero rows or columns are allowed.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

    static PolyMatrix identity(RingPtr ring, std::size_t n);
    static PolyMatrix from_columns(RingPtr ring, std::size_t rows, const std::vector<FreeVector>& columns);
    static PolyMatrix from_rows(RingPtr ring, std::size_t cols, const std::vector<FreeVector>& rows);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Polynomial& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Polynomial& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    FreeVector column(std::size_t j) const;
    FreeVector row(std::size_t i) const;
    std::vector<FreeVector> columns() const;
    std::vector<FreeVector> row_list() const;

    PolyMatrix transpose() const;
    PolyMatrix hstack(const PolyMatrix& right) const;
    PolyMatrix vstack(const PolyMatrix& below) const;
    PolyMatrix select_columns(const std::vector<std::size_t>& idx) const;
    PolyMatrix select_rows(const std::vector<std::size_t>& idx) const;
    bool is_zero() const noexcept;

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) noexcept;

private:
    RingPtr ring_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Polynomial> data_;
};

FreeVector zero_vector(std::size_t n);
FreeVector unit_vector(const RingPtr& ring, std::size_t n, std::size_t i);
bool is_zero(const FreeVector& v) noexcept;
FreeVector add(const FreeVector& a, const FreeVector& b);
FreeVector scale(const Polynomial& c, const FreeVector& v);
/// M * v for an (r x c) matrix and a length-c vector.
FreeVector mat_vec(const PolyMatrix& m, const FreeVector& v);

}  // namespace hacert
