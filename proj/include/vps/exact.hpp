#pragma once

// Exact arithmetic core: big integers, rationals, monomials and sparse
// multivariate polynomials with integer coefficients.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace vps {

using Integer = mpz_class;
using Rational = mpq_class;

/// Bits of |v|; 0 for v == 0.
std::size_t bit_length(const Integer& v);
/// Coefficient size: bits of the absolute value plus one sign bit.
std::size_t coefficient_size(const Integer& v);

/// Parses `p`, `-p` or `p/q` with q != 0; the result is canonical.
Rational parse_rational(std::string_view text);
/// Comma-separated list of rationals, e.g. "3/2,-1,0".
std::vector<Rational> parse_rationals(std::string_view text);
/// `p/q`, or bare `p` when the denominator is 1.
std::string to_string(const Rational& v);
std::string to_string(const Integer& v);

enum class Sign : int { negative = -1, zero = 0, positive = 1 };

inline Sign operator*(Sign a, Sign b) noexcept {
    return static_cast<Sign>(static_cast<int>(a) * static_cast<int>(b));
}
inline Sign sign_of(const Integer& v) noexcept { return static_cast<Sign>(sgn(v)); }
inline Sign sign_of(const Rational& v) noexcept { return static_cast<Sign>(sgn(v)); }
inline int to_int(Sign s) noexcept { return static_cast<int>(s); }
/// "-1", "0" or "1".
std::string to_string(Sign s);

/// Exponent vector of fixed length (the ambient variable count).
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}
    Monomial(std::initializer_list<std::uint32_t> exps) : exps_(exps) {}

    std::size_t size() const noexcept { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::uint32_t& operator[](std::size_t i) { return exps_[i]; }
    const std::vector<std::uint32_t>& exponents() const noexcept { return exps_; }

    std::uint64_t total_degree() const noexcept;
    bool divides(const Monomial& other) const;
    bool is_one() const noexcept;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Requires b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b);

    friend auto operator<=>(const Monomial&, const Monomial&) = default;
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::uint32_t> exps_;
};

/// Canonical monomial order: lexicographic on exponent tuples, first
/// variable most significant, larger monomials first.
struct CanonicalOrder {
    bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

class Polynomial {
public:
    using Terms = std::map<Monomial, Integer, CanonicalOrder>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const Integer& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial term(const Monomial& m, const Integer& c);

    std::size_t nvars() const noexcept { return nvars_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Total degree, -1 for the zero polynomial.
    std::int64_t degree() const noexcept;
    /// Largest exponent of one variable, -1 for zero.
    std::int64_t degree_in(std::size_t var) const;
    bool is_homogeneous(std::uint64_t d) const noexcept;
    /// Largest coefficient_size() over all terms (the statistic L).
    std::size_t max_coefficient_size() const noexcept;
    Integer coefficient(const Monomial& m) const;
    Integer constant_term() const;

    /// Adds c·m in place, pruning a cancelled term.
    void add_term(const Monomial& m, const Integer& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);
    Polynomial& operator*=(const Integer& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(Polynomial a);

    Polynomial pow(std::uint64_t e) const;

    Rational evaluate(std::span<const Rational> point) const;
    /// Sign at a rational point, exact.
    Sign sign_at(std::span<const Rational> point) const { return sign_of(evaluate(point)); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    /// Arbitrary but fixed total order, for use as a map key.
    friend bool operator<(const Polynomial& a, const Polynomial& b);

private:
    void require_same_arity(const Polynomial& o) const;

    std::size_t nvars_ = 0;
    Terms terms_;
};

enum class ArithOp { add, sub, mul };

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op);

/// Component i (0 <= i <= dmax) is the homogeneous part of degree i;
/// parts of degree > dmax are dropped.
std::vector<Polynomial> homogeneous_components(const Polynomial& p, std::uint64_t dmax);

/// Layout of the variables produced by degree_reduce: z(i, j) stands for
/// v_i^(2^j), w(j) for the constant 2^(2^j).
struct DegreeReducedLayout {
    std::size_t original_vars;
    std::size_t pbound;

    std::size_t z(std::size_t var, std::size_t j) const { return var * pbound + j; }
    std::size_t w(std::size_t j) const { return original_vars * pbound + j; }
    std::size_t nvars() const { return (original_vars + 1) * pbound; }
};

/// Rewrites p over the z/w variables so that every coefficient is in
/// {-1, 0, 1}. Requires deg(p) < 2^pbound and |c| < 2^(2^pbound).
Polynomial degree_reduce(const Polynomial& p, std::size_t pbound);

/// Text form: `3*x1^2*x2 - x2 + 5`, canonical order, variables 1-based.
std::string to_string(const Polynomial& p);
/// Whitespace-insensitive parser for the text form. When nvars is 0 the
/// variable count is the largest index that occurs (at least 1).
Polynomial parse_polynomial(std::string_view text, std::size_t nvars = 0);
std::string to_string(const Monomial& m);

} // namespace vps
