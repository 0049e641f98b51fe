#pragma once

// Dense univariate integer polynomials, Sturm sequences and real root
// isolation with rational endpoints.

#include <cstddef>
#include <string>
#include <vector>

#include "vps/exact.hpp"

namespace vps {

/// coeffs[k] multiplies x^k; no trailing zeros (the zero polynomial is empty).
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Integer> coeffs);
    /// Requires p.nvars() == 1.
    static UPoly from_polynomial(const Polynomial& p);

    const std::vector<Integer>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }
    /// -1 for zero.
    long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
    const Integer& lead() const { return c_.back(); }

    Rational evaluate(const Rational& x) const;
    Sign sign_at(const Rational& x) const;

    UPoly derivative() const;
    /// Divides out the positive content.
    UPoly primitive() const;

    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly&, const UPoly&) = default;

private:
    void trim();
    std::vector<Integer> c_;
};

/// Pseudo-remainder of a by b, scaled so it has the sign of the true
/// remainder over Q, then made primitive.
UPoly signed_prem(const UPoly& a, const UPoly& b);
/// Primitive gcd with positive leading coefficient.
UPoly gcd(const UPoly& a, const UPoly& b);
/// p / gcd(p, p'), primitive.
UPoly squarefree_part(const UPoly& p);

/// Sturm chain p, p', -rem, ... built from signed pseudo-remainders.
class SturmSequence {
public:
    explicit SturmSequence(const UPoly& p);
    /// Sign variations at x (zeros skipped).
    std::size_t variations(const Rational& x) const;
    /// Distinct roots in (a, b], requires a < b and p(a) != 0.
    std::size_t count_roots(const Rational& a, const Rational& b) const;

private:
    std::vector<UPoly> chain_;
};

/// 1 + max |c_k| / |lead|: every real root lies in (-B, B).
Rational cauchy_bound(const UPoly& p);

/// One real root: exact when lo == hi, otherwise the unique root of the
/// defining polynomial in the open interval (lo, hi), whose endpoints are
/// not roots.
struct RootInterval {
    Rational lo;
    Rational hi;
    bool exact() const { return lo == hi; }
};

/// Disjoint isolating intervals for every distinct real root, ascending.
/// Throws std::domain_error for the zero polynomial.
std::vector<RootInterval> isolate_real_roots(const UPoly& p);
std::vector<RootInterval> isolate_real_roots(const Polynomial& p);

/// A real algebraic number: the unique root of `defining` (squarefree) in
/// `where`.
struct RealAlgebraic {
    UPoly defining;
    RootInterval where;
};

/// Halves the isolating interval (may land on the root exactly).
void refine(RealAlgebraic& a);

/// Exact sign of f at a real algebraic number.
Sign sign_at(const UPoly& f, RealAlgebraic a);

std::string to_string(const RealAlgebraic& a);

} // namespace vps
