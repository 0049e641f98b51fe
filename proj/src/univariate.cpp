#include "vps/univariate.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace vps {

UPoly::UPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from_polynomial(const Polynomial& p) {
    if (p.nvars() != 1)
        throw std::invalid_argument("univariate polynomial expected, got " + std::to_string(p.nvars()) +
                                    " variables");
    std::vector<Integer> c(p.is_zero() ? 0 : static_cast<std::size_t>(p.degree()) + 1);
    for (const auto& [m, v] : p.terms()) c[m[0]] = v;
    return UPoly(std::move(c));
}

Rational UPoly::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Sign UPoly::sign_at(const Rational& x) const {
    // Homogenized Horner over the integers: sum c_k p^k q^(n-k), q > 0.
    if (c_.empty()) return Sign::zero;
    const Integer& p = x.get_num();
    const Integer& q = x.get_den();
    Integer acc = c_.back();
    Integer qpow = 1;
    for (std::size_t k = c_.size() - 1; k-- > 0;) {
        qpow *= q;
        acc = acc * p + c_[k] * qpow;
    }
    return sign_of(acc);
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return UPoly();
    std::vector<Integer> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return UPoly(std::move(d));
}

UPoly UPoly::primitive() const {
    if (c_.empty()) return *this;
    Integer g = 0;
    for (const auto& v : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) return *this;
    }
    std::vector<Integer> out(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) mpz_divexact(out[k].get_mpz_t(), c_[k].get_mpz_t(), g.get_mpz_t());
    return UPoly(std::move(out));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<Integer> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
}

UPoly signed_prem(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
    std::vector<Integer> r = a.coeffs();
    const auto& bc = b.coeffs();
    const long db = b.degree();
    const Integer& lb = b.lead();
    long steps = 0;
    while (static_cast<long>(r.size()) - 1 >= db && !r.empty()) {
        const long dr = static_cast<long>(r.size()) - 1;
        const Integer lr = r.back();
        // r <- lb * r - lr * x^(dr-db) * b
        for (auto& v : r) v *= lb;
        for (long k = 0; k <= db; ++k) r[k + dr - db] -= lr * bc[k];
        r.pop_back();
        while (!r.empty() && r.back() == 0) r.pop_back();
        ++steps;
    }
    UPoly rem(std::move(r));
    // rem = lb^steps * (true remainder); fix the sign when that factor is negative.
    if (lb < 0 && (steps % 2 == 1)) {
        std::vector<Integer> c = rem.coeffs();
        for (auto& v : c) v = -v;
        rem = UPoly(std::move(c));
    }
    return rem.primitive();
}

UPoly gcd(const UPoly& a, const UPoly& b) {
    UPoly x = a.primitive(), y = b.primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        UPoly r = signed_prem(x, y);
        x = std::move(y);
        y = std::move(r);
    }
    if (!x.is_zero() && x.lead() < 0) {
        std::vector<Integer> c = x.coeffs();
        for (auto& v : c) v = -v;
        x = UPoly(std::move(c));
    }
    return x;
}

namespace {

/// Exact division of a by b over Z (b divides a up to the content).
UPoly divide_exact(const UPoly& a, const UPoly& b) {
    std::vector<Integer> r = a.coeffs();
    const auto& bc = b.coeffs();
    const long db = b.degree();
    const long dq = a.degree() - db;
    if (dq < 0) return UPoly({Integer(0)});
    // Work over Q to tolerate content mismatch, then clear denominators.
    std::vector<Rational> rq(r.begin(), r.end());
    std::vector<Rational> q(dq + 1);
    for (long k = dq; k >= 0; --k) {
        q[k] = rq[k + db] / Rational(bc[db]);
        for (long j = 0; j <= db; ++j) rq[k + j] -= q[k] * Rational(bc[j]);
    }
    Integer den = 1;
    for (auto& v : q) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<Integer> out(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) out[k] = Rational(q[k] * Rational(den)).get_num();
    return UPoly(std::move(out)).primitive();
}

} // namespace

UPoly squarefree_part(const UPoly& p) {
    if (p.degree() <= 0) return p.primitive();
    const UPoly g = gcd(p, p.derivative());
    UPoly s = g.degree() <= 0 ? p.primitive() : divide_exact(p, g);
    if (s.lead() < 0) {
        std::vector<Integer> c = s.coeffs();
        for (auto& v : c) v = -v;
        s = UPoly(std::move(c));
    }
    return s;
}

SturmSequence::SturmSequence(const UPoly& p) {
    if (p.is_zero()) throw std::domain_error("Sturm sequence of the zero polynomial");
    chain_.push_back(p.primitive());
    UPoly d = p.derivative().primitive();
    while (!d.is_zero()) {
        chain_.push_back(d);
        const UPoly r = signed_prem(chain_[chain_.size() - 2], chain_.back());
        std::vector<Integer> c = r.coeffs();
        for (auto& v : c) v = -v;
        d = UPoly(std::move(c));
    }
}

std::size_t SturmSequence::variations(const Rational& x) const {
    std::size_t v = 0;
    Sign last = Sign::zero;
    for (const auto& q : chain_) {
        const Sign s = q.sign_at(x);
        if (s == Sign::zero) continue;
        if (last != Sign::zero && s != last) ++v;
        last = s;
    }
    return v;
}

std::size_t SturmSequence::count_roots(const Rational& a, const Rational& b) const {
    const auto va = variations(a), vb = variations(b);
    return va >= vb ? va - vb : 0;
}

Rational cauchy_bound(const UPoly& p) {
    if (p.degree() <= 0) return 1;
    Integer mx = 0;
    for (long k = 0; k < p.degree(); ++k) mx = std::max(mx, Integer(abs(p.coeffs()[k])));
    Rational q(mx, abs(p.lead()));
    q.canonicalize();
    return 1 + q;
}

namespace {

void isolate(const UPoly& p, const SturmSequence& st, const Rational& lo, const Rational& hi,
             std::size_t count, std::vector<RootInterval>& out) {
    if (count == 0) return;
    const Rational mid = (lo + hi) / 2;
    if (count == 1) {
        if (p.sign_at(mid) == Sign::zero) out.push_back({mid, mid});
        else out.push_back({lo, hi});
        return;
    }
    if (p.sign_at(mid) != Sign::zero) {
        isolate(p, st, lo, mid, st.count_roots(lo, mid), out);
        isolate(p, st, mid, hi, st.count_roots(mid, hi), out);
        return;
    }
    // mid is a root: shrink a window around it until it holds no other root.
    Rational delta = (hi - lo) / 4;
    while (true) {
        const Rational a = mid - delta, b = mid + delta;
        if (p.sign_at(a) != Sign::zero && p.sign_at(b) != Sign::zero && st.count_roots(a, b) == 1) {
            isolate(p, st, lo, a, st.count_roots(lo, a), out);
            out.push_back({mid, mid});
            isolate(p, st, b, hi, st.count_roots(b, hi), out);
            return;
        }
        delta /= 2;
    }
}

/// Fraction with the smallest denominator in the open interval (x, y),
/// x < y; y absent means +infinity.
Rational simplest_between(const Rational& x, const std::optional<Rational>& y) {
    if (y && x < 0 && *y > 0) return 0;
    if (y && *y <= 0) return -simplest_between(-*y, Rational(-x));
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    const Rational next(fl + 1);
    if (!y || next < *y) return next;
    // (x, y) lies inside [fl, fl + 1]: recurse on reciprocals of the fractional parts.
    const Rational lo = *y - Rational(fl);
    const Rational hi = x - Rational(fl);
    const std::optional<Rational> upper = hi == 0 ? std::nullopt : std::optional<Rational>(Rational(1) / hi);
    return Rational(fl) + Rational(1) / simplest_between(Rational(1) / lo, upper);
}

/// Replaces an isolating interval by its root when that root is rational.
void detect_rational_root(const UPoly& p, RootInterval& r) {
    // Rational roots of a primitive p have denominators dividing lead(p), so
    // two of them are at least 1/lead^2 apart.
    const Rational width(1, Integer(p.lead() * p.lead()));
    const Sign slo = p.sign_at(r.lo);
    while (r.hi - r.lo >= width) {
        const Rational mid = (r.lo + r.hi) / 2;
        const Sign sm = p.sign_at(mid);
        if (sm == Sign::zero) {
            r = {mid, mid};
            return;
        }
        if (sm == slo) r.lo = mid;
        else r.hi = mid;
    }
    const Rational cand = simplest_between(r.lo, r.hi);
    if (p.sign_at(cand) == Sign::zero) r = {cand, cand};
}

} // namespace

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
    if (p.is_zero()) throw std::domain_error("root isolation of the zero polynomial");
    std::vector<RootInterval> out;
    if (p.degree() == 0) return out;
    const UPoly sq = squarefree_part(p);
    if (sq.degree() == 1) {
        Rational r(-sq.coeffs()[0], sq.coeffs()[1]);
        r.canonicalize();
        out.push_back({r, r});
        return out;
    }
    const SturmSequence st(sq);
    const Rational B = cauchy_bound(sq);
    isolate(sq, st, -B, B, st.count_roots(-B, B), out);
    for (auto& r : out)
        if (!r.exact()) detect_rational_root(sq, r);
    return out;
}

std::vector<RootInterval> isolate_real_roots(const Polynomial& p) {
    return isolate_real_roots(UPoly::from_polynomial(p));
}

void refine(RealAlgebraic& a) {
    if (a.where.exact()) return;
    const Rational mid = (a.where.lo + a.where.hi) / 2;
    const Sign sm = a.defining.sign_at(mid);
    if (sm == Sign::zero) {
        a.where = {mid, mid};
    } else if (sm != a.defining.sign_at(a.where.lo)) {
        a.where.hi = mid;
    } else {
        a.where.lo = mid;
    }
}

Sign sign_at(const UPoly& f, RealAlgebraic a) {
    if (f.is_zero()) return Sign::zero;
    if (a.where.exact()) return f.sign_at(a.where.lo);
    const UPoly g = gcd(f, a.defining);
    if (g.degree() >= 1 && SturmSequence(g).count_roots(a.where.lo, a.where.hi) > 0) return Sign::zero;
    if (f.degree() <= 0) return sign_of(f.lead());
    // f(alpha) != 0: shrink until f has no root in [lo, hi].
    const SturmSequence sf(squarefree_part(f));
    while (!a.where.exact()) {
        if (f.sign_at(a.where.lo) != Sign::zero && f.sign_at(a.where.hi) != Sign::zero &&
            sf.count_roots(a.where.lo, a.where.hi) == 0)
            return f.sign_at(a.where.lo);
        refine(a);
    }
    return f.sign_at(a.where.lo);
}

std::string to_string(const RealAlgebraic& a) {
    if (a.where.exact()) return to_string(a.where.lo);
    std::vector<Integer> c = a.defining.coeffs();
    Polynomial p(1);
    for (std::size_t k = 0; k < c.size(); ++k) p.add_term(Monomial{static_cast<std::uint32_t>(k)}, c[k]);
    return "root of " + to_string(p) + " in (" + to_string(a.where.lo) + ", " + to_string(a.where.hi) + ")";
}

} // namespace vps
