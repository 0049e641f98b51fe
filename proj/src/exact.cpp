#include "vps/exact.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

std::size_t bit_length(const Integer& v) {
    if (v == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

std::size_t coefficient_size(const Integer& v) { return bit_length(v) + 1; }

namespace {

bool valid_integer_text(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

Integer parse_integer(std::string_view s) {
    if (!valid_integer_text(s)) throw ParseError("malformed integer '" + std::string(s) + "'");
    if (s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

std::string strip(std::string_view s) {
    std::string out;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
    return out;
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string s = strip(text);
    const auto slash = s.find('/');
    Rational r;
    if (slash == std::string::npos) {
        r = Rational(parse_integer(s));
    } else {
        Integer num = parse_integer(std::string_view(s).substr(0, slash));
        Integer den = parse_integer(std::string_view(s).substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + s + "'");
        r = Rational(num, den);
        r.canonicalize();
    }
    return r;
}

std::vector<Rational> parse_rationals(std::string_view text) {
    std::vector<Rational> out;
    const std::string s = strip(text);
    if (s.empty()) return out;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        out.push_back(parse_rational(std::string_view(s).substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string to_string(const Rational& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(Sign s) { return std::to_string(to_int(s)); }

// ---------------------------------------------------------------------------
// Monomial

std::uint64_t Monomial::total_degree() const noexcept {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    if (other.size() != size()) throw std::invalid_argument("monomial length mismatch");
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > other.exps_[i]) return false;
    return true;
}

bool Monomial::is_one() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e == 0; });
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) throw std::invalid_argument("monomial length mismatch");
    Monomial r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] += b.exps_[i];
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    if (!b.divides(a)) throw std::invalid_argument("monomial does not divide");
    Monomial r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r.exps_[i] -= b.exps_[i];
    return r;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Integer& c) {
    Polynomial p(nvars);
    p.add_term(Monomial(nvars), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::invalid_argument("variable index out of range");
    Monomial m(nvars);
    m[index] = 1;
    return term(m, 1);
}

Polynomial Polynomial::term(const Monomial& m, const Integer& c) {
    Polynomial p(m.size());
    p.add_term(m, c);
    return p;
}

bool Polynomial::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::int64_t Polynomial::degree() const noexcept {
    std::int64_t d = -1;
    for (const auto& [m, c] : terms_) d = std::max<std::int64_t>(d, m.total_degree());
    return d;
}

std::int64_t Polynomial::degree_in(std::size_t var) const {
    if (var >= nvars_) throw std::invalid_argument("variable index out of range");
    std::int64_t d = -1;
    for (const auto& [m, c] : terms_) d = std::max<std::int64_t>(d, m[var]);
    return d;
}

bool Polynomial::is_homogeneous(std::uint64_t d) const noexcept {
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return t.first.total_degree() == d; });
}

std::size_t Polynomial::max_coefficient_size() const noexcept {
    std::size_t L = 0;
    for (const auto& [m, c] : terms_) L = std::max(L, coefficient_size(c));
    return L;
}

Integer Polynomial::coefficient(const Monomial& m) const {
    if (m.size() != nvars_) throw std::invalid_argument("monomial length mismatch");
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
}

Integer Polynomial::constant_term() const { return coefficient(Monomial(nvars_)); }

void Polynomial::add_term(const Monomial& m, const Integer& c) {
    if (m.size() != nvars_) throw std::invalid_argument("monomial length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::require_same_arity(const Polynomial& o) const {
    if (o.nvars_ != nvars_)
        throw std::invalid_argument("polynomial variable-count mismatch: " +
                                    std::to_string(nvars_) + " vs " + std::to_string(o.nvars_));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_arity(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_same_arity(b);
    Polynomial r(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Integer& c) {
    if (c == 0) {
        terms_.clear();
    } else {
        for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
}

Polynomial operator-(Polynomial a) {
    for (auto& [m, c] : a.terms_) c = -c;
    return a;
}

Polynomial Polynomial::pow(std::uint64_t e) const {
    Polynomial result = constant(nvars_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars_)
        throw std::invalid_argument("evaluation point has " + std::to_string(point.size()) +
                                    " coordinates, polynomial has " + std::to_string(nvars_) +
                                    " variables");
    // Powers are cached per variable up to the largest exponent in use.
    std::vector<std::vector<Rational>> powers(nvars_);
    for (const auto& [m, c] : terms_)
        for (std::size_t v = 0; v < nvars_; ++v) {
            auto& pw = powers[v];
            if (pw.empty()) pw.emplace_back(1);
            while (pw.size() <= m[v]) pw.push_back(pw.back() * point[v]);
        }
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t v = 0; v < nvars_; ++v)
            if (m[v]) t *= powers[v][m[v]];
        sum += t;
    }
    return sum;
}

bool operator<(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) return a.nvars_ < b.nvars_;
    return std::lexicographical_compare(
        a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
        [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first > y.first;
            return x.second < y.second;
        });
}

Polynomial poly_arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
    switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    }
    throw std::invalid_argument("unknown arithmetic operation");
}

std::vector<Polynomial> homogeneous_components(const Polynomial& p, std::uint64_t dmax) {
    std::vector<Polynomial> out(dmax + 1, Polynomial(p.nvars()));
    for (const auto& [m, c] : p.terms()) {
        const auto d = m.total_degree();
        if (d <= dmax) out[d].add_term(m, c);
    }
    return out;
}

Polynomial degree_reduce(const Polynomial& p, std::size_t pbound) {
    if (pbound == 0 || pbound >= 63) throw std::invalid_argument("pbound must be in [1, 62]");
    const std::uint64_t exp_limit = std::uint64_t{1} << pbound;
    if (p.degree() >= static_cast<std::int64_t>(exp_limit))
        throw std::invalid_argument("degree_reduce: degree " + std::to_string(p.degree()) +
                                    " not below 2^" + std::to_string(pbound));
    const DegreeReducedLayout layout{p.nvars(), pbound};
    Polynomial out(layout.nvars());
    for (const auto& [m, c] : p.terms()) {
        if (bit_length(c) > exp_limit)
            throw std::invalid_argument("degree_reduce: coefficient " + c.get_str() +
                                        " not below 2^(2^" + std::to_string(pbound) + ")");
        Monomial zpart(layout.nvars());
        for (std::size_t v = 0; v < p.nvars(); ++v)
            for (std::size_t j = 0; j < pbound; ++j)
                if ((m[v] >> j) & 1u) zpart[layout.z(v, j)] = 1;
        const Integer mag = abs(c);
        const int sign = sgn(c);
        // Bit i-1 of |c| carries 2^(i-1) = prod over bits of (i-1) of w_j.
        for (std::size_t bit = 0; bit < bit_length(mag); ++bit) {
            if (!mpz_tstbit(mag.get_mpz_t(), bit)) continue;
            Monomial mono = zpart;
            for (std::size_t j = 0; j < pbound; ++j)
                if ((bit >> j) & 1u) mono[layout.w(j)] = 1;
            out.add_term(mono, sign);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text form

std::string to_string(const Monomial& m) {
    std::string out;
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (!m[v]) continue;
        if (!out.empty()) out += '*';
        out += 'x' + std::to_string(v + 1);
        if (m[v] > 1) out += '^' + std::to_string(m[v]);
    }
    return out.empty() ? "1" : out;
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool neg = c < 0;
        const Integer mag = abs(c);
        if (first) {
            if (neg) os << '-';
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        if (m.is_one()) {
            os << mag.get_str();
        } else {
            if (mag != 1) os << mag.get_str() << '*';
            os << to_string(m);
        }
    }
    return os.str();
}

namespace {

struct RawTerm {
    Integer coeff;
    std::vector<std::pair<std::size_t, std::uint32_t>> factors; // 0-based var, exponent
};

class PolyParser {
public:
    explicit PolyParser(std::string s) : s_(std::move(s)) {}

    std::vector<RawTerm> parse() {
        std::vector<RawTerm> terms;
        if (s_.empty()) fail("empty polynomial");
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            RawTerm t = term();
            t.coeff *= sign;
            terms.push_back(std::move(t));
        }
        return terms;
    }

    std::size_t max_var() const { return max_var_; }

private:
    RawTerm term() {
        RawTerm t{1, {}};
        factor(t);
        while (pos_ < s_.size() && s_[pos_] == '*') {
            ++pos_;
            factor(t);
        }
        return t;
    }

    void factor(RawTerm& t) {
        if (pos_ >= s_.size()) fail("unexpected end of polynomial");
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            t.coeff *= number();
            return;
        }
        if (s_[pos_] != 'x' && s_[pos_] != 'X') fail(std::string("unexpected '") + s_[pos_] + "'");
        ++pos_;
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("variable needs an index, e.g. x1");
        const Integer idx = number();
        if (idx < 1 || idx > 1000000) fail("variable index out of range");
        std::uint32_t e = 1;
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("exponent expected after '^'");
            const Integer ev = number();
            if (ev > 1000000000) fail("exponent too large");
            e = static_cast<std::uint32_t>(ev.get_ui());
        }
        const std::size_t var = idx.get_ui() - 1;
        max_var_ = std::max(max_var_, var + 1);
        t.factors.emplace_back(var, e);
    }

    Integer number() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return Integer(s_.substr(start, pos_ - start), 10);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("polynomial: " + what + " at offset " + std::to_string(pos_) + " in '" +
                         s_ + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
    std::size_t max_var_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
    PolyParser parser(strip(text));
    auto raw = parser.parse();
    if (nvars == 0) nvars = std::max<std::size_t>(1, parser.max_var());
    if (parser.max_var() > nvars)
        throw ParseError("polynomial uses x" + std::to_string(parser.max_var()) + " but only " +
                         std::to_string(nvars) + " variables are declared");
    Polynomial p(nvars);
    for (auto& t : raw) {
        Monomial m(nvars);
        for (auto [v, e] : t.factors) m[v] += e;
        p.add_term(m, t.coeff);
    }
    return p;
}

} // namespace vps
