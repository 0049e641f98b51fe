#include "vps/transforms.hpp"

#include <map>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

namespace {

template <typename Op>
GateId reduce_balanced(std::span<const GateId> items, Op&& op) {
    if (items.size() == 1) return items.front();
    const std::size_t half = items.size() / 2;
    const GateId l = reduce_balanced(items.subspan(0, half), op);
    const GateId r = reduce_balanced(items.subspan(half), op);
    return op(l, r);
}

void monomials_rec(std::size_t var, std::uint64_t budget, Monomial& cur, std::vector<Monomial>& out) {
    if (var == cur.size()) {
        out.push_back(cur);
        return;
    }
    for (std::uint64_t e = budget + 1; e-- > 0;) {
        cur[var] = static_cast<std::uint32_t>(e);
        monomials_rec(var + 1, budget - e, cur, out);
    }
    cur[var] = 0;
}

} // namespace

std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint64_t max_degree) {
    std::vector<Monomial> out;
    Monomial cur(nvars);
    monomials_rec(0, max_degree, cur, out);
    return out;
}

CoefficientFunction coefficient_function_of(const Polynomial& p) {
    CoefficientFunction f;
    f.degree_bound = p.is_zero() ? 0 : static_cast<std::uint64_t>(p.degree());
    for (const auto& [m, c] : p.terms()) f.coeff_bit_bound = std::max(f.coeff_bit_bound, bit_length(c));
    f.bit = [p](const Monomial& alpha, std::size_t i) {
        const Integer c = p.coefficient(alpha);
        if (i == 0) return c < 0;
        const Integer mag = abs(c);
        return mpz_tstbit(mag.get_mpz_t(), i - 1) != 0;
    };
    return f;
}

ArithmeticCircuit build_from_coefficients(const CoefficientFunction& f, std::size_t nvars,
                                          std::size_t monomial_cap) {
    // Count monomials with degree <= bound before enumerating them.
    {
        Integer count = 1;  // C(D + n, n)
        for (std::size_t k = 1; k <= nvars; ++k) {
            count *= Integer(static_cast<unsigned long>(f.degree_bound + k));
            count /= static_cast<unsigned long>(k);
        }
        if (count > static_cast<unsigned long>(monomial_cap))
            throw CapExceeded("monomial cap", "--expand-cap", monomial_cap,
                              "degree bound " + std::to_string(f.degree_bound) + " in " +
                                  std::to_string(nvars) + " variables gives " + count.get_str() +
                                  " monomials");
    }
    CircuitBuilder b(nvars);
    // x_v^(2^j) and 2^(2^j), built on demand by squaring.
    std::vector<std::vector<GateId>> var_sq(nvars);
    std::vector<GateId> two_sq;
    auto var_square = [&](std::size_t v, std::size_t j) {
        auto& sq = var_sq[v];
        if (sq.empty()) sq.push_back(b.shared_input(v));
        while (sq.size() <= j) sq.push_back(b.mul(sq.back(), sq.back()));
        return sq[j];
    };
    auto two_square = [&](std::size_t j) {
        if (two_sq.empty()) two_sq.push_back(b.add(b.one(), b.one()));
        while (two_sq.size() <= j) two_sq.push_back(b.mul(two_sq.back(), two_sq.back()));
        return two_sq[j];
    };
    auto product = [&](std::span<const GateId> fs) {
        return fs.empty() ? b.one() : reduce_balanced(fs, [&](GateId l, GateId r) { return b.mul(l, r); });
    };

    struct Signed {
        GateId gate;
        bool negative;
    };
    std::vector<Signed> terms;
    for (const Monomial& alpha : monomials_up_to(nvars, f.degree_bound)) {
        std::vector<GateId> powers_of_two;
        for (std::size_t i = 1; i <= f.coeff_bit_bound; ++i) {
            if (!f.bit(alpha, i)) continue;
            std::vector<GateId> fs;
            const std::size_t e = i - 1;
            for (std::size_t j = 0; (e >> j) != 0; ++j)
                if ((e >> j) & 1u) fs.push_back(two_square(j));
            powers_of_two.push_back(product(fs));
        }
        if (powers_of_two.empty()) continue;
        const GateId magnitude =
            reduce_balanced(std::span<const GateId>(powers_of_two), [&](GateId l, GateId r) { return b.add(l, r); });
        std::vector<GateId> fs;
        for (std::size_t v = 0; v < nvars; ++v)
            for (std::size_t j = 0; (alpha[v] >> j) != 0; ++j)
                if ((alpha[v] >> j) & 1u) fs.push_back(var_square(v, j));
        GateId term = magnitude;
        if (!fs.empty()) {
            const GateId mono = product(fs);
            term = (powers_of_two.size() == 1 && magnitude == b.one()) ? mono : b.mul(magnitude, mono);
        }
        terms.push_back({term, f.bit(alpha, 0)});
    }
    if (terms.empty()) return std::move(b).finish_arithmetic(b.zero());

    // Signed balanced sum: subtraction absorbs negative terms where possible.
    auto combine = [&](auto&& self, std::span<const Signed> ts) -> Signed {
        if (ts.size() == 1) return ts.front();
        const std::size_t half = ts.size() / 2;
        const Signed l = self(self, ts.subspan(0, half));
        const Signed r = self(self, ts.subspan(half));
        if (l.negative == r.negative) return {b.add(l.gate, r.gate), l.negative};
        if (!l.negative) return {b.sub(l.gate, r.gate), false};
        return {b.sub(r.gate, l.gate), false};
    };
    const Signed total = combine(combine, std::span<const Signed>(terms));
    const GateId out = total.negative ? b.sub(b.zero(), total.gate) : total.gate;
    return std::move(b).finish_arithmetic(out);
}

namespace {

/// Copies g into b with x-inputs shared and y-inputs replaced by constants.
GateId instantiate(CircuitBuilder& b, const ArithmeticCircuit& g, std::size_t nx,
                   const std::vector<bool>& eps) {
    std::vector<GateId> map(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Gate& gate = g.gates()[i];
        switch (gate.kind) {
        case GateKind::input:
            map[i] = gate.var < nx ? b.shared_input(gate.var) : (eps[gate.var - nx] ? b.one() : b.zero());
            break;
        case GateKind::constant: map[i] = b.one(); break;
        case GateKind::add: map[i] = b.add(map[gate.lhs], map[gate.rhs]); break;
        case GateKind::sub: map[i] = b.sub(map[gate.lhs], map[gate.rhs]); break;
        case GateKind::mul: map[i] = b.mul(map[gate.lhs], map[gate.rhs]); break;
        case GateKind::test: throw std::logic_error("test gate in arithmetic circuit");
        }
    }
    return map[g.output()];
}

} // namespace

ArithmeticCircuit big_combine(const ArithmeticCircuit& g, std::size_t p, CombineMode mode,
                              const BooleanCircuit* membership, std::size_t instance_cap) {
    if (p > g.nvars()) throw std::invalid_argument("big_combine: p exceeds the variable count");
    if (p >= 63 || (std::size_t{1} << p) > instance_cap)
        throw CapExceeded("instance cap", "--expand-cap", instance_cap,
                          "2^" + std::to_string(p) + " instantiations");
    if (membership && membership->ninputs() != p)
        throw std::invalid_argument("membership circuit must have p inputs");
    const std::size_t nx = g.nvars() - p;
    std::optional<ArithmeticCircuit> chi;
    if (membership) chi = simulate_boolean(*membership);

    CircuitBuilder b(nx);
    std::vector<GateId> parts;
    const std::size_t count = std::size_t{1} << p;
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<bool> eps(p);
        for (std::size_t j = 0; j < p; ++j) eps[j] = (k >> (p - 1 - j)) & 1u;  // first coordinate most significant
        GateId f = instantiate(b, g, nx, eps);
        if (chi) {
            const GateId c = instantiate(b, *chi, 0, eps);
            const GateId cf = b.mul(c, f);
            f = mode == CombineMode::sum ? cf : b.add(cf, b.sub(b.one(), c));
        }
        parts.push_back(f);
    }
    const GateId out = reduce_balanced(std::span<const GateId>(parts), [&](GateId l, GateId r) {
        return mode == CombineMode::sum ? b.add(l, r) : b.mul(l, r);
    });
    return std::move(b).finish_arithmetic(out);
}

ArithmeticCircuit homogeneous_split_mod2(const ArithmeticCircuit& c, std::uint64_t dmax) {
    if (dmax < 1) throw std::invalid_argument("homogeneous_split_mod2 needs dmax >= 1");
    if (dmax > 4096) throw std::invalid_argument("homogeneous_split_mod2: dmax too large");
    struct Split {
        bool parity = false;                      // degree-0 part mod 2
        std::vector<std::optional<GateId>> comp;  // index i: degree-i part, i in 1..dmax
    };
    CircuitBuilder b(c.nvars());
    std::vector<Split> split(c.size());
    auto sum_of = [&](std::vector<GateId>& fs) -> std::optional<GateId> {
        if (fs.empty()) return std::nullopt;
        GateId acc = fs.front();
        for (std::size_t k = 1; k < fs.size(); ++k) acc = b.add(acc, fs[k]);
        return acc;
    };
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gates()[i];
        Split& s = split[i];
        s.comp.assign(dmax + 1, std::nullopt);
        switch (g.kind) {
        case GateKind::input: s.comp[1] = b.shared_input(g.var); break;
        case GateKind::constant: s.parity = true; break;
        case GateKind::add:
        case GateKind::sub: {
            const Split& l = split[g.lhs];
            const Split& r = split[g.rhs];
            s.parity = l.parity != r.parity;
            for (std::uint64_t d = 1; d <= dmax; ++d) {
                if (l.comp[d] && r.comp[d])
                    s.comp[d] = g.kind == GateKind::add ? b.add(*l.comp[d], *r.comp[d])
                                                        : b.sub(*l.comp[d], *r.comp[d]);
                else if (l.comp[d])
                    s.comp[d] = l.comp[d];
                else
                    s.comp[d] = r.comp[d];  // -r = r (mod 2)
            }
            break;
        }
        case GateKind::mul: {
            const Split& l = split[g.lhs];
            const Split& r = split[g.rhs];
            s.parity = l.parity && r.parity;
            for (std::uint64_t d = 1; d <= dmax; ++d) {
                std::vector<GateId> fs;
                if (l.parity && r.comp[d]) fs.push_back(*r.comp[d]);
                for (std::uint64_t j = 1; j < d; ++j)
                    if (l.comp[j] && r.comp[d - j]) fs.push_back(b.mul(*l.comp[j], *r.comp[d - j]));
                if (r.parity && l.comp[d]) fs.push_back(*l.comp[d]);
                s.comp[d] = sum_of(fs);
            }
            break;
        }
        case GateKind::test: throw std::logic_error("test gate in arithmetic circuit");
        }
    }
    const Split& top = split[c.output()];
    std::vector<GateId> fs;
    for (std::uint64_t d = 1; d <= dmax; ++d)
        if (top.comp[d]) fs.push_back(*top.comp[d]);
    if (top.parity) fs.push_back(b.one());
    const auto out = sum_of(fs);
    return std::move(b).finish_arithmetic(out ? *out : b.zero());
}

} // namespace vps
