#pragma once

// Seeded random instances shared by the unit tests and the acceptance run.

#include <random>
#include <vector>

#include "vps/bss.hpp"
#include "vps/boolean.hpp"
#include "vps/circuit.hpp"
#include "vps/exact.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }
/// True with probability percent/100.
inline bool coin(Rng& rng, long percent = 50) { return uniform(rng, 0, 99) < percent; }

/// Mostly small integers and halves, so that tests hit zero regularly.
inline vps::Rational rational(Rng& rng) {
    const long kind = uniform(rng, 0, 3);
    vps::Rational r;
    if (kind <= 1) r = vps::Rational(uniform(rng, -3, 3));
    else if (kind == 2) r = vps::Rational(uniform(rng, -6, 6), 2);
    else r = vps::Rational(uniform(rng, -30, 30), uniform(rng, 1, 9));
    r.canonicalize();
    return r;
}

inline std::vector<vps::Rational> point(Rng& rng, std::size_t n) {
    std::vector<vps::Rational> x;
    for (std::size_t i = 0; i < n; ++i) x.push_back(rational(rng));
    return x;
}

/// Arithmetic circuit with at most `size` gates in total.
inline vps::ArithmeticCircuit arithmetic_circuit(Rng& rng, std::size_t nvars, std::size_t size) {
    vps::CircuitBuilder b(nvars);
    for (std::size_t v = 0; v < nvars; ++v) b.shared_input(v);
    b.one();
    while (b.size() < size) {
        const auto a = static_cast<vps::GateId>(uniform(rng, 0, static_cast<long>(b.size()) - 1));
        const auto c = static_cast<vps::GateId>(uniform(rng, 0, static_cast<long>(b.size()) - 1));
        switch (uniform(rng, 0, 2)) {
        case 0: b.add(a, c); break;
        case 1: b.sub(a, c); break;
        default: b.mul(a, c); break;
        }
    }
    const auto out = static_cast<vps::GateId>(b.size() - 1);
    return std::move(b).finish_arithmetic(out);
}

/// Boolean circuit: the inputs followed by `logic` random not/and/or gates.
inline vps::BooleanCircuit boolean_circuit(Rng& rng, std::size_t ninputs, std::size_t logic) {
    std::vector<vps::BoolGate> gates;
    for (std::size_t v = 0; v < ninputs; ++v) gates.push_back({vps::BoolKind::input, 0, 0, v});
    for (std::size_t k = 0; k < logic; ++k) {
        const long top = static_cast<long>(gates.size()) - 1;
        vps::BoolGate g;
        g.kind = static_cast<vps::BoolKind>(uniform(rng, 1, 3));
        g.lhs = static_cast<vps::GateId>(uniform(rng, 0, top));
        g.rhs = static_cast<vps::GateId>(uniform(rng, 0, top));
        gates.push_back(g);
    }
    const auto out = static_cast<vps::GateId>(gates.size() - 1);
    return vps::BooleanCircuit(ninputs, std::move(gates), out);
}

struct BssShape {
    std::size_t nvars = 1;
    std::size_t max_depth = 8;
    std::size_t max_tests = 3;
    std::size_t min_gates = 3;
    std::size_t max_gates = 12;
    long mul_percent = 25;
};

/// Constant-free algebraic circuit: every gate at level <= max_depth, at
/// most max_tests test gates, the last of which is the output.
inline vps::AlgebraicCircuit bss_circuit(Rng& rng, const BssShape& s = {}) {
    vps::CircuitBuilder b(s.nvars);
    std::vector<std::size_t> level;
    for (std::size_t v = 0; v < s.nvars; ++v) {
        b.shared_input(v);
        level.push_back(0);
    }
    b.one();
    level.push_back(0);

    const long inner = uniform(rng, static_cast<long>(s.min_gates), static_cast<long>(s.max_gates));
    const std::size_t tests = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(s.max_tests)));
    std::size_t placed = 0;
    auto pick = [&]() {
        // Operands below the depth limit, biased towards recent gates.
        std::vector<vps::GateId> ok;
        for (vps::GateId i = 0; i < level.size(); ++i)
            if (level[i] < s.max_depth) ok.push_back(i);
        const long n = static_cast<long>(ok.size());
        const long lo = coin(rng, 60) ? std::max(0L, n - 4) : 0;
        return ok[static_cast<std::size_t>(uniform(rng, lo, n - 1))];
    };
    for (long k = 0; k < inner; ++k) {
        if (placed + 1 < tests && coin(rng, 25)) {
            const auto a = pick();
            b.test(a);
            level.push_back(level[a] + 1);
            ++placed;
            continue;
        }
        const auto a = pick(), c = pick();
        const long r = uniform(rng, 0, 199);
        if (r < 2 * s.mul_percent) b.mul(a, c);
        else if (r < s.mul_percent + 100) b.add(a, c);
        else b.sub(a, c);
        level.push_back(std::max(level[a], level[c]) + 1);
    }
    // Output test on the newest gate that still fits under the depth limit.
    vps::GateId src = static_cast<vps::GateId>(level.size() - 1);
    while (level[src] >= s.max_depth) --src;
    const auto out = b.test(src);
    return std::move(b).finish_algebraic(out);
}

/// Univariate polynomial with degree <= max_deg and |coefficients| <= bound;
/// half of them are products of small linear factors, so that roots are
/// shared across a system.
inline vps::Polynomial univariate(Rng& rng, long max_deg, long bound) {
    using vps::Polynomial;
    if (coin(rng)) {
        Polynomial p = Polynomial::constant(1, uniform(rng, 1, 3) * (coin(rng) ? 1 : -1));
        const long factors = uniform(rng, 0, max_deg);
        for (long k = 0; k < factors; ++k) {
            Polynomial f = Polynomial::variable(1, 0) * Polynomial::constant(1, uniform(rng, 1, 2)) -
                           Polynomial::constant(1, uniform(rng, -2, 2));
            Polynomial next = p * f;
            bool fits = true;
            for (const auto& [m, c] : next.terms())
                if (abs(c) > bound) fits = false;
            if (!fits) break;
            p = std::move(next);
        }
        return p;
    }
    Polynomial p(1);
    const long d = uniform(rng, 0, max_deg);
    for (long k = 0; k <= d; ++k) p.add_term(vps::Monomial{static_cast<std::uint32_t>(k)}, uniform(rng, -bound, bound));
    return p;
}

} // namespace gen
