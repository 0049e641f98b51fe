#include "vps/bss.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "vps/errors.hpp"
#include "vps/sign_engine.hpp"

namespace vps {

namespace {

void check_arity(const CircuitDag& c, std::size_t n) {
    if (n != c.nvars())
        throw std::invalid_argument("circuit has " + std::to_string(c.nvars()) + " inputs, got " +
                                    std::to_string(n) + " values");
}

Polynomial constant_polynomial(std::size_t nvars, const Rational& v, GateId id) {
    if (v.get_den() != 1)
        throw std::invalid_argument("gate g" + std::to_string(id) + " holds the non-integer constant " + to_string(v) +
                                    "; replace constants by variables first");
    return Polynomial::constant(nvars, v.get_num());
}

} // namespace

bool eval_bss(const AlgebraicCircuit& c, std::span<const Rational> x) {
    check_arity(c, x.size());
    std::vector<Rational> v(c.size());
    for (GateId i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(i);
        switch (g.kind) {
        case GateKind::input: v[i] = x[g.var]; break;
        case GateKind::constant: v[i] = g.value; break;
        case GateKind::add: v[i] = v[g.lhs] + v[g.rhs]; break;
        case GateKind::sub: v[i] = v[g.lhs] - v[g.rhs]; break;
        case GateKind::mul: v[i] = v[g.lhs] * v[g.rhs]; break;
        case GateKind::test: v[i] = sgn(v[g.lhs]) <= 0 ? 1 : 0; break;
        }
    }
    return v[c.output()] == 1;
}

BssTrace eval_bss_traced(const AlgebraicCircuit& c, std::span<const Rational> x) {
    check_arity(c, x.size());
    const std::size_t n = c.nvars();
    BssTrace out;
    std::vector<Rational> v(c.size());
    std::vector<Polynomial> p(c.size());
    for (GateId i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(i);
        switch (g.kind) {
        case GateKind::input:
            v[i] = x[g.var];
            p[i] = Polynomial::variable(n, g.var);
            break;
        case GateKind::constant:
            v[i] = g.value;
            p[i] = constant_polynomial(n, g.value, i);
            break;
        case GateKind::add:
            v[i] = v[g.lhs] + v[g.rhs];
            p[i] = p[g.lhs] + p[g.rhs];
            break;
        case GateKind::sub:
            v[i] = v[g.lhs] - v[g.rhs];
            p[i] = p[g.lhs] - p[g.rhs];
            break;
        case GateKind::mul:
            v[i] = v[g.lhs] * v[g.rhs];
            p[i] = p[g.lhs] * p[g.rhs];
            break;
        case GateKind::test: {
            const Sign s = sign_of(v[g.lhs]);
            out.tests.push_back({i, p[g.lhs], s});
            v[i] = s != Sign::positive ? 1 : 0;
            p[i] = Polynomial::constant(n, s != Sign::positive ? 1 : 0);
            break;
        }
        }
    }
    out.decision = v[c.output()] == 1;
    return out;
}

std::vector<std::size_t> gate_levels(const CircuitDag& c) {
    std::vector<std::size_t> level(c.size(), 0);
    for (GateId i = 0; i < c.size(); ++i) {
        const Gate& g = c.gate(i);
        if (g.is_binary()) level[i] = 1 + std::max(level[g.lhs], level[g.rhs]);
        else if (g.kind == GateKind::test) level[i] = 1 + level[g.lhs];
    }
    return level;
}

std::vector<std::vector<GateId>> slice_levels(const CircuitDag& c) {
    const auto level = gate_levels(c);
    std::vector<std::vector<GateId>> out(*std::max_element(level.begin(), level.end()) + 1);
    for (GateId i = 0; i < c.size(); ++i) out[level[i]].push_back(i);
    return out;
}

std::vector<std::optional<Polynomial>> eval_symbolic(const AlgebraicCircuit& c, const TestRule& rule,
                                                     std::size_t max_level) {
    const std::size_t n = c.nvars();
    const auto levels = slice_levels(c);
    std::vector<std::optional<Polynomial>> p(c.size());
    for (std::size_t L = 0; L < levels.size() && L <= max_level; ++L) {
        for (GateId i : levels[L]) {
            const Gate& g = c.gate(i);
            switch (g.kind) {
            case GateKind::input: p[i] = Polynomial::variable(n, g.var); break;
            case GateKind::constant: p[i] = constant_polynomial(n, g.value, i); break;
            case GateKind::add: p[i] = *p[g.lhs] + *p[g.rhs]; break;
            case GateKind::sub: p[i] = *p[g.lhs] - *p[g.rhs]; break;
            case GateKind::mul: p[i] = *p[g.lhs] * *p[g.rhs]; break;
            case GateKind::test: p[i] = Polynomial::constant(n, rule(i, *p[g.lhs]) ? 1 : 0); break;
            }
        }
    }
    return p;
}

std::optional<std::size_t> TestedPolynomialList::index_of(const Polynomial& p) const {
    auto it = std::find(polys.begin(), polys.end(), p);
    if (it == polys.end()) return std::nullopt;
    return static_cast<std::size_t>(it - polys.begin());
}

namespace {

/// True when some real point realizes every scenario outcome of the tests
/// whose entry polynomials are `entries` (outcome 1 iff entry <= 0).
bool scenario_satisfiable(const std::vector<Polynomial>& entries, const std::vector<bool>& outcomes) {
    if (entries.empty()) return true;
    const auto table = enumerate_sign_conditions(entries);
    for (const auto& s : table.conditions) {
        bool ok = true;
        for (std::size_t t = 0; t < s.size() && ok; ++t) ok = (s[t] != Sign::positive) == outcomes[t];
        if (ok) return true;
    }
    return false;
}

} // namespace

TestedPolynomialList enumerate_tested_polynomials(const AlgebraicCircuit& c, const EnumerationOptions& opt) {
    const auto level = gate_levels(c);
    std::vector<GateId> tests;
    for (GateId i = 0; i < c.size(); ++i)
        if (c.gate(i).kind == GateKind::test) tests.push_back(i);
    if (tests.size() > opt.max_tests)
        throw CapExceeded("test-gate cap", "--max-tests", opt.max_tests, std::to_string(tests.size()) + " test gates");
    std::stable_sort(tests.begin(), tests.end(), [&](GateId a, GateId b) { return level[a] < level[b]; });

    const bool prune = opt.prune && c.nvars() == 1;
    TestedPolynomialList out;
    std::map<Polynomial, std::size_t> seen;

    std::size_t t0 = 0;
    while (t0 < tests.size()) {
        const std::size_t L = level[tests[t0]];
        std::size_t t1 = t0;
        while (t1 < tests.size() && level[tests[t1]] == L) ++t1;
        // Tests tests[0..t0) lie below level L; tests[t0..t1) are at level L.
        std::map<GateId, std::size_t> lower_pos;
        for (std::size_t k = 0; k < t0; ++k) lower_pos[tests[k]] = k;

        const std::uint64_t count = std::uint64_t{1} << t0;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<bool> outcome(t0);
            for (std::size_t k = 0; k < t0; ++k) outcome[k] = (code >> (t0 - 1 - k)) & 1U;

            std::vector<Polynomial> lower_entries(t0);
            std::map<GateId, Polynomial> current;
            auto rule = [&](GateId g, const Polynomial& entry) {
                if (auto it = lower_pos.find(g); it != lower_pos.end()) {
                    lower_entries[it->second] = entry;
                    return static_cast<bool>(outcome[it->second]);
                }
                current.emplace(g, entry);
                return false;
            };
            eval_symbolic(c, rule, L);

            if (prune && !scenario_satisfiable(lower_entries, outcome)) {
                ++out.pruned;
                continue;
            }
            ++out.scenarios;
            for (const auto& [g, entry] : current) {
                if (seen.emplace(entry, out.polys.size()).second) out.polys.push_back(entry);
            }
        }
        t0 = t1;
    }
    return out;
}

ConstantElimination constants_to_variables(const AlgebraicCircuit& c) {
    std::vector<Gate> gates(c.gates().begin(), c.gates().end());
    std::map<Rational, std::size_t> fresh;
    std::vector<ConstantBinding> bindings;
    for (auto& g : gates) {
        if (g.kind != GateKind::constant || g.value == 1) continue;
        auto [it, inserted] = fresh.try_emplace(g.value, c.nvars() + fresh.size());
        if (inserted) bindings.push_back({it->second, g.value});
        g.kind = GateKind::input;
        g.var = it->second;
        g.value = 1;
    }
    return {AlgebraicCircuit(c.nvars() + bindings.size(), std::move(gates), c.output()), std::move(bindings)};
}

AlgebraicCircuit bind_variables(const AlgebraicCircuit& c, std::span<const ConstantBinding> bindings) {
    std::map<std::size_t, Rational> bound;
    for (const auto& b : bindings) {
        if (b.var >= c.nvars()) throw std::invalid_argument("binding for a variable the circuit does not have");
        bound[b.var] = b.value;
    }
    std::vector<std::size_t> renumber(c.nvars());
    std::size_t next = 0;
    for (std::size_t v = 0; v < c.nvars(); ++v)
        if (!bound.count(v)) renumber[v] = next++;
    std::vector<Gate> gates(c.gates().begin(), c.gates().end());
    for (auto& g : gates) {
        if (g.kind != GateKind::input) continue;
        if (auto it = bound.find(g.var); it != bound.end()) {
            g.kind = GateKind::constant;
            g.value = it->second;
            g.var = 0;
        } else {
            g.var = renumber[g.var];
        }
    }
    return AlgebraicCircuit(next, std::move(gates), c.output());
}

} // namespace vps
