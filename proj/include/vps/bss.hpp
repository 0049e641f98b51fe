#pragma once

// Algebraic circuits with `<= 0?` test gates: exact evaluation, level
// slicing, and the polynomials that can reach a test in some execution.

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "vps/circuit.hpp"

namespace vps {

/// Output of the final test gate; a test yields 1 iff its entry is <= 0.
/// Throws std::invalid_argument on an arity mismatch.
bool eval_bss(const AlgebraicCircuit& c, std::span<const Rational> x);

struct TestedAt {
    GateId gate;
    Polynomial entry;  // with earlier test outputs replaced by their values at x
    Sign sign;
};

struct BssTrace {
    bool decision = false;
    std::vector<TestedAt> tests;  // gate-id order
};

/// eval_bss that also reports the polynomial fed to every test gate.
/// Requires integer constants.
BssTrace eval_bss_traced(const AlgebraicCircuit& c, std::span<const Rational> x);

/// Level of a gate: longest path from a leaf. Entry L lists the gates at level L.
std::vector<std::vector<GateId>> slice_levels(const CircuitDag& c);
std::vector<std::size_t> gate_levels(const CircuitDag& c);

/// Decides the output of a test gate from its entry polynomial.
using TestRule = std::function<bool(GateId test, const Polynomial& entry)>;

/// Polynomial of every gate whose level is <= max_level (others empty),
/// visiting levels in order. Throws std::invalid_argument on a non-integer constant.
std::vector<std::optional<Polynomial>> eval_symbolic(const AlgebraicCircuit& c, const TestRule& rule,
                                                     std::size_t max_level = std::numeric_limits<std::size_t>::max());

constexpr std::size_t kDefaultMaxTests = 12;

struct EnumerationOptions {
    bool prune = false;
    std::size_t max_tests = kDefaultMaxTests;
};

struct TestedPolynomialList {
    std::vector<Polynomial> polys;
    std::size_t scenarios = 0;  // scenarios evaluated
    std::size_t pruned = 0;     // scenarios discarded as unsatisfiable

    std::size_t size() const noexcept { return polys.size(); }
    /// 0-based position, or nullopt.
    std::optional<std::size_t> index_of(const Polynomial& p) const;
};

/// Ordered by (level, scenario in counting order, gate id), first occurrence
/// kept. Pruning applies to univariate circuits. Throws CapExceeded when the
/// circuit has more than max_tests test gates.
TestedPolynomialList enumerate_tested_polynomials(const AlgebraicCircuit& c, const EnumerationOptions& opt = {});

struct ConstantBinding {
    std::size_t var;  // 0-based input index
    Rational value;
};

struct ConstantElimination {
    AlgebraicCircuit circuit;
    std::vector<ConstantBinding> bindings;
};

/// Every distinct constant other than 1 becomes a fresh input appended after
/// the original ones.
ConstantElimination constants_to_variables(const AlgebraicCircuit& c);

/// Replaces the bound inputs by constant leaves; remaining inputs keep their order.
AlgebraicCircuit bind_variables(const AlgebraicCircuit& c, std::span<const ConstantBinding> bindings);

} // namespace vps
