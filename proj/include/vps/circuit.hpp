#pragma once

// Gate-level DAG representation shared by arithmetic circuits (no test gates,
// only the constant 1) and algebraic circuits (test gates, output is a test).

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vps/exact.hpp"

namespace vps {

using GateId = std::uint32_t;

enum class GateKind : std::uint8_t { input, constant, add, sub, mul, test };

struct Gate {
    GateKind kind = GateKind::constant;
    GateId lhs = 0;       // add/sub/mul/test
    GateId rhs = 0;       // add/sub/mul
    std::size_t var = 0;  // input, 0-based
    Rational value = 1;   // constant

    bool is_leaf() const noexcept { return kind == GateKind::input || kind == GateKind::constant; }
    bool is_binary() const noexcept {
        return kind == GateKind::add || kind == GateKind::sub || kind == GateKind::mul;
    }
};

class ArithmeticCircuit;
class AlgebraicCircuit;

/// Appends gates in topological order. Every method returns the id of the
/// gate it created (or reused, for the cached constants).
class CircuitBuilder {
public:
    explicit CircuitBuilder(std::size_t nvars) : nvars_(nvars) {}

    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t size() const noexcept { return gates_.size(); }
    const std::vector<Gate>& gates() const noexcept { return gates_; }

    GateId input(std::size_t var);
    /// Shared input gate per variable.
    GateId shared_input(std::size_t var);
    /// A fresh `const 1` gate.
    GateId const_one();
    /// Shared `const 1` gate.
    GateId one();
    /// Shared `1 - 1`.
    GateId zero();
    /// Raw constant leaf; only algebraic circuits accept values other than 1.
    GateId constant(const Rational& value);
    /// k built from const 1 by binary doubling (1+1, then add/double steps).
    GateId integer(const Integer& k);
    GateId add(GateId a, GateId b);
    GateId sub(GateId a, GateId b);
    GateId mul(GateId a, GateId b);
    GateId test(GateId a);
    GateId push(const Gate& g);

    ArithmeticCircuit finish_arithmetic(GateId output) &&;
    AlgebraicCircuit finish_algebraic(GateId output) &&;

private:
    GateId binary(GateKind k, GateId a, GateId b);
    void check_ref(GateId id) const;

    std::size_t nvars_;
    std::vector<Gate> gates_;
    std::optional<GateId> one_, zero_;
    std::vector<std::optional<GateId>> inputs_;
};

/// Shared storage and validation.
class CircuitDag {
public:
    std::size_t nvars() const noexcept { return nvars_; }
    std::size_t size() const noexcept { return gates_.size(); }
    std::span<const Gate> gates() const noexcept { return gates_; }
    const Gate& gate(GateId id) const { return gates_.at(id); }
    GateId output() const noexcept { return output_; }
    bool has_tests() const noexcept;
    /// Constant leaves all equal to 1.
    bool constant_free() const noexcept;

protected:
    CircuitDag(std::size_t nvars, std::vector<Gate> gates, GateId output);

    std::size_t nvars_;
    std::vector<Gate> gates_;
    GateId output_;
};

/// Test-free circuit computing a polynomial; the only constant is 1.
class ArithmeticCircuit : public CircuitDag {
public:
    ArithmeticCircuit(std::size_t nvars, std::vector<Gate> gates, GateId output);
};

/// Circuit with `<= 0?` test gates; the output gate is a test.
class AlgebraicCircuit : public CircuitDag {
public:
    AlgebraicCircuit(std::size_t nvars, std::vector<Gate> gates, GateId output);
};

/// How `const k` lines are loaded.
enum class ConstantMode {
    expand,  // integer k becomes a const1/add chain (constant-free discipline)
    keep,    // raw constant leaf (algebraic circuits only; rationals allowed)
};

struct ParsedCircuit {
    std::size_t nvars = 0;
    std::vector<Gate> gates;
    GateId output = 0;
    bool has_tests = false;
};

/// Reads the line-based circuit format (`ninputs K`, `gN = ...`, `output gN`).
ParsedCircuit parse_circuit_text(std::istream& in, ConstantMode mode = ConstantMode::expand);
ArithmeticCircuit read_arithmetic_circuit(std::istream& in);
AlgebraicCircuit read_algebraic_circuit(std::istream& in, ConstantMode mode = ConstantMode::expand);
ArithmeticCircuit load_arithmetic_circuit(const std::string& path);
AlgebraicCircuit load_algebraic_circuit(const std::string& path,
                                        ConstantMode mode = ConstantMode::expand);

std::string write_circuit(const CircuitDag& c);

// ---------------------------------------------------------------------------
// Arithmetic-circuit operations

/// Exact value at a rational point.
Rational eval_circuit(const ArithmeticCircuit& c, std::span<const Rational> point);
/// Value with every gate reduced modulo `modulus` (>= 2); result in [0, modulus).
Integer eval_circuit(const ArithmeticCircuit& c, std::span<const Integer> point,
                     const Integer& modulus);

/// Leaves count 1, add/sub take the max, mul the sum. Saturates at UINT64_MAX.
std::uint64_t formal_degree(const CircuitDag& c);
/// Formal degree of every gate.
std::vector<std::uint64_t> formal_degrees(const CircuitDag& c);

inline constexpr std::size_t kDefaultExpandCap = 5000;

/// The polynomial computed by c. Throws CapExceeded when an intermediate
/// gate has more than `term_cap` terms.
Polynomial expand(const ArithmeticCircuit& c, std::size_t term_cap = kDefaultExpandCap);

/// Coefficient of `alpha`, computed gate by gate over the divisors of alpha
/// without expanding the circuit.
Integer extract_coefficient(const ArithmeticCircuit& c, const Monomial& alpha);

} // namespace vps
