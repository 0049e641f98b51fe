#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "vps/circuit.hpp"

namespace vps {

enum class BoolKind : std::uint8_t { input, op_not, op_and, op_or };

struct BoolGate {
    BoolKind kind = BoolKind::input;
    GateId lhs = 0;
    GateId rhs = 0;
    std::size_t var = 0;
};

/// Boolean circuit over {not, and, or}, gates in topological order.
class BooleanCircuit {
public:
    BooleanCircuit(std::size_t ninputs, std::vector<BoolGate> gates, GateId output);

    std::size_t ninputs() const noexcept { return ninputs_; }
    std::size_t size() const noexcept { return gates_.size(); }
    const std::vector<BoolGate>& gates() const noexcept { return gates_; }
    GateId output() const noexcept { return output_; }

    bool evaluate(const std::vector<bool>& inputs) const;

private:
    std::size_t ninputs_;
    std::vector<BoolGate> gates_;
    GateId output_;
};

/// Same line format as arithmetic circuits with kinds input/not/and/or.
BooleanCircuit read_boolean_circuit(std::istream& in);
BooleanCircuit load_boolean_circuit(const std::string& path);

/// not u -> 1 - u, u and v -> uv, u or v -> u + v - uv, sharing one const 1.
/// At most 3|C| gates.
ArithmeticCircuit simulate_boolean(const BooleanCircuit& bc);

} // namespace vps
