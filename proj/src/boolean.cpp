#include "vps/boolean.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

BooleanCircuit::BooleanCircuit(std::size_t ninputs, std::vector<BoolGate> gates, GateId output)
    : ninputs_(ninputs), gates_(std::move(gates)), output_(output) {
    if (gates_.empty()) throw std::invalid_argument("boolean circuit has no gates");
    if (output_ >= gates_.size()) throw std::invalid_argument("output gate does not exist");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const auto& g = gates_[i];
        if (g.kind == BoolKind::input) {
            if (g.var >= ninputs_) throw std::invalid_argument("input index out of range");
            continue;
        }
        if (g.lhs >= i || ((g.kind == BoolKind::op_and || g.kind == BoolKind::op_or) && g.rhs >= i))
            throw std::invalid_argument("gate g" + std::to_string(i) + " references a later gate");
    }
}

bool BooleanCircuit::evaluate(const std::vector<bool>& inputs) const {
    if (inputs.size() != ninputs_) throw std::invalid_argument("boolean input arity mismatch");
    std::vector<char> v(gates_.size());
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const auto& g = gates_[i];
        switch (g.kind) {
        case BoolKind::input: v[i] = inputs[g.var]; break;
        case BoolKind::op_not: v[i] = !v[g.lhs]; break;
        case BoolKind::op_and: v[i] = v[g.lhs] && v[g.rhs]; break;
        case BoolKind::op_or: v[i] = v[g.lhs] || v[g.rhs]; break;
        }
    }
    return v[output_];
}

BooleanCircuit read_boolean_circuit(std::istream& in) {
    std::optional<std::size_t> ninputs;
    std::vector<BoolGate> gates;
    std::map<std::size_t, GateId> ids;
    std::optional<std::size_t> last;
    std::optional<GateId> output;

    auto number = [](const std::string& w, std::size_t line) -> std::size_t {
        if (w.empty() || w.size() > 9 ||
            !std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw ParseError("expected a number, got '" + w + "'", line);
        return std::stoul(w);
    };
    auto gate_ref = [&](const std::string& w, std::size_t line) -> GateId {
        if (w.size() < 2 || w[0] != 'g') throw ParseError("expected gN, got '" + w + "'", line);
        auto it = ids.find(number(w.substr(1), line));
        if (it == ids.end()) throw ParseError("gate " + w + " is not defined before use", line);
        return it->second;
    };

    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::istringstream is(raw);
        std::vector<std::string> w;
        for (std::string s; is >> s;) w.push_back(s);
        if (w.empty()) continue;
        if (w[0] == "ninputs") {
            if (ninputs || w.size() != 2) throw ParseError("expected a single 'ninputs K'", line);
            ninputs = number(w[1], line);
            continue;
        }
        if (!ninputs) throw ParseError("the first statement must be 'ninputs K'", line);
        if (w[0] == "output") {
            if (w.size() != 2 || output) throw ParseError("expected a single 'output gN'", line);
            output = gate_ref(w[1], line);
            continue;
        }
        if (w.size() < 3 || w[1] != "=" || w[0].size() < 2 || w[0][0] != 'g')
            throw ParseError("expected 'gN = <kind> ...'", line);
        const auto id = number(w[0].substr(1), line);
        if (last && id <= *last) throw ParseError("gate ids must be strictly increasing", line);
        last = id;
        BoolGate g;
        const auto& kind = w[2];
        auto arity = [&](std::size_t n) {
            if (w.size() != 3 + n) throw ParseError("'" + kind + "' takes " + std::to_string(n) + " operand(s)", line);
        };
        if (kind == "input") {
            arity(1);
            const auto i = number(w[3], line);
            if (i < 1 || i > *ninputs) throw ParseError("input index out of range", line);
            g.kind = BoolKind::input;
            g.var = i - 1;
        } else if (kind == "not") {
            arity(1);
            g.kind = BoolKind::op_not;
            g.lhs = gate_ref(w[3], line);
        } else if (kind == "and" || kind == "or") {
            arity(2);
            g.kind = kind == "and" ? BoolKind::op_and : BoolKind::op_or;
            g.lhs = gate_ref(w[3], line);
            g.rhs = gate_ref(w[4], line);
        } else {
            throw ParseError("unknown boolean gate kind '" + kind + "'", line);
        }
        gates.push_back(g);
        ids[id] = static_cast<GateId>(gates.size() - 1);
    }
    if (!ninputs) throw ParseError("missing 'ninputs K' line", line);
    if (!output) throw ParseError("missing 'output gN' line", line);
    return BooleanCircuit(*ninputs, std::move(gates), *output);
}

BooleanCircuit load_boolean_circuit(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_boolean_circuit(in);
}

ArithmeticCircuit simulate_boolean(const BooleanCircuit& bc) {
    CircuitBuilder b(bc.ninputs());
    std::vector<GateId> map(bc.size());
    for (std::size_t i = 0; i < bc.size(); ++i) {
        const auto& g = bc.gates()[i];
        switch (g.kind) {
        case BoolKind::input: map[i] = b.input(g.var); break;
        case BoolKind::op_not: map[i] = b.sub(b.one(), map[g.lhs]); break;
        case BoolKind::op_and: map[i] = b.mul(map[g.lhs], map[g.rhs]); break;
        case BoolKind::op_or: {
            const GateId u = map[g.lhs], v = map[g.rhs];
            map[i] = b.sub(b.add(u, v), b.mul(u, v));
            break;
        }
        }
    }
    return std::move(b).finish_arithmetic(map[bc.output()]);
}

} // namespace vps
