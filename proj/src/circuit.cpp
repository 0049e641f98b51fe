#include "vps/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

// ---------------------------------------------------------------------------
// Builder

void CircuitBuilder::check_ref(GateId id) const {
    if (id >= gates_.size())
        throw std::invalid_argument("gate reference g" + std::to_string(id) + " is not defined yet");
}

GateId CircuitBuilder::push(const Gate& g) {
    if (g.kind == GateKind::input && g.var >= nvars_)
        throw std::invalid_argument("input index " + std::to_string(g.var + 1) + " exceeds " +
                                    std::to_string(nvars_) + " inputs");
    if (g.is_binary()) {
        check_ref(g.lhs);
        check_ref(g.rhs);
    } else if (g.kind == GateKind::test) {
        check_ref(g.lhs);
    }
    gates_.push_back(g);
    return static_cast<GateId>(gates_.size() - 1);
}

GateId CircuitBuilder::input(std::size_t var) {
    Gate g;
    g.kind = GateKind::input;
    g.var = var;
    return push(g);
}

GateId CircuitBuilder::shared_input(std::size_t var) {
    if (inputs_.size() < nvars_) inputs_.resize(nvars_);
    if (var >= nvars_) throw std::invalid_argument("input index out of range");
    if (!inputs_[var]) inputs_[var] = input(var);
    return *inputs_[var];
}

GateId CircuitBuilder::const_one() { return constant(1); }

GateId CircuitBuilder::one() {
    if (!one_) one_ = const_one();
    return *one_;
}

GateId CircuitBuilder::zero() {
    if (!zero_) {
        const GateId o = one();
        zero_ = sub(o, o);
    }
    return *zero_;
}

GateId CircuitBuilder::constant(const Rational& value) {
    Gate g;
    g.kind = GateKind::constant;
    g.value = value;
    return push(g);
}

GateId CircuitBuilder::integer(const Integer& k) {
    if (k == 0) return zero();
    if (k < 0) return sub(zero(), integer(-k));
    const std::size_t bits = bit_length(k);
    GateId acc = one();
    for (std::size_t b = bits - 1; b-- > 0;) {
        acc = add(acc, acc);
        if (mpz_tstbit(k.get_mpz_t(), b)) acc = add(acc, one());
    }
    return acc;
}

GateId CircuitBuilder::binary(GateKind k, GateId a, GateId b) {
    Gate g;
    g.kind = k;
    g.lhs = a;
    g.rhs = b;
    return push(g);
}

GateId CircuitBuilder::add(GateId a, GateId b) { return binary(GateKind::add, a, b); }
GateId CircuitBuilder::sub(GateId a, GateId b) { return binary(GateKind::sub, a, b); }
GateId CircuitBuilder::mul(GateId a, GateId b) { return binary(GateKind::mul, a, b); }

GateId CircuitBuilder::test(GateId a) {
    Gate g;
    g.kind = GateKind::test;
    g.lhs = a;
    return push(g);
}

ArithmeticCircuit CircuitBuilder::finish_arithmetic(GateId output) && {
    return ArithmeticCircuit(nvars_, std::move(gates_), output);
}

AlgebraicCircuit CircuitBuilder::finish_algebraic(GateId output) && {
    return AlgebraicCircuit(nvars_, std::move(gates_), output);
}

// ---------------------------------------------------------------------------
// Circuits

CircuitDag::CircuitDag(std::size_t nvars, std::vector<Gate> gates, GateId output)
    : nvars_(nvars), gates_(std::move(gates)), output_(output) {
    if (gates_.empty()) throw std::invalid_argument("circuit has no gates");
    if (output_ >= gates_.size()) throw std::invalid_argument("output gate does not exist");
    for (std::size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        if (g.kind == GateKind::input && g.var >= nvars_)
            throw std::invalid_argument("gate g" + std::to_string(i) + " reads input " +
                                        std::to_string(g.var + 1) + " of " +
                                        std::to_string(nvars_));
        if ((g.is_binary() || g.kind == GateKind::test) && g.lhs >= i)
            throw std::invalid_argument("gate g" + std::to_string(i) + " references a later gate");
        if (g.is_binary() && g.rhs >= i)
            throw std::invalid_argument("gate g" + std::to_string(i) + " references a later gate");
    }
}

bool CircuitDag::has_tests() const noexcept {
    return std::any_of(gates_.begin(), gates_.end(),
                       [](const Gate& g) { return g.kind == GateKind::test; });
}

bool CircuitDag::constant_free() const noexcept {
    return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) {
        return g.kind != GateKind::constant || g.value == 1;
    });
}

ArithmeticCircuit::ArithmeticCircuit(std::size_t nvars, std::vector<Gate> gates, GateId output)
    : CircuitDag(nvars, std::move(gates), output) {
    if (has_tests()) throw std::invalid_argument("arithmetic circuits have no test gates");
    if (!constant_free())
        throw std::invalid_argument("arithmetic circuits allow only the constant 1");
}

AlgebraicCircuit::AlgebraicCircuit(std::size_t nvars, std::vector<Gate> gates, GateId output)
    : CircuitDag(nvars, std::move(gates), output) {
    if (gates_[output_].kind != GateKind::test)
        throw std::invalid_argument("the output of an algebraic circuit must be a test gate");
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> split_words(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

std::size_t parse_count(const std::string& w, std::size_t line, const char* what) {
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError(std::string("expected ") + what + ", got '" + w + "'", line);
    if (w.size() > 9) throw ParseError(std::string(what) + " too large", line);
    return std::stoul(w);
}

std::size_t parse_gate_name(const std::string& w, std::size_t line) {
    if (w.size() < 2 || w[0] != 'g') throw ParseError("expected gate name gN, got '" + w + "'", line);
    return parse_count(w.substr(1), line, "gate number");
}

} // namespace

ParsedCircuit parse_circuit_text(std::istream& in, ConstantMode mode) {
    std::optional<CircuitBuilder> builder;
    std::map<std::size_t, GateId> ids;  // file id -> internal id
    std::optional<std::size_t> last_id;
    std::optional<GateId> output;
    bool has_tests = false;

    auto resolve = [&](const std::string& w, std::size_t line) {
        const auto id = parse_gate_name(w, line);
        auto it = ids.find(id);
        if (it == ids.end()) throw ParseError("gate g" + std::to_string(id) + " is not defined before use", line);
        return it->second;
    };

    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto words = split_words(raw);
        if (words.empty()) continue;

        if (words[0] == "ninputs") {
            if (builder) throw ParseError("duplicate ninputs line", lineno);
            if (words.size() != 2) throw ParseError("usage: ninputs K", lineno);
            builder.emplace(parse_count(words[1], lineno, "input count"));
            continue;
        }
        if (!builder) throw ParseError("the first statement must be 'ninputs K'", lineno);
        if (words[0] == "output") {
            if (words.size() != 2) throw ParseError("usage: output gN", lineno);
            if (output) throw ParseError("duplicate output line", lineno);
            output = resolve(words[1], lineno);
            continue;
        }
        if (words.size() < 3 || words[1] != "=")
            throw ParseError("expected 'gN = <kind> ...'", lineno);
        const auto id = parse_gate_name(words[0], lineno);
        if (last_id && id <= *last_id)
            throw ParseError("gate ids must be strictly increasing (g" + std::to_string(id) +
                                 " after g" + std::to_string(*last_id) + ")",
                             lineno);
        last_id = id;
        const std::string& kind = words[2];
        auto arity = [&](std::size_t n) {
            if (words.size() != 3 + n)
                throw ParseError("'" + kind + "' takes " + std::to_string(n) + " operand(s)", lineno);
        };
        GateId gid = 0;
        try {
            if (kind == "input") {
                arity(1);
                const auto i = parse_count(words[3], lineno, "input index");
                if (i < 1 || i > builder->nvars())
                    throw ParseError("input index " + words[3] + " outside 1.." +
                                         std::to_string(builder->nvars()),
                                     lineno);
                gid = builder->input(i - 1);
            } else if (kind == "const") {
                arity(1);
                Rational v;
                try {
                    v = parse_rational(words[3]);
                } catch (const ParseError& e) {
                    throw ParseError(e.what(), lineno);
                }
                if (v == 1) {
                    gid = builder->const_one();
                } else if (mode == ConstantMode::keep) {
                    gid = builder->constant(v);
                } else if (v.get_den() == 1) {
                    gid = builder->integer(v.get_num());
                } else {
                    throw ParseError("non-integer constant " + words[3] +
                                         " requires keeping constants as leaves",
                                     lineno);
                }
            } else if (kind == "add" || kind == "sub" || kind == "mul") {
                arity(2);
                const GateId a = resolve(words[3], lineno);
                const GateId b = resolve(words[4], lineno);
                gid = kind == "add" ? builder->add(a, b)
                      : kind == "sub" ? builder->sub(a, b)
                                      : builder->mul(a, b);
            } else if (kind == "test") {
                arity(1);
                gid = builder->test(resolve(words[3], lineno));
                has_tests = true;
            } else {
                throw ParseError("unknown gate kind '" + kind + "'", lineno);
            }
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), lineno);
        }
        ids[id] = gid;
    }
    if (!builder) throw ParseError("missing 'ninputs K' line", lineno);
    if (!output) throw ParseError("missing 'output gN' line", lineno);
    ParsedCircuit out;
    out.nvars = builder->nvars();
    out.gates = builder->gates();
    out.output = *output;
    out.has_tests = has_tests;
    return out;
}

ArithmeticCircuit read_arithmetic_circuit(std::istream& in) {
    auto pc = parse_circuit_text(in, ConstantMode::expand);
    if (pc.has_tests) throw ParseError("arithmetic circuit contains test gates");
    return ArithmeticCircuit(pc.nvars, std::move(pc.gates), pc.output);
}

AlgebraicCircuit read_algebraic_circuit(std::istream& in, ConstantMode mode) {
    auto pc = parse_circuit_text(in, mode);
    try {
        return AlgebraicCircuit(pc.nvars, std::move(pc.gates), pc.output);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

namespace {
std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return in;
}
} // namespace

ArithmeticCircuit load_arithmetic_circuit(const std::string& path) {
    auto in = open_or_throw(path);
    return read_arithmetic_circuit(in);
}

AlgebraicCircuit load_algebraic_circuit(const std::string& path, ConstantMode mode) {
    auto in = open_or_throw(path);
    return read_algebraic_circuit(in, mode);
}

std::string write_circuit(const CircuitDag& c) {
    std::ostringstream os;
    os << "ninputs " << c.nvars() << '\n';
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gates()[i];
        os << 'g' << i << " = ";
        switch (g.kind) {
        case GateKind::input: os << "input " << g.var + 1; break;
        case GateKind::constant: os << "const " << to_string(g.value); break;
        case GateKind::add: os << "add g" << g.lhs << " g" << g.rhs; break;
        case GateKind::sub: os << "sub g" << g.lhs << " g" << g.rhs; break;
        case GateKind::mul: os << "mul g" << g.lhs << " g" << g.rhs; break;
        case GateKind::test: os << "test g" << g.lhs; break;
        }
        os << '\n';
    }
    os << "output g" << c.output() << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation

Rational eval_circuit(const ArithmeticCircuit& c, std::span<const Rational> point) {
    if (point.size() != c.nvars())
        throw std::invalid_argument("circuit has " + std::to_string(c.nvars()) + " inputs, got " +
                                    std::to_string(point.size()) + " values");
    std::vector<Rational> val(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
        case GateKind::input: val[i] = point[g.var]; break;
        case GateKind::constant: val[i] = g.value; break;
        case GateKind::add: val[i] = val[g.lhs] + val[g.rhs]; break;
        case GateKind::sub: val[i] = val[g.lhs] - val[g.rhs]; break;
        case GateKind::mul: val[i] = val[g.lhs] * val[g.rhs]; break;
        case GateKind::test: throw std::logic_error("test gate in arithmetic circuit");
        }
        if (i == c.output()) return val[i];
    }
    return val[c.output()];
}

Integer eval_circuit(const ArithmeticCircuit& c, std::span<const Integer> point,
                     const Integer& modulus) {
    if (modulus < 2) throw std::domain_error("modulus must be at least 2");
    if (point.size() != c.nvars())
        throw std::invalid_argument("circuit has " + std::to_string(c.nvars()) + " inputs, got " +
                                    std::to_string(point.size()) + " values");
    auto reduce = [&](Integer v) {
        v %= modulus;
        if (v < 0) v += modulus;
        return v;
    };
    std::vector<Integer> val(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
        case GateKind::input: val[i] = reduce(point[g.var]); break;
        case GateKind::constant: val[i] = reduce(g.value.get_num()); break;
        case GateKind::add: val[i] = reduce(val[g.lhs] + val[g.rhs]); break;
        case GateKind::sub: val[i] = reduce(val[g.lhs] - val[g.rhs]); break;
        case GateKind::mul: val[i] = reduce(val[g.lhs] * val[g.rhs]); break;
        case GateKind::test: throw std::logic_error("test gate in arithmetic circuit");
        }
    }
    return val[c.output()];
}

std::vector<std::uint64_t> formal_degrees(const CircuitDag& c) {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> fd(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
        case GateKind::input:
        case GateKind::constant: fd[i] = 1; break;
        case GateKind::add:
        case GateKind::sub: fd[i] = std::max(fd[g.lhs], fd[g.rhs]); break;
        case GateKind::mul:
            fd[i] = fd[g.lhs] > kMax - fd[g.rhs] ? kMax : fd[g.lhs] + fd[g.rhs];
            break;
        case GateKind::test: fd[i] = 1; break;  // outputs 0/1, a leaf for degree purposes
        }
    }
    return fd;
}

std::uint64_t formal_degree(const CircuitDag& c) { return formal_degrees(c)[c.output()]; }

Polynomial expand(const ArithmeticCircuit& c, std::size_t term_cap) {
    std::vector<Polynomial> val(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
        case GateKind::input: val[i] = Polynomial::variable(c.nvars(), g.var); break;
        case GateKind::constant: val[i] = Polynomial::constant(c.nvars(), g.value.get_num()); break;
        case GateKind::add: val[i] = val[g.lhs] + val[g.rhs]; break;
        case GateKind::sub: val[i] = val[g.lhs] - val[g.rhs]; break;
        case GateKind::mul:
            if (val[g.lhs].term_count() * val[g.rhs].term_count() > term_cap * term_cap)
                throw CapExceeded("expansion cap", "--expand-cap", term_cap,
                                  "gate g" + std::to_string(i) + " product too large");
            val[i] = val[g.lhs] * val[g.rhs];
            break;
        case GateKind::test: throw std::logic_error("test gate in arithmetic circuit");
        }
        if (val[i].term_count() > term_cap)
            throw CapExceeded("expansion cap", "--expand-cap", term_cap,
                              "gate g" + std::to_string(i) + " has " +
                                  std::to_string(val[i].term_count()) + " terms");
    }
    return val[c.output()];
}

Integer extract_coefficient(const ArithmeticCircuit& c, const Monomial& alpha) {
    if (alpha.size() != c.nvars())
        throw std::invalid_argument("monomial has " + std::to_string(alpha.size()) +
                                    " exponents, circuit has " + std::to_string(c.nvars()) +
                                    " inputs");
    const std::size_t n = c.nvars();
    // Divisors beta <= alpha are indexed in mixed radix (alpha_v + 1).
    std::vector<std::size_t> radix(n), stride(n);
    std::size_t count = 1;
    for (std::size_t v = 0; v < n; ++v) {
        radix[v] = alpha[v] + 1;
        stride[v] = count;
        if (count > (std::size_t{1} << 24) / radix[v])
            throw CapExceeded("divisor cap", "--expand-cap", std::size_t{1} << 24,
                              "monomial has too many divisors");
        count *= radix[v];
    }
    std::vector<std::vector<std::uint32_t>> digits(count, std::vector<std::uint32_t>(n));
    std::vector<std::uint64_t> deg(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx)
        for (std::size_t v = 0; v < n; ++v) {
            digits[idx][v] = static_cast<std::uint32_t>((idx / stride[v]) % radix[v]);
            deg[idx] += digits[idx][v];
        }

    const auto fd = formal_degrees(c);
    std::vector<std::vector<Integer>> coef(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const Gate& g = c.gates()[i];
        auto& out = coef[i];
        out.assign(count, 0);
        switch (g.kind) {
        case GateKind::input:
            if (alpha[g.var] >= 1) out[stride[g.var]] = 1;
            break;
        case GateKind::constant: out[0] = g.value.get_num(); break;
        case GateKind::add:
            for (std::size_t b = 0; b < count; ++b) out[b] = coef[g.lhs][b] + coef[g.rhs][b];
            break;
        case GateKind::sub:
            for (std::size_t b = 0; b < count; ++b) out[b] = coef[g.lhs][b] - coef[g.rhs][b];
            break;
        case GateKind::mul: {
            const auto& ca = coef[g.lhs];
            const auto& cb = coef[g.rhs];
            for (std::size_t b = 0; b < count; ++b) {
                if (deg[b] > fd[i]) continue;
                // Sum over gamma <= beta of ca[gamma] * cb[beta - gamma].
                for (std::size_t gm = 0; gm <= b; ++gm) {
                    if (deg[gm] > fd[g.lhs] || deg[b] - std::min(deg[b], deg[gm]) > fd[g.rhs]) continue;
                    if (ca[gm] == 0) continue;
                    bool le = true;
                    std::size_t rest = 0;
                    for (std::size_t v = 0; v < n && le; ++v) {
                        if (digits[gm][v] > digits[b][v]) le = false;
                        else rest += (digits[b][v] - digits[gm][v]) * stride[v];
                    }
                    if (!le || cb[rest] == 0) continue;
                    out[b] += ca[gm] * cb[rest];
                }
            }
            break;
        }
        case GateKind::test: throw std::logic_error("test gate in arithmetic circuit");
        }
    }
    return coef[c.output()][count - 1];
}

} // namespace vps
