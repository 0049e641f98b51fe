#include "vps/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "vps/bss.hpp"
#include "vps/circuit.hpp"
#include "vps/errors.hpp"
#include "vps/families.hpp"
#include "vps/macaulay.hpp"
#include "vps/sign_engine.hpp"
#include "vps/transfer.hpp"
#include "vps/transforms.hpp"

namespace vps::cli {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<Polynomial> read_system(const std::string& path) {
    std::istringstream in(slurp(path));
    std::vector<std::string> lines;
    std::vector<std::size_t> numbers;
    std::string raw;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        lines.push_back(raw);
        numbers.push_back(line);
    }
    // Common variable count: the largest index used anywhere.
    std::size_t nvars = 1;
    for (std::size_t k = 0; k < lines.size(); ++k) {
        try {
            nvars = std::max(nvars, parse_polynomial(lines[k]).nvars());
        } catch (const ParseError& e) {
            throw ParseError(e.what(), numbers[k]);
        }
    }
    std::vector<Polynomial> sys;
    for (const auto& l : lines) sys.push_back(parse_polynomial(l, nvars));
    if (sys.empty()) throw ParseError("system file has no polynomials");
    return sys;
}

std::vector<std::uint32_t> parse_exponents(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    for (std::string w; std::getline(ss, w, ',');) {
        if (w.empty() || w.size() > 9 || w.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad exponent '" + w + "' in --monomial");
        out.push_back(static_cast<std::uint32_t>(std::stoul(w)));
    }
    return out;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << text;
}

struct Options {
    std::string circuit, system, input, monomial, modulus, trace, output, point, kind;
    std::vector<std::string> witnesses;
    std::uint64_t dmax = 0;
    std::size_t n = 0;
    std::size_t max_tests = kDefaultMaxTests;
    std::size_t max_sprime = kDefaultMaxSprime;
    std::size_t expand_cap = kDefaultExpandCap;
    std::size_t family_cap = kDefaultFamilyCap;
    bool prune = false;
    bool attest = false;
    bool allow_incomplete = false;
};

int cmd_eval(const Options& o, std::ostream& out) {
    const std::string text = slurp(o.circuit);
    std::istringstream probe(text);
    const ParsedCircuit pc = parse_circuit_text(probe, ConstantMode::keep);
    if (pc.has_tests) {
        if (!o.modulus.empty()) throw std::invalid_argument("--modulus applies to arithmetic circuits only");
        const AlgebraicCircuit c(pc.nvars, pc.gates, pc.output);
        out << (eval_bss(c, parse_rationals(o.input)) ? 1 : 0) << '\n';
        return 0;
    }
    std::istringstream in(text);
    const ArithmeticCircuit c = read_arithmetic_circuit(in);
    if (o.modulus.empty()) {
        out << to_string(eval_circuit(c, parse_rationals(o.input))) << '\n';
        return 0;
    }
    const Rational m = parse_rational(o.modulus);
    if (m.get_den() != 1) throw std::invalid_argument("--modulus must be an integer");
    std::vector<Integer> xs;
    for (const auto& r : parse_rationals(o.input)) {
        if (r.get_den() != 1) throw std::invalid_argument("modular evaluation needs integer inputs");
        xs.push_back(r.get_num());
    }
    out << to_string(eval_circuit(c, xs, m.get_num())) << '\n';
    return 0;
}

int cmd_expand(const Options& o, std::ostream& out) {
    out << to_string(expand(load_arithmetic_circuit(o.circuit), o.expand_cap)) << '\n';
    return 0;
}

int cmd_coeff(const Options& o, std::ostream& out) {
    const ArithmeticCircuit c = load_arithmetic_circuit(o.circuit);
    const auto e = parse_exponents(o.monomial);
    if (e.size() != c.nvars())
        throw std::invalid_argument("--monomial has " + std::to_string(e.size()) + " exponents, circuit has " +
                                    std::to_string(c.nvars()) + " inputs");
    out << to_string(extract_coefficient(c, Monomial(e))) << '\n';
    return 0;
}

int cmd_formal_degree(const Options& o, std::ostream& out) {
    const std::string text = slurp(o.circuit);
    std::istringstream in(text);
    const ParsedCircuit pc = parse_circuit_text(in, ConstantMode::expand);
    if (pc.has_tests) out << formal_degree(AlgebraicCircuit(pc.nvars, pc.gates, pc.output)) << '\n';
    else out << formal_degree(ArithmeticCircuit(pc.nvars, pc.gates, pc.output)) << '\n';
    return 0;
}

int cmd_split(const Options& o, std::ostream& out) {
    write_output(o.output, write_circuit(homogeneous_split_mod2(load_arithmetic_circuit(o.circuit), o.dmax)), out);
    return 0;
}

int cmd_simulate(const Options& o, std::ostream& out) {
    write_output(o.output, write_circuit(simulate_boolean(load_boolean_circuit(o.circuit))), out);
    return 0;
}

int cmd_family(const Options& o, std::ostream& out) {
    const auto kind = o.kind == "hc" ? HamiltonKind::cycles : HamiltonKind::paths;
    out << to_string(hamilton_family(o.n, kind, o.family_cap)) << '\n';
    return 0;
}

int cmd_macaulay(const Options& o, std::ostream& out, bool show_matrix) {
    const HomogeneousSystem sys = load_homogeneous_system(o.system);
    const MacaulayMatrix m = build_macaulay(sys);
    if (show_matrix) {
        out << "N = " << m.side() << '\n' << "d = " << m.degree << '\n';
        for (std::size_t r = 0; r < m.side(); ++r) {
            out << to_string(m.monomials[r]) << " (f" << m.provenance[r].form + 1 << "):";
            for (std::size_t c = 0; c < m.side(); ++c) out << ' ' << to_string(m.entries(r, c));
            out << '\n';
        }
    }
    const ResultantReport rep = resultant_vanishing(sys);
    out << "detM = " << to_string(rep.det_m) << '\n'
        << "detM' = " << to_string(rep.det_m_prime) << '\n'
        << "verdict = " << to_string(rep.verdict) << '\n';
    return 0;
}

int cmd_signcond_enumerate(const Options& o, std::ostream& out) {
    std::vector<Polynomial> sys = read_system(o.system);
    Backend backend = UnivariateComplete{};
    if (!o.witnesses.empty()) {
        WitnessSet ws;
        for (const auto& w : o.witnesses) ws.points.push_back(parse_rationals(w));
        ws.attested_complete = o.attest;
        backend = ws;
    }
    const SignConditionTable t = enumerate_sign_conditions(std::move(sys), backend);
    for (std::size_t r = 0; r < t.size(); ++r)
        out << r + 1 << ' ' << to_string(t.conditions[r]) << ' ' << to_string(t.witnesses[r]) << '\n';
    out << "# N = " << t.size() << ", complete = " << (t.complete ? "yes" : "no")
        << ", L = " << t.coefficient_bits() << '\n';
    return 0;
}

int cmd_signcond_point(const Options& o, std::ostream& out) {
    const std::vector<Polynomial> sys = read_system(o.system);
    out << to_string(sign_condition_of_point(sys, parse_rationals(o.point))) << '\n';
    return 0;
}

int cmd_tested(const Options& o, std::ostream& out) {
    const AlgebraicCircuit c = load_algebraic_circuit(o.circuit);
    const auto list = enumerate_tested_polynomials(c, {o.prune, o.max_tests});
    for (std::size_t j = 0; j < list.size(); ++j) out << j + 1 << ' ' << to_string(list.polys[j]) << '\n';
    out << "# scenarios = " << list.scenarios << ", pruned = " << list.pruned << '\n';
    return 0;
}

int cmd_transfer(const Options& o, std::ostream& out, std::ostream& err) {
    const AlgebraicCircuit c = load_algebraic_circuit(o.circuit);
    TransferOptions opt;
    opt.enumeration = {o.prune, o.max_tests};
    opt.max_sprime = o.max_sprime;
    opt.allow_incomplete = o.allow_incomplete;
    if (!o.witnesses.empty()) {
        WitnessSet ws;
        for (const auto& w : o.witnesses) ws.points.push_back(parse_rationals(w));
        ws.attested_complete = o.attest;
        opt.witnesses = ws;
    }
    const auto x = parse_rationals(o.input);
    const TransferResult r = transfer_decide(c, x, opt);
    if (!o.trace.empty()) write_output(o.trace, r.transcript.format(r.summary()), out);
    out << "N_T = " << r.truncated_count << '\n'
        << "m = " << r.m << '\n'
        << "N' = " << r.compatible_count << '\n'
        << "c = " << to_string(r.c) << '\n'
        << "rank = " << r.rank << '\n'
        << "queries = " << r.transcript.total() << " (bound " << query_bound(r.truncated_count, r.compatible_count)
        << ")\n"
        << "decision = " << r.decision << " (direct eval: " << r.direct_decision << ")\n";
    if (r.decision != r.direct_decision) {
        err << "error: pipeline decision differs from direct evaluation\n";
        return 1;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact workbench for algebraic circuits, sign conditions and resultants", "vpsw"};
    app.require_subcommand(1);
    Options o;

    auto circuit_opt = [&](CLI::App* s) { s->add_option("--circuit", o.circuit, "Circuit file")->required(); };

    auto* eval = app.add_subcommand("eval", "Evaluate a circuit (test gates give 0/1)");
    circuit_opt(eval);
    eval->add_option("--input", o.input, "Comma-separated rationals")->required();
    eval->add_option("--modulus", o.modulus, "Reduce every gate modulo this integer");

    auto* exp = app.add_subcommand("expand", "Expand an arithmetic circuit into a polynomial");
    circuit_opt(exp);
    exp->add_option("--expand-cap", o.expand_cap, "Term cap per gate")->capture_default_str();

    auto* coeff = app.add_subcommand("coeff", "Coefficient of one monomial");
    circuit_opt(coeff);
    coeff->add_option("--monomial", o.monomial, "Comma-separated exponents")->required();

    auto* fdeg = app.add_subcommand("formal-degree", "Formal degree of a circuit");
    circuit_opt(fdeg);

    auto* split = app.add_subcommand("split-mod2", "Homogeneous split modulo 2");
    circuit_opt(split);
    split->add_option("--dmax", o.dmax, "Largest kept degree")->required();
    split->add_option("--output", o.output, "Write the circuit here instead of stdout");

    auto* sim = app.add_subcommand("simulate-bool", "Arithmetize a boolean circuit");
    circuit_opt(sim);
    sim->add_option("--output", o.output, "Write the circuit here instead of stdout");

    auto* fam = app.add_subcommand("family", "Hamilton cycle (hc) or path (hp) polynomial");
    fam->add_option("kind", o.kind, "hc or hp")->required()->check(CLI::IsMember({"hc", "hp"}));
    fam->add_option("--n", o.n, "Number of vertices")->required();
    fam->add_option("--family-cap", o.family_cap, "Largest allowed n")->capture_default_str();

    auto* mac = app.add_subcommand("macaulay", "Macaulay matrix, determinants and verdict");
    mac->add_option("--system", o.system, "Homogeneous system file")->required();
    auto* res = app.add_subcommand("resultant", "Resultant vanishing verdict");
    res->add_option("--system", o.system, "Homogeneous system file")->required();

    auto* sc = app.add_subcommand("signcond", "Sign conditions");
    sc->require_subcommand(1);
    auto* sce = sc->add_subcommand("enumerate", "Satisfiable sign conditions in rank order");
    sce->add_option("--system", o.system, "One polynomial per line")->required();
    sce->add_option("--witness", o.witnesses, "Witness point (repeatable); switches to the witness-set backend");
    sce->add_flag("--attest-complete", o.attest, "Declare the witness set complete");
    auto* scp = sc->add_subcommand("of-point", "Sign condition of a point");
    scp->add_option("--system", o.system, "One polynomial per line")->required();
    scp->add_option("--point", o.point, "Comma-separated rationals")->required();

    auto* tp = app.add_subcommand("tested-polys", "Polynomials that can reach a test gate");
    circuit_opt(tp);
    tp->add_flag("--prune", o.prune, "Skip unsatisfiable scenarios (univariate circuits)");
    tp->add_option("--max-tests", o.max_tests, "Test-gate cap")->capture_default_str();

    auto* tr = app.add_subcommand("transfer", "Decide a circuit through sign-test queries");
    tr->require_subcommand(1);
    auto* td = tr->add_subcommand("decide", "Run the pipeline on one input");
    circuit_opt(td);
    td->add_option("--input", o.input, "Comma-separated rationals")->required();
    td->add_option("--trace", o.trace, "Write the query transcript here");
    td->add_flag("--prune", o.prune, "Prune unsatisfiable scenarios");
    td->add_option("--max-tests", o.max_tests, "Test-gate cap")->capture_default_str();
    td->add_option("--max-sprime", o.max_sprime, "Halving search length cap")->capture_default_str();
    td->add_option("--witness", o.witnesses, "Witness point for multivariate circuits (repeatable)");
    td->add_flag("--attest-complete", o.attest, "Declare the witness set complete");
    td->add_flag("--allow-incomplete", o.allow_incomplete, "Run on an incomplete table");

    std::vector<std::string> argv_store{"vpsw"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(o, out);
        if (*exp) return cmd_expand(o, out);
        if (*coeff) return cmd_coeff(o, out);
        if (*fdeg) return cmd_formal_degree(o, out);
        if (*split) return cmd_split(o, out);
        if (*sim) return cmd_simulate(o, out);
        if (*fam) return cmd_family(o, out);
        if (*mac) return cmd_macaulay(o, out, true);
        if (*res) return cmd_macaulay(o, out, false);
        if (*sce) return cmd_signcond_enumerate(o, out);
        if (*scp) return cmd_signcond_point(o, out);
        if (*tp) return cmd_tested(o, out);
        if (*td) return cmd_transfer(o, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace vps::cli
