#include "vps/transfer.hpp"

#include <sstream>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

std::string to_string(QueryKind k) {
    switch (k) {
    case QueryKind::truncated: return "truncated";
    case QueryKind::product: return "product";
    case QueryKind::coordinate: return "coordinate";
    }
    return "?";
}

std::size_t Transcript::count(QueryKind k) const noexcept {
    std::size_t n = 0;
    for (const auto& r : records_)
        if (r.kind == k) ++n;
    return n;
}

std::string Transcript::format(const std::optional<TransferSummary>& summary) const {
    std::ostringstream os;
    std::size_t total = 0;
    for (const auto& r : records_) {
        ++total;
        os << to_string(r.kind);
        switch (r.kind) {
        case QueryKind::truncated: os << " i=" << r.i; break;
        case QueryKind::product: os << " i=" << r.i << " k=" << r.k << " c=" << to_string(r.c); break;
        case QueryKind::coordinate: os << " j=" << r.k + 1; break;
        }
        os << " answer=" << to_int(r.answer) << " total=" << total << '\n';
    }
    if (summary) {
        os << "result m=" << summary->m << " c=" << to_string(summary->c) << " rank=" << summary->rank
           << " decision=" << summary->decision << " direct=" << summary->direct << '\n';
    }
    return os.str();
}

namespace {

std::map<std::string, std::string> key_values(std::istringstream& is, std::size_t line) {
    std::map<std::string, std::string> kv;
    for (std::string w; is >> w;) {
        const auto eq = w.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + w + "'", line);
        if (!kv.emplace(w.substr(0, eq), w.substr(eq + 1)).second)
            throw ParseError("duplicate key '" + w.substr(0, eq) + "'", line);
    }
    return kv;
}

std::size_t number(const std::map<std::string, std::string>& kv, const std::string& key, std::size_t line) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("missing " + key + "=", line);
    const std::string& v = it->second;
    if (v.empty() || v.size() > 18 || v.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad value for " + key + ": '" + v + "'", line);
    return std::stoull(v);
}

ChoiceList choices(const std::map<std::string, std::string>& kv, std::size_t line) {
    auto it = kv.find("c");
    if (it == kv.end()) throw ParseError("missing c=", line);
    ChoiceList c;
    if (it->second == "-") return c;
    for (char ch : it->second) {
        if (ch != '0' && ch != '1') throw ParseError("bad choice list '" + it->second + "'", line);
        c.push_back(ch == '1');
    }
    if (c.empty()) throw ParseError("empty choice list (use '-')", line);
    return c;
}

Sign answer(const std::map<std::string, std::string>& kv, std::size_t line) {
    auto it = kv.find("answer");
    if (it == kv.end()) throw ParseError("missing answer=", line);
    if (it->second == "-1") return Sign::negative;
    if (it->second == "0") return Sign::zero;
    if (it->second == "1") return Sign::positive;
    throw ParseError("bad answer '" + it->second + "'", line);
}

bool flag(const std::map<std::string, std::string>& kv, const std::string& key, std::size_t line) {
    const std::size_t v = number(kv, key, line);
    if (v > 1) throw ParseError(key + " must be 0 or 1", line);
    return v == 1;
}

void expect_keys(const std::map<std::string, std::string>& kv, std::size_t n, std::size_t line) {
    if (kv.size() != n) throw ParseError("unexpected keys", line);
}

} // namespace

ParsedTrace parse_trace(std::istream& in) {
    ParsedTrace out;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (out.summary) throw ParseError("text after the result line", line);
        std::istringstream is(raw);
        std::string kind;
        is >> kind;
        auto kv = key_values(is, line);
        if (kind == "result") {
            expect_keys(kv, 5, line);
            out.summary = TransferSummary{number(kv, "m", line), choices(kv, line), number(kv, "rank", line),
                                          flag(kv, "decision", line), flag(kv, "direct", line)};
            continue;
        }
        QueryRecord r;
        if (kind == "truncated") {
            expect_keys(kv, 3, line);
            r.kind = QueryKind::truncated;
            r.i = number(kv, "i", line);
        } else if (kind == "product") {
            expect_keys(kv, 5, line);
            r.kind = QueryKind::product;
            r.i = number(kv, "i", line);
            r.k = number(kv, "k", line);
            r.c = choices(kv, line);
            if (r.c.size() + 1 != r.i) throw ParseError("choice list length does not match i", line);
        } else if (kind == "coordinate") {
            expect_keys(kv, 3, line);
            r.kind = QueryKind::coordinate;
            const std::size_t j = number(kv, "j", line);
            if (j == 0) throw ParseError("j is 1-based", line);
            r.k = j - 1;
        } else {
            throw ParseError("unknown record kind '" + kind + "'", line);
        }
        r.answer = answer(kv, line);
        if (number(kv, "total", line) != out.transcript.total() + 1)
            throw ParseError("running total out of sequence", line);
        out.transcript.append(std::move(r));
    }
    return out;
}

TestOracle::TestOracle(const SignConditionTable& table, std::vector<Rational> x, std::size_t max_sprime)
    : table_(table), truncated_(truncated_table(table)), x_(std::move(x)), signs_(table.system.size()),
      max_sprime_(max_sprime) {
    for (const auto& f : table_.system)
        if (f.nvars() != x_.size())
            throw std::invalid_argument("input has " + std::to_string(x_.size()) + " coordinates, system has " +
                                        std::to_string(f.nvars()) + " variables");
}

Sign TestOracle::value_sign(std::size_t j) {
    if (!signs_[j]) signs_[j] = table_.system[j].sign_at(x_);
    return *signs_[j];
}

Sign TestOracle::truncated(std::size_t i) {
    if (i < 1 || i > truncated_.size())
        throw std::out_of_range("truncated query index " + std::to_string(i) + " outside 1.." +
                                std::to_string(truncated_.size()));
    Sign result = Sign::positive;
    for (std::size_t j = 0; j < i && result != Sign::zero; ++j) {
        // The sum of squares over positions outside T^(j) vanishes iff all those f_k do.
        bool vanishes = true;
        for (std::size_t k = 0; k < truncated_[j].size() && vanishes; ++k)
            if (!truncated_[j][k] && value_sign(k) != Sign::zero) vanishes = false;
        if (vanishes) result = Sign::zero;
    }
    transcript_.append({QueryKind::truncated, i, 0, {}, result});
    return result;
}

const TwoValuedView& TestOracle::view(std::size_t k) {
    if (k < 1 || k > truncated_.size())
        throw std::out_of_range("truncated rank " + std::to_string(k) + " outside 1.." +
                                std::to_string(truncated_.size()));
    auto it = views_.find(k);
    if (it == views_.end()) it = views_.emplace(k, compatible_view(table_, truncated_[k - 1])).first;
    return it->second;
}

Sign TestOracle::product(std::size_t i, std::size_t k, const ChoiceList& c) {
    if (c.size() + 1 != i) throw std::invalid_argument("product query i must equal |c| + 1");
    const TwoValuedView& v = view(k);
    const Gf2Vector u = star_sequence(v.vectors, c, max_sprime_).back();
    Sign result = Sign::positive;
    for (std::size_t j = 0; j < u.size() && result != Sign::zero; ++j)
        if (u.get(j)) result = result * value_sign(v.index_map[j]);
    transcript_.append({QueryKind::product, i, k, c, result});
    return result;
}

Sign TestOracle::coordinate(std::size_t j) {
    if (j >= signs_.size()) throw std::out_of_range("coordinate query outside the system");
    const Sign s = value_sign(j);
    transcript_.append({QueryKind::coordinate, 0, j, {}, s});
    return s;
}

std::size_t truncated_rank_search(TestOracle& oracle) {
    const std::size_t NT = oracle.truncated_list().size();
    if (NT == 0) throw std::invalid_argument("empty truncated table");
    if (!oracle.table().complete && oracle.truncated(NT) != Sign::zero)
        throw IncompleteTableError("the input's truncated sign condition is missing from the table");
    std::size_t lo = 1, hi = NT;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (oracle.truncated(mid) == Sign::zero) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

namespace {

[[noreturn]] void fail(const TestOracle& oracle, const std::string& what) {
    if (!oracle.table().complete) throw IncompleteTableError(what + " (table is incomplete)");
    throw InconsistencyError(what);
}

} // namespace

ChoiceList full_condition_search(TestOracle& oracle, std::size_t k) {
    const TwoValuedView& view = oracle.view(k);
    std::vector<Gf2Vector> E = view.vectors;
    ChoiceList c;
    while (E.size() > 1) {
        // Equals the last element of star_sequence(view.vectors, c).
        const Gf2Vector u = find_halving_vector(E, oracle.max_sprime());
        const Sign s = oracle.product(c.size() + 1, k, c);
        if (s == Sign::zero) fail(oracle, "product query answered 0 on a nonvanishing support");
        const bool b = s == Sign::negative;
        E = filter_by(E, u, b);
        c.push_back(b);
        if (E.empty()) fail(oracle, "no compatible condition matches the choice list " + to_string(c));
    }
    return c;
}

std::size_t recover_rank(const ChoiceList& c, const TwoValuedView& view, std::size_t max_sprime) {
    const auto seq = star_sequence(view.vectors, c, max_sprime);
    std::optional<std::size_t> hit;
    for (std::size_t r = 0; r < view.vectors.size(); ++r) {
        bool ok = true;
        for (std::size_t i = 0; i < c.size() && ok; ++i) ok = inner_product(view.vectors[r], seq[i]) == c[i];
        if (!ok) continue;
        if (hit) throw InconsistencyError("choice list " + to_string(c) + " matches several conditions");
        hit = r;
    }
    if (!hit) throw InconsistencyError("choice list " + to_string(c) + " matches no condition");
    return view.ranks[*hit];
}

bool replay_acceptance(const AlgebraicCircuit& c, const TestedPolynomialList& tested, const SignConditionTable& table,
                       std::size_t rank) {
    const SignCondition& cond = table.at_rank(rank);
    auto rule = [&](GateId g, const Polynomial& entry) {
        const auto j = tested.index_of(entry);
        if (!j) throw InconsistencyError("gate g" + std::to_string(g) + " tests " + to_string(entry) +
                                         ", which is not in the tested list");
        return cond.at(*j) != Sign::positive;
    };
    const auto p = eval_symbolic(c, rule);
    return !p[c.output()]->is_zero();
}

TransferPlan prepare_transfer(const AlgebraicCircuit& c, const TransferOptions& opt) {
    TestedPolynomialList tested = enumerate_tested_polynomials(c, opt.enumeration);
    SignConditionTable table;
    if (c.nvars() == 1 && !opt.witnesses) {
        table = enumerate_sign_conditions(tested.polys, UnivariateComplete{});
    } else {
        if (!opt.witnesses)
            throw std::invalid_argument("circuits with " + std::to_string(c.nvars()) +
                                        " inputs need witness points for the sign-condition table");
        table = enumerate_sign_conditions(tested.polys, *opt.witnesses);
        if (!table.complete && !opt.allow_incomplete)
            throw IncompleteTableError("sign-condition table is not attested complete");
    }
    return {c, std::move(tested), std::move(table), opt.max_sprime};
}

TransferResult decide(const TransferPlan& plan, std::span<const Rational> x) {
    if (x.size() != plan.circuit.nvars())
        throw std::invalid_argument("circuit has " + std::to_string(plan.circuit.nvars()) + " inputs, got " +
                                    std::to_string(x.size()) + " values");
    TestOracle oracle(plan.table, std::vector<Rational>(x.begin(), x.end()), plan.max_sprime);
    TransferResult r;
    r.truncated_count = oracle.truncated_list().size();
    r.m = truncated_rank_search(oracle);
    r.compatible_count = oracle.view(r.m).vectors.size();
    r.c = full_condition_search(oracle, r.m);
    r.rank = recover_rank(r.c, oracle.view(r.m), plan.max_sprime);
    if (!plan.table.complete) {
        const SignCondition& claimed = plan.table.at_rank(r.rank);
        for (std::size_t j = 0; j < claimed.size(); ++j)
            if (oracle.coordinate(j) != claimed[j])
                throw IncompleteTableError("the input's sign condition is missing from the table");
    }
    r.decision = replay_acceptance(plan.circuit, plan.tested, plan.table, r.rank);
    r.direct_decision = eval_bss(plan.circuit, x);
    r.transcript = oracle.transcript();
    return r;
}

TransferResult transfer_decide(const AlgebraicCircuit& c, std::span<const Rational> x, const TransferOptions& opt) {
    return decide(prepare_transfer(c, opt), x);
}

std::size_t ceil_log2(std::size_t n) {
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    return k;
}

std::size_t query_bound(std::size_t truncated_count, std::size_t compatible_count) {
    return ceil_log2(truncated_count) + 3 * ceil_log2(compatible_count + 1) + 4;
}

} // namespace vps
