#include "vps/sign_engine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace vps {

std::string to_string(const SignCondition& s) {
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(to_int(s[k]));
    }
    return out;
}

std::string truncated_to_string(const TruncatedSignCondition& t) {
    std::string out;
    for (bool b : t) out += b ? '1' : '0';
    return out;
}

std::string to_string(const Witness& w) {
    if (const auto* a = std::get_if<RealAlgebraic>(&w)) return to_string(*a);
    const auto& p = std::get<std::vector<Rational>>(w);
    std::string out;
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (k) out += ',';
        out += to_string(p[k]);
    }
    return out;
}

const SignCondition& SignConditionTable::at_rank(std::size_t rank) const {
    if (rank < 1 || rank > conditions.size())
        throw std::out_of_range("rank " + std::to_string(rank) + " outside 1.." + std::to_string(conditions.size()));
    return conditions[rank - 1];
}

std::optional<std::size_t> SignConditionTable::rank_of(const SignCondition& s) const {
    auto it = std::lower_bound(conditions.begin(), conditions.end(), s);
    if (it == conditions.end() || *it != s) return std::nullopt;
    return static_cast<std::size_t>(it - conditions.begin()) + 1;
}

std::size_t SignConditionTable::coefficient_bits() const {
    std::size_t L = 0;
    for (const auto& f : system) L = std::max(L, f.max_coefficient_size());
    return L;
}

SignCondition sign_condition_of_point(std::span<const Polynomial> system, std::span<const Rational> x) {
    SignCondition s;
    s.reserve(system.size());
    for (const auto& f : system) {
        if (f.nvars() != x.size())
            throw std::invalid_argument("point has " + std::to_string(x.size()) + " coordinates, system has " +
                                        std::to_string(f.nvars()) + " variables");
        s.push_back(f.sign_at(x));
    }
    return s;
}

SignCondition sign_condition_of_witness(std::span<const Polynomial> system, const Witness& w) {
    if (const auto* p = std::get_if<std::vector<Rational>>(&w)) return sign_condition_of_point(system, *p);
    const auto& a = std::get<RealAlgebraic>(w);
    SignCondition s;
    for (const auto& f : system) s.push_back(sign_at(UPoly::from_polynomial(f), a));
    return s;
}

namespace {

void check_system(const std::vector<Polynomial>& system) {
    if (system.empty()) throw std::invalid_argument("empty polynomial system");
    for (const auto& f : system)
        if (f.nvars() != system.front().nvars())
            throw std::invalid_argument("system polynomials have different variable counts");
}

void finish(SignConditionTable& t, std::map<SignCondition, Witness>& found) {
    for (auto& [cond, w] : found) {
        t.conditions.push_back(cond);
        t.witnesses.push_back(std::move(w));
    }
}

SignConditionTable univariate_complete(std::vector<Polynomial> system) {
    for (const auto& f : system)
        if (f.nvars() != 1)
            throw std::invalid_argument("univariate-complete backend needs 1 variable, system has " +
                                        std::to_string(f.nvars()));
    std::vector<UPoly> us;
    for (const auto& f : system) us.push_back(UPoly::from_polynomial(f));

    // Squarefree product of all nonconstant members without repeated factors.
    UPoly g({Integer(1)});
    for (const auto& u : us) {
        if (u.degree() < 1) continue;
        const UPoly s = squarefree_part(u);
        const UPoly common = gcd(g, s);
        if (common.degree() < 1) {
            g = (g * s).primitive();
        } else {
            // g * s / common, via the squarefree part of the product.
            g = squarefree_part(g * s);
        }
    }

    SignConditionTable t;
    t.system = std::move(system);
    t.complete = true;
    std::map<SignCondition, Witness> found;
    auto visit = [&](Witness w) {
        SignCondition s;
        if (const auto* a = std::get_if<RealAlgebraic>(&w)) {
            for (const auto& u : us) s.push_back(sign_at(u, *a));
        } else {
            const Rational& x = std::get<std::vector<Rational>>(w)[0];
            for (const auto& u : us) s.push_back(u.sign_at(x));
        }
        found.try_emplace(std::move(s), std::move(w));
    };
    auto point = [](const Rational& x) { return Witness(std::vector<Rational>{x}); };

    if (g.degree() < 1) {
        visit(point(0));
        finish(t, found);
        return t;
    }
    const auto roots = isolate_real_roots(g);
    if (roots.empty()) {
        visit(point(0));
        finish(t, found);
        return t;
    }
    const Rational B = cauchy_bound(g);
    visit(point(-(B + 1)));
    for (std::size_t k = 0; k < roots.size(); ++k) {
        if (k > 0) visit(point((roots[k - 1].hi + roots[k].lo) / 2));
        if (roots[k].exact()) visit(point(roots[k].lo));
        else visit(RealAlgebraic{g, roots[k]});
    }
    visit(point(B + 1));
    finish(t, found);
    return t;
}

SignConditionTable witness_set(std::vector<Polynomial> system, const WitnessSet& ws) {
    SignConditionTable t;
    t.system = std::move(system);
    t.complete = ws.attested_complete;
    std::map<SignCondition, Witness> found;
    for (const auto& p : ws.points) {
        if (p.size() != t.system.front().nvars())
            throw std::invalid_argument("witness point has " + std::to_string(p.size()) +
                                        " coordinates, system has " + std::to_string(t.system.front().nvars()) +
                                        " variables");
        found.try_emplace(sign_condition_of_point(t.system, p), p);
    }
    finish(t, found);
    return t;
}

} // namespace

SignConditionTable enumerate_sign_conditions(std::vector<Polynomial> system, const Backend& backend) {
    check_system(system);
    if (std::holds_alternative<UnivariateComplete>(backend)) return univariate_complete(std::move(system));
    return witness_set(std::move(system), std::get<WitnessSet>(backend));
}

TruncatedSignCondition truncate(const SignCondition& s) {
    TruncatedSignCondition t(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) t[k] = s[k] != Sign::zero;
    return t;
}

std::vector<TruncatedSignCondition> truncated_table(const SignConditionTable& t) {
    std::vector<TruncatedSignCondition> out;
    for (const auto& s : t.conditions) out.push_back(truncate(s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TwoValuedView compatible_view(const SignConditionTable& t, const TruncatedSignCondition& T) {
    TwoValuedView v;
    v.base = T;
    for (std::size_t k = 0; k < T.size(); ++k)
        if (T[k]) v.index_map.push_back(k);
    for (std::size_t r = 0; r < t.conditions.size(); ++r) {
        const auto& s = t.conditions[r];
        if (s.size() != T.size())
            throw std::invalid_argument("truncated condition length does not match the system");
        if (truncate(s) != T) continue;
        Gf2Vector bits(v.index_map.size());
        for (std::size_t j = 0; j < v.index_map.size(); ++j) bits.set(j, s[v.index_map[j]] == Sign::negative);
        v.vectors.push_back(bits);
        v.ranks.push_back(r + 1);
    }
    if (v.vectors.empty())
        throw std::invalid_argument("truncated condition " + truncated_to_string(T) + " is not realized by the table");
    return v;
}

} // namespace vps
