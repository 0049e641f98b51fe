#include <doctest.h>

#include <set>

#include "generators.hpp"
#include "oracles.hpp"
#include "vps/sign_engine.hpp"
#include "vps/univariate.hpp"

using namespace vps;

namespace {

std::vector<Polynomial> sys(std::initializer_list<const char*> ps) {
    std::vector<Polynomial> out;
    for (const char* p : ps) out.push_back(parse_polynomial(p, 1));
    return out;
}

SignCondition sc(std::initializer_list<int> v) {
    SignCondition s;
    for (int k : v) s.push_back(static_cast<Sign>(k));
    return s;
}

Gf2Vector bits(const char* s) { return Gf2Vector::from_string(s); }

std::vector<Rational> at(std::initializer_list<Rational> v) { return v; }

} // namespace

TEST_CASE("sign_condition_of_point examples") {
    CHECK(sign_condition_of_point(sys({"x1", "x1 - 1"}), at({2})) == sc({1, 1}));
    CHECK(sign_condition_of_point(sys({"x1"}), at({0})) == sc({0}));
    CHECK(sign_condition_of_point(sys({"x1", "x1^2 + 1"}), at({-3})) == sc({-1, 1}));
    CHECK(to_string(sc({1, -1, 0})) == "1,-1,0");
}

TEST_CASE("isolate_real_roots examples") {
    const auto two = isolate_real_roots(parse_polynomial("x1^2 - 2"));
    REQUIRE(two.size() == 2);
    CHECK(two[0].lo >= -2);
    CHECK(two[0].hi < 0);
    CHECK(two[1].lo > 0);
    CHECK(two[1].hi <= 2);
    for (const auto& r : two) CHECK((r.lo * r.lo < 2) != (r.hi * r.hi < 2));

    CHECK(isolate_real_roots(parse_polynomial("x1^2 + 1")).empty());

    const auto zero = isolate_real_roots(parse_polynomial("x1"));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].exact());
    CHECK(zero[0].lo == 0);

    const auto rational = isolate_real_roots(parse_polynomial("6*x1^2 - x1 - 1"));  // roots -1/3, 1/2
    REQUIRE(rational.size() == 2);
    CHECK(rational[0].exact());
    CHECK(rational[0].lo == Rational(-1, 3));
    CHECK(rational[1].lo == Rational(1, 2));

    CHECK_THROWS(isolate_real_roots(Polynomial(1)));
}

TEST_CASE("univariate helpers") {
    const UPoly p = UPoly::from_polynomial(parse_polynomial("x1^3 - 3*x1^2 + 3*x1 - 1"));  // (x-1)^3
    CHECK(squarefree_part(p) == UPoly::from_polynomial(parse_polynomial("x1 - 1")));
    const UPoly a = UPoly::from_polynomial(parse_polynomial("x1^2 - 1"));
    const UPoly b = UPoly::from_polynomial(parse_polynomial("2*x1^2 + 2*x1"));
    CHECK(gcd(a, b) == UPoly::from_polynomial(parse_polynomial("x1 + 1")));
    const SturmSequence s(UPoly::from_polynomial(parse_polynomial("x1^3 - x1")));
    CHECK(s.count_roots(Rational(-2), Rational(2)) == 3);
    CHECK(s.count_roots(Rational(1, 2), Rational(2)) == 1);
    CHECK(cauchy_bound(UPoly::from_polynomial(parse_polynomial("2*x1^2 - 6"))) == 4);
}

TEST_CASE("real algebraic signs") {
    const auto roots = isolate_real_roots(parse_polynomial("x1^2 - 2"));
    const UPoly def = UPoly::from_polynomial(parse_polynomial("x1^2 - 2"));
    const RealAlgebraic neg{def, roots[0]}, pos{def, roots[1]};
    CHECK(sign_at(UPoly::from_polynomial(parse_polynomial("x1^4 - 4")), pos) == Sign::zero);
    CHECK(sign_at(UPoly::from_polynomial(parse_polynomial("x1")), neg) == Sign::negative);
    CHECK(sign_at(UPoly::from_polynomial(parse_polynomial("10*x1 - 14")), pos) == Sign::positive);
    CHECK(sign_at(UPoly::from_polynomial(parse_polynomial("100*x1 - 142")), pos) == Sign::negative);
    RealAlgebraic r = pos;
    for (int k = 0; k < 10; ++k) refine(r);
    CHECK(r.where.hi - r.where.lo < Rational(1, 100));
}

TEST_CASE("enumerate_sign_conditions examples") {
    const auto one = enumerate_sign_conditions(sys({"x1"}));
    CHECK(one.conditions == std::vector<SignCondition>{sc({-1}), sc({0}), sc({1})});
    CHECK(one.complete);

    const auto two = enumerate_sign_conditions(sys({"x1", "x1 - 1"}));
    CHECK(two.conditions ==
          std::vector<SignCondition>{sc({-1, -1}), sc({0, -1}), sc({1, -1}), sc({1, 0}), sc({1, 1})});
    CHECK(two.size() == 5);
    CHECK(to_string(two.witnesses[1]) == "0");
    CHECK(to_string(two.witnesses[2]) == "1/2");

    const auto pos = enumerate_sign_conditions(sys({"x1", "x1^2 + 1"}));
    CHECK(pos.size() == 3);
    for (const auto& c : pos.conditions) CHECK(c[1] == Sign::positive);
}

TEST_CASE("irrational roots get algebraic witnesses") {
    const auto t = enumerate_sign_conditions(sys({"x1^2 - 2"}));
    REQUIRE(t.size() == 3);
    CHECK(t.conditions[1] == sc({0}));
    CHECK(std::holds_alternative<RealAlgebraic>(t.witnesses[1]));
    CHECK(sign_condition_of_witness(t.system, t.witnesses[1]) == sc({0}));
    CHECK(to_string(t.witnesses[1]).rfind("root of x1^2 - 2 in (", 0) == 0);
}

TEST_CASE("rank lookup") {
    const auto t = enumerate_sign_conditions(sys({"x1", "x1 - 1"}));
    CHECK(t.at_rank(1) == sc({-1, -1}));
    CHECK(t.at_rank(5) == sc({1, 1}));
    CHECK(t.rank_of(sc({1, 0})) == 4u);
    CHECK_FALSE(t.rank_of(sc({-1, 1})).has_value());
    CHECK_THROWS(t.at_rank(0));
    CHECK_THROWS(t.at_rank(6));
}

TEST_CASE("truncated_table examples") {
    const auto t = enumerate_sign_conditions(sys({"x1", "x1 - 1"}));
    const auto tt = truncated_table(t);
    REQUIRE(tt.size() == 3);
    CHECK(truncated_to_string(tt[0]) == "01");
    CHECK(truncated_to_string(tt[1]) == "10");
    CHECK(truncated_to_string(tt[2]) == "11");

    const auto single = enumerate_sign_conditions(sys({"x1^2 + 1", "3"}));
    REQUIRE(truncated_table(single).size() == 1);
    CHECK(truncated_to_string(truncated_table(single)[0]) == "11");
}

TEST_CASE("compatible_view examples") {
    const auto t = enumerate_sign_conditions(sys({"x1", "x1 - 1"}));
    const auto v = compatible_view(t, {true, true});
    REQUIRE(v.vectors.size() == 3);
    CHECK(v.vectors[0] == bits("11"));
    CHECK(v.vectors[1] == bits("01"));
    CHECK(v.vectors[2] == bits("00"));
    CHECK(v.ranks == std::vector<std::size_t>{1, 3, 5});
    CHECK(v.index_map == std::vector<std::size_t>{0, 1});

    const auto w = compatible_view(t, {false, true});
    REQUIRE(w.vectors.size() == 1);
    CHECK(w.vectors[0] == bits("1"));
    CHECK(w.ranks == std::vector<std::size_t>{2});

    const auto z = enumerate_sign_conditions(sys({"x1^2"}));
    const auto zv = compatible_view(z, {false});
    REQUIRE(zv.vectors.size() == 1);
    CHECK(zv.vectors[0].size() == 0);

    CHECK_THROWS_AS(compatible_view(t, {false, false}), std::invalid_argument);
}

TEST_CASE("witness-set backend") {
    std::vector<Polynomial> s{parse_polynomial("x1*x2", 2), parse_polynomial("x1 - x2", 2)};
    WitnessSet w{{at({1, 1}), at({1, 2}), at({-1, 2}), at({0, 0}), at({1, 2})}, false};
    const auto t = enumerate_sign_conditions(s, w);
    CHECK_FALSE(t.complete);
    CHECK(t.size() == 4);
    for (std::size_t r = 0; r < t.size(); ++r)
        CHECK(sign_condition_of_witness(t.system, t.witnesses[r]) == t.conditions[r]);
    w.attested_complete = true;
    CHECK(enumerate_sign_conditions(s, w).complete);
    CHECK_THROWS_AS(enumerate_sign_conditions(s), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sign_conditions(s, WitnessSet{{at({1})}, false}), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_sign_conditions({}), std::invalid_argument);
}

TEST_CASE("property: complete enumeration matches sampling plus roots") {
    gen::Rng rng(501);
    for (int k = 0; k < 100; ++k) {
        const long s = gen::uniform(rng, 1, 5);
        std::vector<Polynomial> system;
        std::vector<oracle::QPoly> qsys;
        for (long i = 0; i < s; ++i) {
            system.push_back(gen::univariate(rng, 6, 100));
            oracle::QPoly q(system.back().is_zero() ? 0 : system.back().degree() + 1, oracle::Q(0));
            for (const auto& [m, c] : system.back().terms()) q[m[0]] = c;
            qsys.push_back(q);
        }
        const auto t = enumerate_sign_conditions(system);
        std::set<std::vector<int>> got;
        for (std::size_t r = 0; r < t.size(); ++r) {
            std::vector<int> row;
            for (Sign v : t.conditions[r]) row.push_back(to_int(v));
            got.insert(row);
            CHECK(sign_condition_of_witness(t.system, t.witnesses[r]) == t.conditions[r]);
            CHECK(t.rank_of(t.conditions[r]) == r + 1);
            CHECK(t.at_rank(r + 1) == t.conditions[r]);
            if (r > 0) CHECK(t.conditions[r - 1] < t.conditions[r]);
        }
        const auto want = oracle::sign_conditions(qsys);
        CHECK(got == want.conditions);
        CHECK(t.size() <= 2 * want.distinct_roots + 1);
    }
}

TEST_CASE("property: random points land on table rows") {
    gen::Rng rng(502);
    for (int k = 0; k < 100; ++k) {
        std::vector<Polynomial> system{gen::univariate(rng, 4, 30), gen::univariate(rng, 4, 30)};
        const auto t = enumerate_sign_conditions(system);
        for (int j = 0; j < 10; ++j) {
            const auto x = gen::point(rng, 1);
            CHECK(t.rank_of(sign_condition_of_point(system, x)).has_value());
        }
    }
}

TEST_CASE("property: truncation order and views") {
    gen::Rng rng(503);
    for (int k = 0; k < 100; ++k) {
        std::vector<Polynomial> system;
        for (long i = gen::uniform(rng, 1, 4); i > 0; --i) system.push_back(gen::univariate(rng, 4, 30));
        const auto t = enumerate_sign_conditions(system);
        const auto tt = truncated_table(t);
        for (std::size_t a = 0; a < tt.size(); ++a)
            for (std::size_t b = 0; b < tt.size(); ++b) {
                bool subset = a != b;
                for (std::size_t j = 0; j < tt[a].size(); ++j)
                    if (tt[a][j] && !tt[b][j]) subset = false;
                if (subset) CHECK(a < b);
            }
        std::size_t covered = 0;
        for (const auto& T : tt) {
            const auto v = compatible_view(t, T);
            CHECK(std::set<Gf2Vector>(v.vectors.begin(), v.vectors.end()).size() == v.vectors.size());
            for (std::size_t i = 0; i < v.vectors.size(); ++i) {
                const auto& full = t.at_rank(v.ranks[i]);
                CHECK(truncate(full) == T);
                for (std::size_t j = 0; j < v.index_map.size(); ++j)
                    CHECK(v.vectors[i].get(j) == (full[v.index_map[j]] == Sign::negative));
            }
            covered += v.vectors.size();
        }
        CHECK(covered == t.size());
    }
}
