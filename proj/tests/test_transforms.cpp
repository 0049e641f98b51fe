#include <doctest.h>

#include <set>
#include <sstream>

#include "generators.hpp"
#include "vps/errors.hpp"
#include "vps/transforms.hpp"

using namespace vps;

namespace {

std::vector<Rational> at(std::initializer_list<Rational> v) { return v; }

CoefficientFunction linear(bool negative, std::size_t magnitude) {
    CoefficientFunction f;
    f.degree_bound = 1;
    f.coeff_bit_bound = 2;
    f.bit = [=](const Monomial& m, std::size_t i) {
        if (m != Monomial{1}) return false;
        if (i == 0) return negative;
        return ((magnitude >> (i - 1)) & 1U) != 0;
    };
    return f;
}

BooleanCircuit never(std::size_t p) {
    std::vector<BoolGate> g;
    for (std::size_t v = 0; v < p; ++v) g.push_back({BoolKind::input, 0, 0, v});
    g.push_back({BoolKind::op_not, 0, 0, 0});
    g.push_back({BoolKind::op_and, 0, static_cast<GateId>(p), 0});
    return BooleanCircuit(p, std::move(g), static_cast<GateId>(p + 1));
}

} // namespace

TEST_CASE("build_from_coefficients examples") {
    const auto three_x = build_from_coefficients(linear(false, 3), 1);
    CHECK(eval_circuit(three_x, at({2})) == 6);
    CHECK(three_x.constant_free());

    CoefficientFunction none;
    none.bit = [](const Monomial&, std::size_t) { return false; };
    none.degree_bound = 3;
    none.coeff_bit_bound = 4;
    const auto zero = build_from_coefficients(none, 2);
    CHECK(expand(zero).is_zero());

    const auto minus_x = build_from_coefficients(linear(true, 1), 1);
    CHECK(eval_circuit(minus_x, at({1})) == -1);
}

TEST_CASE("coefficient_function_of encodes sign and magnitude") {
    const auto f = coefficient_function_of(parse_polynomial("-6*x1^2 + 5"));
    CHECK(f.degree_bound == 2);
    CHECK(f.bit(Monomial{2}, 0));
    CHECK_FALSE(f.bit(Monomial{2}, 1));
    CHECK(f.bit(Monomial{2}, 2));
    CHECK(f.bit(Monomial{2}, 3));
    CHECK_FALSE(f.bit(Monomial{0}, 0));
    CHECK(f.bit(Monomial{0}, 1));
    CHECK_FALSE(f.bit(Monomial{1}, 1));
}

TEST_CASE("monomials_up_to lists every monomial once") {
    const auto ms = monomials_up_to(2, 2);
    CHECK(ms.size() == 6);
    CHECK(std::set<Monomial>(ms.begin(), ms.end()).size() == 6);
}

TEST_CASE("big_combine examples") {
    // g(x, e) = x * e
    CircuitBuilder b(2);
    const auto g = std::move(b).finish_arithmetic(b.mul(b.shared_input(0), b.shared_input(1)));
    const auto s = big_combine(g, 1, CombineMode::sum);
    CHECK(expand(s) == parse_polynomial("x1", 1));

    const auto empty = big_combine(g, 1, CombineMode::product, nullptr);
    CHECK(expand(empty).is_zero());  // g(x,0) * g(x,1) = 0 * x

    const BooleanCircuit no = never(1);
    const auto unit = big_combine(g, 1, CombineMode::product, &no);
    CHECK(expand(unit) == Polynomial::constant(1, 1));
    const auto nothing = big_combine(g, 1, CombineMode::sum, &no);
    CHECK(expand(nothing).is_zero());
}

TEST_CASE("big_combine respects membership") {
    // g(x, e1, e2) = x + e1 + 2 e2, summed over e with e1 = 1.
    CircuitBuilder b(3);
    const GateId e2 = b.shared_input(2);
    const auto g = std::move(b).finish_arithmetic(b.add(b.add(b.shared_input(0), b.shared_input(1)), b.add(e2, e2)));
    std::vector<BoolGate> m{{BoolKind::input, 0, 0, 0}, {BoolKind::input, 0, 0, 1}};
    const BooleanCircuit first(2, m, 0);
    CHECK(expand(big_combine(g, 2, CombineMode::sum, &first)) == parse_polynomial("2*x1 + 4", 1));
    CHECK(expand(big_combine(g, 2, CombineMode::sum)) == parse_polynomial("4*x1 + 6", 1));
}

TEST_CASE("big_combine instance cap") {
    CircuitBuilder b(13);
    const auto g = std::move(b).finish_arithmetic(b.shared_input(0));
    CHECK_THROWS_AS(big_combine(g, 12, CombineMode::sum, nullptr, 1024), CapExceeded);
}

TEST_CASE("homogeneous_split_mod2 examples") {
    CircuitBuilder b(1);
    const GateId one = b.one();
    const auto c = std::move(b).finish_arithmetic(b.add(b.add(one, one), b.shared_input(0)));
    const auto q = homogeneous_split_mod2(c, 1);
    CHECK(eval_circuit(q, std::vector<Integer>{Integer(1)}, Integer(2)) == 1);
    CHECK(eval_circuit(q, std::vector<Integer>{Integer(0)}, Integer(2)) == 0);
    CHECK(formal_degree(q) <= 1);

    CircuitBuilder b4(2);
    const GateId two = b4.add(b4.one(), b4.one());
    const GateId four = b4.add(two, two);
    const auto c4 = std::move(b4).finish_arithmetic(b4.mul(four, b4.mul(b4.shared_input(0), b4.shared_input(1))));
    const auto q4 = homogeneous_split_mod2(c4, 2);
    for (int a = 0; a < 2; ++a)
        for (int d = 0; d < 2; ++d) CHECK(eval_circuit(q4, std::vector<Integer>{Integer(a), Integer(d)}, Integer(2)) == 0);
}

TEST_CASE("homogeneous_split_mod2 keeps a multilinear circuit") {
    CircuitBuilder b(3);
    const auto c = std::move(b).finish_arithmetic(
        b.sub(b.mul(b.shared_input(0), b.shared_input(1)), b.add(b.shared_input(2), b.one())));
    const auto q = homogeneous_split_mod2(c, 2);
    for (unsigned mask = 0; mask < 8; ++mask) {
        std::vector<Integer> x{Integer(mask & 1), Integer((mask >> 1) & 1), Integer((mask >> 2) & 1)};
        CHECK(eval_circuit(q, x, Integer(2)) == eval_circuit(c, x, Integer(2)));
    }
}

TEST_CASE("property: coefficient synthesis reproduces the circuit") {
    gen::Rng rng(301);
    for (int k = 0; k < 60; ++k) {
        const auto c = gen::arithmetic_circuit(rng, 2, static_cast<std::size_t>(gen::uniform(rng, 3, 12)));
        const Polynomial p = expand(c, 1000000);
        const auto rebuilt = build_from_coefficients(coefficient_function_of(p), 2);
        CHECK(rebuilt.constant_free());
        for (int t = 0; t < 20; ++t) {
            const auto x = gen::point(rng, 2);
            CHECK(eval_circuit(rebuilt, x) == eval_circuit(c, x));
        }
    }
}

TEST_CASE("property: big sums equal the explicit instantiations") {
    gen::Rng rng(302);
    for (int k = 0; k < 60; ++k) {
        const std::size_t p = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        const auto g = gen::arithmetic_circuit(rng, 1 + p, static_cast<std::size_t>(gen::uniform(rng, 4, 12)));
        const Polynomial gp = expand(g, 1000000);
        Polynomial sum(1), prod = Polynomial::constant(1, 1);
        for (unsigned mask = 0; mask < (1U << p); ++mask) {
            Polynomial inst(1);
            for (const auto& [m, coef] : gp.terms()) {
                bool alive = true;
                for (std::size_t j = 0; j < p; ++j)
                    if (m[1 + j] && !((mask >> j) & 1U)) alive = false;
                if (alive) inst.add_term(Monomial{m[0]}, coef);
            }
            sum += inst;
            prod *= inst;
        }
        CHECK(expand(big_combine(g, p, CombineMode::sum), 1000000) == sum);
        CHECK(expand(big_combine(g, p, CombineMode::product), 1000000) == prod);
    }
}

TEST_CASE("property: the mod-2 split agrees on boolean inputs") {
    gen::Rng rng(303);
    for (int k = 0; k < 100; ++k) {
        const std::size_t nin = static_cast<std::size_t>(gen::uniform(rng, 1, 10));
        auto c = gen::arithmetic_circuit(rng, nin, static_cast<std::size_t>(gen::uniform(rng, nin + 2, nin + 12)));
        const std::uint64_t dmax = formal_degree(c);
        const auto q = homogeneous_split_mod2(c, dmax);
        CHECK(formal_degree(q) <= dmax);
        for (std::uint32_t mask = 0; mask < (1U << nin); ++mask) {
            std::vector<Integer> x;
            for (std::size_t v = 0; v < nin; ++v) x.emplace_back((mask >> v) & 1U);
            CHECK(eval_circuit(q, x, Integer(2)) == eval_circuit(c, x, Integer(2)));
        }
    }
}
