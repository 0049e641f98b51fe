#include <doctest.h>

#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "vps/errors.hpp"
#include "vps/macaulay.hpp"

using namespace vps;

namespace {

HomogeneousSystem sys_of(std::size_t n, std::uint64_t delta, std::initializer_list<const char*> polys) {
    HomogeneousSystem s{n, delta, {}};
    for (const char* p : polys) s.polys.push_back(parse_polynomial(p, n + 1));
    return s;
}

std::vector<std::vector<oracle::Z>> rows_of(const IntegerMatrix& m) {
    std::vector<std::vector<oracle::Z>> out(m.rows(), std::vector<oracle::Z>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m(r, c);
    return out;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Polynomial random_form(gen::Rng& rng, std::size_t n, std::uint64_t delta, long bound) {
    Polynomial f(n + 1);
    for (const auto& m : monomials_of_degree(n, delta)) f.add_term(m, gen::uniform(rng, -bound, bound));
    return f;
}

} // namespace

TEST_CASE("monomials_of_degree examples") {
    const auto two = monomials_of_degree(1, 2);
    REQUIRE(two.size() == 3);
    CHECK(two[0] == Monomial{2, 0});
    CHECK(two[1] == Monomial{1, 1});
    CHECK(two[2] == Monomial{0, 2});
    const auto one = monomials_of_degree(1, 1);
    REQUIRE(one.size() == 2);
    CHECK(one[0] == Monomial{1, 0});
    CHECK(one[1] == Monomial{0, 1});
    CHECK(monomials_of_degree(2, 1).size() == 3);
}

TEST_CASE("build_macaulay on a linear pair is the coefficient matrix") {
    const auto m = build_macaulay(sys_of(1, 1, {"3*x1 + 5*x2", "7*x1 - 2*x2"}));
    CHECK(m.degree == 1);
    CHECK(m.side() == 2);
    CHECK(m.entries == IntegerMatrix{{3, 5}, {7, -2}});
    CHECK(m.provenance[0].form == 0);
    CHECK(m.provenance[1].form == 1);
}

TEST_CASE("build_macaulay on two quadratics is a Sylvester matrix") {
    const auto s = sys_of(1, 2, {"2*x1^2 - x1*x2 + 3*x2^2", "x1^2 + 4*x1*x2 - 5*x2^2"});
    const auto m = build_macaulay(s);
    CHECK(m.degree == 3);
    CHECK(m.side() == 4);
    const Integer syl = oracle::sylvester_quadratics(2, -1, 3, 1, 4, -5);
    const Integer d = det_exact(m.entries);
    CHECK((d == syl || d == -syl));
    CHECK(d != 0);
}

TEST_CASE("pure powers give a 0/1 matrix with one 1 per row") {
    const auto m = build_macaulay(sys_of(2, 2, {"x1^2", "x2^2", "x3^2"}));
    for (std::size_t r = 0; r < m.side(); ++r) {
        int ones = 0;
        for (std::size_t c = 0; c < m.side(); ++c) {
            CHECK((m.entries(r, c) == 0 || m.entries(r, c) == 1));
            ones += m.entries(r, c) == 1;
        }
        CHECK(ones == 1);
    }
    CHECK(det_exact(m.entries) == 1);
}

TEST_CASE("reduced_submatrix examples") {
    const auto lin = build_macaulay(sys_of(1, 1, {"x1 - x2", "2*x1 - 2*x2"}));
    const auto lp = reduced_submatrix(lin);
    CHECK(lp.empty());
    CHECK(det_exact(lp) == 1);

    const auto quad = build_macaulay(sys_of(1, 2, {"x1^2", "x2^2"}));
    CHECK(reduced_submatrix(quad).empty());

    CHECK_FALSE(is_reduced(Monomial{2, 2}, 2));
    CHECK(is_reduced(Monomial{2, 1}, 2));
    CHECK_FALSE(is_reduced(Monomial{1, 1, 1}, 2));

    // n = 2, delta = 2: x^2 y^2, x^2 z^2 and y^2 z^2 are the non-reduced monomials.
    const auto three = build_macaulay(sys_of(2, 2, {"x1^2", "x2^2", "x3^2"}));
    CHECK(reduced_submatrix(three).rows() == 3);
    CHECK(reduced_submatrix(three).cols() == 3);
}

TEST_CASE("det_exact examples") {
    CHECK(det_exact(IntegerMatrix{{1, 2}, {3, 4}}) == -2);
    CHECK(det_exact(IntegerMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 1);
    CHECK(det_exact(IntegerMatrix{{1, 2, 3}, {4, 5, 6}, {1, 2, 3}}) == 0);
    CHECK(det_exact(IntegerMatrix{{0, 1}, {1, 0}}) == -1);
    CHECK(det_exact(IntegerMatrix()) == 1);
    CHECK_THROWS(det_exact(IntegerMatrix(2, 3)));
}

TEST_CASE("resultant_vanishing examples") {
    const auto common = resultant_vanishing(sys_of(1, 1, {"x1 - x2", "2*x1 - 2*x2"}));
    CHECK(common.det_m == 0);
    CHECK(common.det_m_prime == 1);
    CHECK(common.verdict == Verdict::zero);

    const auto coords = resultant_vanishing(sys_of(1, 1, {"x1", "x2"}));
    CHECK(coords.det_m == 1);
    CHECK(coords.verdict == Verdict::nonzero);

    const auto generic = resultant_vanishing(sys_of(1, 1, {"4*x1 + 9*x2", "-2*x1 + 5*x2"}));
    CHECK(generic.det_m == 4 * 5 - 9 * (-2));

    const auto degenerate = resultant_vanishing(sys_of(2, 2, {"x1^2", "x1^2", "x1^2"}));
    CHECK(degenerate.det_m == 0);
    CHECK(degenerate.det_m_prime == 0);
    CHECK(degenerate.verdict == Verdict::indeterminate);
    CHECK(to_string(Verdict::indeterminate) == "indeterminate");
}

TEST_CASE("system files") {
    const auto s = load_homogeneous_system(std::string(VPS_DEMO_DIR) + "/quadratics.sys");
    CHECK(s.n == 1);
    CHECK(s.delta == 2);
    CHECK(s.polys.size() == 2);
    CHECK(det_exact(build_macaulay(s).entries) == 24);

    std::istringstream bad("n 1 delta 2\nx1^2 + x2\nx2^2\n");
    CHECK_THROWS(read_homogeneous_system(bad));
    std::istringstream short_("n 2 delta 1\nx1\nx2\n");
    CHECK_THROWS(read_homogeneous_system(short_));
}

TEST_CASE("property: matrix side is C(d+n, d)") {
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::uint64_t delta = 1; delta <= 3; ++delta) {
            HomogeneousSystem s{n, delta, {}};
            for (std::size_t i = 0; i <= n; ++i) {
                Monomial m(n + 1);
                m[i] = static_cast<std::uint32_t>(delta);
                s.polys.push_back(Polynomial::term(m, 1));
            }
            const auto m = build_macaulay(s);
            CHECK(m.degree == 1 + (n + 1) * (delta - 1));
            CHECK(Integer(m.side()) == binomial(static_cast<unsigned>(m.degree + n), static_cast<unsigned>(n)));
            CHECK(m.entries.rows() == m.entries.cols());
        }
}

TEST_CASE("property: determinants agree with cofactor expansion") {
    gen::Rng rng(401);
    for (int k = 0; k < 100; ++k) {
        const std::size_t sz = static_cast<std::size_t>(gen::uniform(rng, 1, 6));
        IntegerMatrix m(sz, sz);
        for (std::size_t r = 0; r < sz; ++r)
            for (std::size_t c = 0; c < sz; ++c) m(r, c) = gen::uniform(rng, -9, 9);
        CHECK(det_exact(m) == oracle::cofactor_det(rows_of(m)));
    }
}

TEST_CASE("property: linear systems match the coefficient determinant") {
    gen::Rng rng(402);
    for (int k = 0; k < 100; ++k) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
        HomogeneousSystem s{n, 1, {}};
        std::vector<std::vector<oracle::Z>> a;
        for (std::size_t i = 0; i <= n; ++i) {
            s.polys.push_back(random_form(rng, n, 1, 9));
            std::vector<oracle::Z> row;
            for (std::size_t j = 0; j <= n; ++j) {
                Monomial e(n + 1);
                e[j] = 1;
                row.push_back(s.polys.back().coefficient(e));
            }
            a.push_back(row);
        }
        CHECK(det_exact(build_macaulay(s).entries) == oracle::leibniz_det(a));
    }
}

TEST_CASE("property: quadratic pairs match the Sylvester resultant up to sign") {
    gen::Rng rng(403);
    for (int k = 0; k < 100; ++k) {
        HomogeneousSystem s{1, 2, {random_form(rng, 1, 2, 20), random_form(rng, 1, 2, 20)}};
        auto co = [&](int i, std::uint32_t a) { return s.polys[i].coefficient(Monomial{a, 2 - a}); };
        const Integer syl = oracle::sylvester_quadratics(co(0, 2), co(0, 1), co(0, 0), co(1, 2), co(1, 1), co(1, 0));
        const Integer d = det_exact(build_macaulay(s).entries);
        CHECK((d == syl || d == -syl));
    }
}

TEST_CASE("property: a planted common root forces det M = 0") {
    gen::Rng rng(404);
    for (int k = 0; k < 60; ++k) {
        const std::size_t n = static_cast<std::size_t>(gen::uniform(rng, 1, 2));
        const std::uint64_t delta = static_cast<std::uint64_t>(gen::uniform(rng, 1, 3));
        std::vector<Rational> root{Rational(1)};
        for (std::size_t j = 0; j < n; ++j) root.emplace_back(gen::uniform(rng, -3, 3));
        HomogeneousSystem s{n, delta, {}};
        Monomial lead(n + 1);
        lead[0] = static_cast<std::uint32_t>(delta);
        for (std::size_t i = 0; i <= n; ++i) {
            Polynomial h = random_form(rng, n, delta, 9);
            h -= Polynomial::term(lead, h.evaluate(root).get_num());
            s.polys.push_back(h);
        }
        const auto r = resultant_vanishing(s);
        CHECK(r.det_m == 0);
        CHECK(r.verdict != Verdict::nonzero);
    }
}
