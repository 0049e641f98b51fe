#include "vps/macaulay.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

Integer det_exact(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = std::move(t);
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

void HomogeneousSystem::validate() const {
    if (delta < 1) throw std::invalid_argument("delta must be at least 1");
    if (polys.size() != n + 1)
        throw std::invalid_argument("expected " + std::to_string(n + 1) + " forms, got " +
                                    std::to_string(polys.size()));
    for (std::size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].nvars() != n + 1)
            throw std::invalid_argument("form " + std::to_string(i + 1) + " is not in " +
                                        std::to_string(n + 1) + " variables");
        if (!polys[i].is_homogeneous(delta))
            throw std::invalid_argument("form " + std::to_string(i + 1) +
                                        " is not homogeneous of degree " + std::to_string(delta));
    }
}

namespace {
void degree_rec(std::size_t var, std::uint64_t left, Monomial& cur, std::vector<Monomial>& out) {
    if (var + 1 == cur.size()) {
        cur[var] = static_cast<std::uint32_t>(left);
        out.push_back(cur);
        cur[var] = 0;
        return;
    }
    for (std::uint64_t e = left + 1; e-- > 0;) {
        cur[var] = static_cast<std::uint32_t>(e);
        degree_rec(var + 1, left - e, cur, out);
    }
    cur[var] = 0;
}
} // namespace

std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint64_t d) {
    std::vector<Monomial> out;
    Monomial cur(n + 1);
    degree_rec(0, d, cur, out);
    return out;
}

MacaulayMatrix build_macaulay(const HomogeneousSystem& sys) {
    sys.validate();
    MacaulayMatrix m;
    m.n = sys.n;
    m.delta = sys.delta;
    m.degree = 1 + (sys.n + 1) * (sys.delta - 1);
    m.monomials = monomials_of_degree(sys.n, m.degree);
    const std::size_t N = m.monomials.size();
    if (N > 4096) throw CapExceeded("matrix side cap", "--max-side", 4096, "N = " + std::to_string(N));
    m.entries = IntegerMatrix(N, N);

    std::map<Monomial, std::size_t> column;
    for (std::size_t c = 0; c < N; ++c) column[m.monomials[c]] = c;

    for (std::size_t r = 0; r < N; ++r) {
        const Monomial& alpha = m.monomials[r];
        std::size_t i = 0;
        while (i <= sys.n && alpha[i] < sys.delta) ++i;
        if (i > sys.n) throw std::logic_error("no X_j^delta divides a degree-d monomial");
        Monomial shift = alpha;
        shift[i] -= static_cast<std::uint32_t>(sys.delta);
        m.provenance.push_back({alpha, i});
        for (const auto& [beta, c] : sys.polys[i].terms()) m.entries(r, column.at(shift * beta)) = c;
    }
    return m;
}

bool is_reduced(const Monomial& m, std::uint64_t delta) {
    std::size_t hits = 0;
    for (std::size_t j = 0; j < m.size(); ++j)
        if (m[j] >= delta) ++hits;
    return hits == 1;
}

IntegerMatrix reduced_submatrix(const MacaulayMatrix& m) {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < m.side(); ++k)
        if (!is_reduced(m.monomials[k], m.delta)) keep.push_back(k);
    IntegerMatrix sub(keep.size(), keep.size());
    for (std::size_t r = 0; r < keep.size(); ++r)
        for (std::size_t c = 0; c < keep.size(); ++c) sub(r, c) = m.entries(keep[r], keep[c]);
    return sub;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::zero: return "zero";
    case Verdict::nonzero: return "nonzero";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
}

ResultantReport resultant_vanishing(const HomogeneousSystem& sys) {
    const MacaulayMatrix m = build_macaulay(sys);
    ResultantReport r;
    r.det_m = det_exact(m.entries);
    r.det_m_prime = det_exact(reduced_submatrix(m));
    if (r.det_m != 0)
        r.verdict = Verdict::nonzero;
    else
        r.verdict = r.det_m_prime != 0 ? Verdict::zero : Verdict::indeterminate;
    return r;
}

HomogeneousSystem read_homogeneous_system(std::istream& in) {
    HomogeneousSystem sys;
    bool header = false;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!header) {
            std::istringstream is(raw);
            std::string kn, kd;
            long long n = -1, d = -1;
            if (!(is >> kn >> n >> kd >> d) || kn != "n" || kd != "delta" || n < 0 || d < 1)
                throw ParseError("expected header 'n <n> delta <delta>'", line);
            std::string extra;
            if (is >> extra) throw ParseError("trailing text after header", line);
            sys.n = static_cast<std::size_t>(n);
            sys.delta = static_cast<std::uint64_t>(d);
            header = true;
            continue;
        }
        try {
            sys.polys.push_back(parse_polynomial(raw, sys.n + 1));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), line);
        }
    }
    if (!header) throw ParseError("missing 'n <n> delta <delta>' header", line);
    try {
        sys.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return sys;
}

HomogeneousSystem load_homogeneous_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_homogeneous_system(in);
}

} // namespace vps
