#include "vps/gf2.hpp"

#include <bit>
#include <set>
#include <stdexcept>

#include "vps/errors.hpp"

namespace vps {

Gf2Vector::Gf2Vector(std::size_t length) : n_(length), w_((length + 63) / 64, 0) {}

Gf2Vector Gf2Vector::from_string(std::string_view bits) {
    Gf2Vector v(bits.size());
    for (std::size_t k = 0; k < bits.size(); ++k) {
        if (bits[k] != '0' && bits[k] != '1')
            throw std::invalid_argument("bit string may contain only 0 and 1: '" + std::string(bits) + "'");
        v.set(k, bits[k] == '1');
    }
    return v;
}

void Gf2Vector::set(std::size_t k, bool v) {
    if (k >= n_) throw std::out_of_range("bit index out of range");
    const std::uint64_t mask = std::uint64_t{1} << (k % 64);
    if (v) w_[k / 64] |= mask;
    else w_[k / 64] &= ~mask;
}

bool Gf2Vector::is_zero() const noexcept {
    for (auto w : w_)
        if (w) return false;
    return true;
}

std::string to_string(const Gf2Vector& v) {
    std::string s(v.size(), '0');
    for (std::size_t k = 0; k < v.size(); ++k)
        if (v.get(k)) s[k] = '1';
    return s;
}

bool inner_product(const Gf2Vector& u, const Gf2Vector& v) {
    if (u.n_ != v.n_)
        throw std::invalid_argument("inner product of vectors of length " + std::to_string(u.n_) + " and " +
                                    std::to_string(v.n_));
    unsigned acc = 0;
    for (std::size_t i = 0; i < u.w_.size(); ++i) acc += std::popcount(u.w_[i] & v.w_[i]);
    return acc & 1U;
}

std::string to_string(const ChoiceList& c) {
    std::string s;
    for (bool b : c) s += b ? '1' : '0';
    return s.empty() ? "-" : s;
}

std::size_t orthogonal_count(const Gf2Vector& u, const std::vector<Gf2Vector>& V) {
    std::size_t n = 0;
    for (const auto& v : V)
        if (!inner_product(u, v)) ++n;
    return n;
}

bool within_halving_bound(std::size_t count, std::size_t N) {
    // |count - N/2| <= sqrt(N)/2  <=>  (2 count - N)^2 <= N
    const long long d = 2 * static_cast<long long>(count) - static_cast<long long>(N);
    return static_cast<unsigned long long>(d * d) <= N;
}

Gf2Vector find_halving_vector(const std::vector<Gf2Vector>& V, std::size_t max_sprime) {
    if (V.empty()) throw std::invalid_argument("halving vector of an empty set");
    const std::size_t s = V.front().size();
    for (const auto& v : V)
        if (v.size() != s) throw std::invalid_argument("vectors of different lengths");
    if (std::set<Gf2Vector>(V.begin(), V.end()).size() != V.size())
        throw std::invalid_argument("halving vector search needs pairwise distinct vectors");
    if (s > max_sprime)
        throw CapExceeded("halving search cap", "--max-sprime", max_sprime, "s' = " + std::to_string(s));

    const std::uint64_t total = std::uint64_t{1} << s;
    Gf2Vector u(s);
    for (std::uint64_t code = 0; code < total; ++code) {
        // Coordinate 0 is the most significant bit of the counter.
        for (std::size_t k = 0; k < s; ++k) u.set(k, (code >> (s - 1 - k)) & 1U);
        if (within_halving_bound(orthogonal_count(u, V), V.size())) return u;
    }
    throw std::logic_error("no halving vector found");
}

std::vector<Gf2Vector> filter_by(const std::vector<Gf2Vector>& V, const Gf2Vector& u, bool bit) {
    std::vector<Gf2Vector> out;
    for (const auto& v : V)
        if (inner_product(u, v) == bit) out.push_back(v);
    return out;
}

std::vector<Gf2Vector> star_sequence(const std::vector<Gf2Vector>& V, const ChoiceList& c, std::size_t max_sprime) {
    std::vector<Gf2Vector> seq;
    std::vector<Gf2Vector> cur = V;
    seq.push_back(find_halving_vector(cur, max_sprime));
    for (std::size_t i = 0; i < c.size(); ++i) {
        cur = filter_by(cur, seq.back(), c[i]);
        if (cur.empty())
            throw InconsistencyError("choice list " + to_string(c) + " leaves no vector after step " +
                                     std::to_string(i + 1));
        seq.push_back(find_halving_vector(cur, max_sprime));
    }
    return seq;
}

} // namespace vps
