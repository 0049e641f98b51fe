#pragma once

// Bit vectors over GF(2), halving vectors and the choice-driven sequence
// used by the full-condition search.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace vps {

class Gf2Vector {
public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t length);
    /// "0101": character k is coordinate k.
    static Gf2Vector from_string(std::string_view bits);

    std::size_t size() const noexcept { return n_; }
    bool get(std::size_t k) const { return (w_[k / 64] >> (k % 64)) & 1U; }
    void set(std::size_t k, bool v);
    bool is_zero() const noexcept;

    friend bool operator==(const Gf2Vector&, const Gf2Vector&) = default;
    friend auto operator<=>(const Gf2Vector&, const Gf2Vector&) = default;

private:
    friend bool inner_product(const Gf2Vector& u, const Gf2Vector& v);
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

std::string to_string(const Gf2Vector& v);

/// Sum of u_k v_k mod 2. Throws std::invalid_argument on a length mismatch.
bool inner_product(const Gf2Vector& u, const Gf2Vector& v);

using ChoiceList = std::vector<bool>;
std::string to_string(const ChoiceList& c);

constexpr std::size_t kDefaultMaxSprime = 24;

/// Number of v in V with u.v = 0.
std::size_t orthogonal_count(const Gf2Vector& u, const std::vector<Gf2Vector>& V);

/// True iff N/2 - sqrt(N)/2 <= count <= N/2 + sqrt(N)/2, decided exactly.
bool within_halving_bound(std::size_t count, std::size_t N);

/// First u in counting order (coordinate 0 most significant) within the
/// halving bound. V must be nonempty, of one length, pairwise distinct.
Gf2Vector find_halving_vector(const std::vector<Gf2Vector>& V, std::size_t max_sprime = kDefaultMaxSprime);

/// V restricted to vectors with v.u = bit.
std::vector<Gf2Vector> filter_by(const std::vector<Gf2Vector>& V, const Gf2Vector& u, bool bit);

/// u^(1..l+1): u^(i+1) halves the subset of V consistent with c_1..c_i.
/// Throws InconsistencyError when some subset becomes empty.
std::vector<Gf2Vector> star_sequence(const std::vector<Gf2Vector>& V, const ChoiceList& c,
                                     std::size_t max_sprime = kDefaultMaxSprime);

} // namespace vps
