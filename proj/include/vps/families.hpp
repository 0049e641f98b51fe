#pragma once

#include <cstddef>

#include "vps/exact.hpp"

namespace vps {

enum class HamiltonKind { cycles, paths };

inline constexpr std::size_t kDefaultFamilyCap = 8;

/// Variables x_{i,j} (1 <= i, j <= n) sit at index (i-1)*n + (j-1).
inline std::size_t hamilton_var(std::size_t n, std::size_t i, std::size_t j) {
    return (i - 1) * n + (j - 1);
}

/// cycles: HC_n, the sum over n-cycles sigma of prod_i x_{i,sigma(i)}.
/// paths:  p_n, the sum over j < k and Hamilton paths j -> ... -> k of the
///         product of the n-1 edge variables along the path.
Polynomial hamilton_family(std::size_t n, HamiltonKind kind, std::size_t cap = kDefaultFamilyCap);

} // namespace vps
