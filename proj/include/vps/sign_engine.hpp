#pragma once

// Satisfiable sign conditions of polynomial systems, in a canonical rank
// order, with truncation and the two-valued compatible view.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vps/exact.hpp"
#include "vps/gf2.hpp"
#include "vps/univariate.hpp"

namespace vps {

using SignCondition = std::vector<Sign>;
/// Bit k is 0 iff f_k vanishes.
using TruncatedSignCondition = std::vector<bool>;

/// "1,-1,0"
std::string to_string(const SignCondition& s);
/// "101"
std::string truncated_to_string(const TruncatedSignCondition& t);

/// Rational point, or a real algebraic number for irrational univariate roots.
using Witness = std::variant<std::vector<Rational>, RealAlgebraic>;
std::string to_string(const Witness& w);

struct SignConditionTable {
    std::vector<Polynomial> system;
    std::vector<SignCondition> conditions;  // ascending, -1 < 0 < +1, first coordinate most significant
    std::vector<Witness> witnesses;
    bool complete = false;

    std::size_t size() const noexcept { return conditions.size(); }
    /// 1-based.
    const SignCondition& at_rank(std::size_t rank) const;
    /// 1-based rank, or nullopt when absent.
    std::optional<std::size_t> rank_of(const SignCondition& s) const;
    /// Largest coefficient bit size in the system.
    std::size_t coefficient_bits() const;
};

SignCondition sign_condition_of_point(std::span<const Polynomial> system, std::span<const Rational> x);
/// Exact condition of the system at a witness.
SignCondition sign_condition_of_witness(std::span<const Polynomial> system, const Witness& w);

struct UnivariateComplete {};
struct WitnessSet {
    std::vector<std::vector<Rational>> points;
    bool attested_complete = false;
};
using Backend = std::variant<UnivariateComplete, WitnessSet>;

/// Throws std::invalid_argument on an empty system or a backend arity mismatch.
SignConditionTable enumerate_sign_conditions(std::vector<Polynomial> system, const Backend& backend = UnivariateComplete{});

TruncatedSignCondition truncate(const SignCondition& s);

/// Distinct truncations, ascending lexicographic (compatible with inclusion).
std::vector<TruncatedSignCondition> truncated_table(const SignConditionTable& t);

struct TwoValuedView {
    TruncatedSignCondition base;
    std::vector<std::size_t> index_map;  // 0-based system positions with base bit set
    std::vector<Gf2Vector> vectors;      // 0 for > 0, 1 for < 0, in table order
    std::vector<std::size_t> ranks;      // table rank of each vector's condition
};

/// Throws std::invalid_argument when no condition of the table truncates to T.
TwoValuedView compatible_view(const SignConditionTable& t, const TruncatedSignCondition& T);

} // namespace vps
