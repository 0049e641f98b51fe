#pragma once

// Deciding an algebraic circuit from sign tests alone: the rank of the
// input's sign condition is found with oracle queries, then the circuit is
// replayed on that condition.

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vps/bss.hpp"
#include "vps/gf2.hpp"
#include "vps/sign_engine.hpp"

namespace vps {

enum class QueryKind { truncated, product, coordinate };
std::string to_string(QueryKind k);

struct QueryRecord {
    QueryKind kind = QueryKind::truncated;
    std::size_t i = 0;  // truncated: prefix length; product: step index (1-based)
    std::size_t k = 0;  // product: truncated rank; coordinate: 0-based system index
    ChoiceList c;       // product: choices so far
    Sign answer = Sign::zero;

    friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

struct TransferSummary {
    std::size_t m = 0;
    ChoiceList c;
    std::size_t rank = 0;
    bool decision = false;
    bool direct = false;

    friend bool operator==(const TransferSummary&, const TransferSummary&) = default;
};

/// Append-only query log.
class Transcript {
public:
    void append(QueryRecord r) { records_.push_back(std::move(r)); }
    const std::vector<QueryRecord>& records() const noexcept { return records_; }
    std::size_t total() const noexcept { return records_.size(); }
    std::size_t count(QueryKind k) const noexcept;

    /// One line per query with running totals, then a `result` line.
    std::string format(const std::optional<TransferSummary>& summary = std::nullopt) const;

    friend bool operator==(const Transcript&, const Transcript&) = default;

private:
    std::vector<QueryRecord> records_;
};

struct ParsedTrace {
    Transcript transcript;
    std::optional<TransferSummary> summary;
};

/// Inverse of Transcript::format. Throws ParseError on malformed lines or
/// inconsistent running totals.
ParsedTrace parse_trace(std::istream& in);

/// Answers sign queries about a private input x. Every answer is logged.
class TestOracle {
public:
    TestOracle(const SignConditionTable& table, std::vector<Rational> x, std::size_t max_sprime = kDefaultMaxSprime);

    const SignConditionTable& table() const noexcept { return table_; }
    const std::vector<TruncatedSignCondition>& truncated_list() const noexcept { return truncated_; }
    const Transcript& transcript() const noexcept { return transcript_; }

    /// Sign of prod_{j<=i} sum_{k not in T^(j)} f_k(x)^2 (i is 1-based).
    Sign truncated(std::size_t i);
    /// Sign of prod_{j in u^(i)} f_j(x), u^(i) the last element of the
    /// star sequence of the view of T^(k) under choices c.
    Sign product(std::size_t i, std::size_t k, const ChoiceList& c);
    /// Sign of f_j(x) (0-based). Used only to audit incomplete tables.
    Sign coordinate(std::size_t j);

    /// The view of T^(k), cached.
    const TwoValuedView& view(std::size_t k);
    std::size_t max_sprime() const noexcept { return max_sprime_; }

private:
    Sign value_sign(std::size_t j);

    const SignConditionTable& table_;
    std::vector<TruncatedSignCondition> truncated_;
    std::vector<Rational> x_;
    std::vector<std::optional<Sign>> signs_;
    std::map<std::size_t, TwoValuedView> views_;
    std::size_t max_sprime_;
    Transcript transcript_;
};

/// Minimal i with truncated(i) = 0, by binary search.
std::size_t truncated_rank_search(TestOracle& oracle);

/// Adaptive product-sign search over the view of T^(k).
ChoiceList full_condition_search(TestOracle& oracle, std::size_t k);

/// Table rank of the unique view vector consistent with c.
std::size_t recover_rank(const ChoiceList& c, const TwoValuedView& view, std::size_t max_sprime = kDefaultMaxSprime);

/// Replays the circuit level by level, deciding each test from condition `rank`.
bool replay_acceptance(const AlgebraicCircuit& c, const TestedPolynomialList& tested, const SignConditionTable& table,
                       std::size_t rank);

struct TransferOptions {
    EnumerationOptions enumeration;
    std::size_t max_sprime = kDefaultMaxSprime;
    /// Witness points for multivariate circuits; required when nvars != 1.
    std::optional<WitnessSet> witnesses;
    /// Accept an incomplete table; inputs outside it raise IncompleteTableError.
    bool allow_incomplete = false;
};

/// Input-independent part of the pipeline.
struct TransferPlan {
    AlgebraicCircuit circuit;
    TestedPolynomialList tested;
    SignConditionTable table;
    std::size_t max_sprime = kDefaultMaxSprime;
};

TransferPlan prepare_transfer(const AlgebraicCircuit& c, const TransferOptions& opt = {});

struct TransferResult {
    std::size_t m = 0;
    ChoiceList c;
    std::size_t rank = 0;
    bool decision = false;
    bool direct_decision = false;
    std::size_t truncated_count = 0;  // N_T
    std::size_t compatible_count = 0; // N'
    Transcript transcript;

    TransferSummary summary() const { return {m, c, rank, decision, direct_decision}; }
};

TransferResult decide(const TransferPlan& plan, std::span<const Rational> x);
TransferResult transfer_decide(const AlgebraicCircuit& c, std::span<const Rational> x, const TransferOptions& opt = {});

/// ceil(log2 N_T) + 3 ceil(log2(N'+1)) + 4
std::size_t query_bound(std::size_t truncated_count, std::size_t compatible_count);
std::size_t ceil_log2(std::size_t n);

} // namespace vps
