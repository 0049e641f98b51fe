#pragma once

// Macaulay matrices of n+1 homogeneous forms of common degree delta in
// X_0..X_n, the non-reduced submatrix, and exact determinants.

#include <cstddef>
#include <istream>
#include <string>
#include <vector>

#include "vps/exact.hpp"

namespace vps {

/// Dense row-major integer matrix.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 && cols_ == 0; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) elimination with row pivoting. 1 for the empty matrix.
Integer det_exact(const IntegerMatrix& m);

struct HomogeneousSystem {
    std::size_t n = 0;       // variables X_0..X_n
    std::uint64_t delta = 1; // common degree
    std::vector<Polynomial> polys;  // n + 1 forms in n + 1 variables

    /// Throws std::invalid_argument when a form is not homogeneous of degree delta.
    void validate() const;
};

struct RowSource {
    Monomial row;        // x^alpha
    std::size_t form;    // 0-based index i: the row holds (x^alpha / X_i^delta) f_i
};

struct MacaulayMatrix {
    std::size_t n = 0;
    std::uint64_t delta = 1;
    std::uint64_t degree = 0;          // d = 1 + (n+1)(delta-1)
    std::vector<Monomial> monomials;   // row/column index, canonical order
    IntegerMatrix entries;
    std::vector<RowSource> provenance;

    std::size_t side() const noexcept { return monomials.size(); }
};

/// All monomials of degree d in n+1 variables, canonical (descending lex) order.
std::vector<Monomial> monomials_of_degree(std::size_t n, std::uint64_t d);

MacaulayMatrix build_macaulay(const HomogeneousSystem& sys);

/// x^alpha is reduced iff exactly one X_j^delta divides it.
bool is_reduced(const Monomial& m, std::uint64_t delta);

/// Rows and columns indexed by non-reduced monomials.
IntegerMatrix reduced_submatrix(const MacaulayMatrix& m);

enum class Verdict { zero, nonzero, indeterminate };
std::string to_string(Verdict v);

struct ResultantReport {
    Integer det_m;
    Integer det_m_prime;
    Verdict verdict;
};

/// zero iff det M = 0 and det M' != 0; nonzero iff det M != 0.
ResultantReport resultant_vanishing(const HomogeneousSystem& sys);

/// Header `n <n> delta <d>` followed by n+1 polynomial lines in x1..x(n+1).
HomogeneousSystem read_homogeneous_system(std::istream& in);
HomogeneousSystem load_homogeneous_system(const std::string& path);

} // namespace vps
