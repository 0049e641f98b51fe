#pragma once

// Circuit constructions: coefficient-function synthesis, big sums/products,
// and the homogeneous split working modulo 2.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "vps/boolean.hpp"
#include "vps/circuit.hpp"

namespace vps {

/// bit(alpha, 0) is the sign of the coefficient of x^alpha (1 = negative);
/// bit(alpha, i) for i >= 1 is bit i-1 of its magnitude. Bits above
/// coeff_bit_bound and monomials above degree_bound are zero.
struct CoefficientFunction {
    std::function<bool(const Monomial&, std::size_t)> bit;
    std::uint64_t degree_bound = 0;
    std::size_t coeff_bit_bound = 0;
};

/// Coefficient function of an explicit polynomial.
CoefficientFunction coefficient_function_of(const Polynomial& p);

/// Monomials of total degree <= max_degree in canonical order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint64_t max_degree);

/// Sums every nonzero monomial term in a balanced tree (left to right in
/// canonical order); monomials and powers of two use repeated squaring.
ArithmeticCircuit build_from_coefficients(const CoefficientFunction& f, std::size_t nvars,
                                          std::size_t monomial_cap = 5000);

enum class CombineMode { sum, product };

/// g is over (x, y) with the last p variables being y. Returns the circuit
/// over x computing the sum or product of g(x, eps) over eps in {0,1}^p,
/// restricted to eps accepted by `membership` when given.
ArithmeticCircuit big_combine(const ArithmeticCircuit& g, std::size_t p, CombineMode mode,
                              const BooleanCircuit* membership = nullptr,
                              std::size_t instance_cap = 4096);

/// Splits each gate into homogeneous components 1..dmax, keeping only the
/// parity of the degree-0 parts. The result q satisfies q = p (mod 2)
/// coefficient-wise on all components of degree <= dmax, and its formal
/// degree is at most dmax.
ArithmeticCircuit homogeneous_split_mod2(const ArithmeticCircuit& c, std::uint64_t dmax);

} // namespace vps
