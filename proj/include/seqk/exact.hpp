#pragma once

// Exact big-integer / rational arithmetic for the closed-form path structure
// values. This is the reference route used to validate the floating-point
// lattice recurrence; production code paths never include this header.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>

#include "seqk/types.hpp"

namespace seqk::exact {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(Index n) {
  if (n < 0) throw std::domain_error("factorial of negative integer");
  BigInt r = 1;
  for (Index k = 2; k <= n; ++k) r *= k;
  return r;
}

/// Coefficient (i+j-2-d)! / ((i-1-d)! (j-1-d)! d!) of the closed-form sum.
inline BigInt path_term_coefficient(Index i, Index j, Index d) {
  return factorial(i + j - 2 - d) / (factorial(i - 1 - d) * factorial(j - 1 - d) * factorial(d));
}

template <class Scalar>
Scalar pow_nonneg(const Scalar& x, Index e) {
  Scalar r(1);
  for (Index k = 0; k < e; ++k) r *= x;
  return r;  // x^0 == 1, including x == 0
}

/// Closed-form path structure value
///   k_Gamma(i,j) = sum_{d=0}^{min(i,j)-1} C_hv^(i+j-2-2d) C_d^d
///                  (i+j-2-d)! / ((i-1-d)! (j-1-d)! d!)
/// evaluated term by term. With a rational scalar the result is exact.
template <class Scalar>
Scalar path_structure_closed_form(Index i, Index j, const Scalar& chv, const Scalar& cd) {
  if (i < 1 || j < 1) throw std::domain_error("path structure positions start at 1");
  Scalar sum(0);
  const Index dmax = std::min(i, j) - 1;
  for (Index d = 0; d <= dmax; ++d) {
    const Scalar coeff = static_cast<Scalar>(path_term_coefficient(i, j, d));
    sum += coeff * pow_nonneg(chv, i + j - 2 - 2 * d) * pow_nonneg(cd, d);
  }
  return sum;
}

}  // namespace seqk::exact
