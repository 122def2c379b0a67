#pragma once

// Sparse exact Laurent polynomials over Z in one variable v, symmetric
// characters (invariant under v -> 1/v), and the greedy leading-term
// decomposition engine against unitriangular character bases.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "verlab/int.hpp"

namespace verlab {

using Weight = std::int64_t;
using WeightMap = std::map<Weight, Int>;

class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly constant(Int c);
  static LaurentPoly monomial(Int c, Weight e);

  const std::map<Weight, Int>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Int coefficient(Weight e) const;
  Weight top_exponent() const;  // largest exponent; requires a nonzero value

  // Accumulates c * v^e, dropping the entry if it cancels to zero.
  void add_term(Weight e, const Int& c);

  LaurentPoly& operator+=(const LaurentPoly& g);
  LaurentPoly& operator-=(const LaurentPoly& g);
  friend LaurentPoly operator+(LaurentPoly f, const LaurentPoly& g) {
    f += g;
    return f;
  }
  friend LaurentPoly operator-(LaurentPoly f, const LaurentPoly& g) {
    f -= g;
    return f;
  }
  LaurentPoly operator*(const LaurentPoly& g) const;  // exact convolution
  LaurentPoly operator*(const Int& c) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly&) const = default;

  bool is_symmetric() const;  // coefficient(e) == coefficient(-e) for all e
  bool is_nonnegative() const;
  LaurentPoly scale_exponents(Weight k) const;  // v^e -> v^(k*e)

 private:
  std::map<Weight, Int> terms_;  // no stored zero coefficients
};

// A Laurent polynomial with the rank-one Weyl-group symmetry
// coefficient(e) == coefficient(-e). The checked constructor throws
// NonSymmetricInput; arithmetic between SymChar values stays symmetric
// and skips re-validation.
class SymChar {
 public:
  SymChar() = default;  // the zero character
  explicit SymChar(LaurentPoly p);

  static SymChar unit();

  const LaurentPoly& poly() const noexcept { return poly_; }
  bool is_zero() const noexcept { return poly_.is_zero(); }
  Weight top_weight() const { return poly_.top_exponent(); }
  bool is_nonnegative() const { return poly_.is_nonnegative(); }

  SymChar operator*(const SymChar& g) const;
  SymChar operator+(const SymChar& g) const;
  SymChar operator-(const SymChar& g) const;
  SymChar operator*(const Int& c) const;
  bool operator==(const SymChar&) const = default;

  // Wraps a polynomial known to be symmetric (results of closed operations).
  static SymChar unchecked(LaurentPoly p);

 private:
  LaurentPoly poly_;
};

// chi_m = v^m + v^(m-2) + ... + v^(-m); requires m >= 0.
SymChar weyl_char(Weight m);

// Exponent scaling by p (the character of the p-th Frobenius twist).
SymChar frobenius_substitute(const SymChar& f, std::int64_t p);

// basis(m) must equal v^m + strictly lower symmetric terms, so that the
// family is unitriangular against the exponent order.
using CharBasis = std::function<SymChar(Weight)>;

// Unique integer coefficients c with f = sum c[m] * basis(m), found by
// repeatedly reading off the top exponent and subtracting. Negative
// coefficients are allowed (virtual characters); callers that claim
// module-hood assert nonnegativity themselves.
WeightMap greedy_decompose(const LaurentPoly& f, const CharBasis& basis);
WeightMap greedy_decompose(const SymChar& f, const CharBasis& basis);

// CLI text form: terms "c*v^e" joined by "+", constants written bare,
// e.g. "1*v^3+1*v^1+1*v^-1+1*v^-3"; the zero polynomial is "0".
std::string format_char(const LaurentPoly& f);
std::string format_char(const SymChar& f);

// Accepts omitted "1*" and bare integers as constant terms.
LaurentPoly parse_char(std::string_view text);

}  // namespace verlab
