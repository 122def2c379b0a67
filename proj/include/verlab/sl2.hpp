#pragma once

// Characters of SL2 over an algebraically closed field of characteristic p:
// simple characters through the Steinberg tensor-product factorization,
// tilting characters through the Donkin recursion, decomposition of symmetric
// characters in the Weyl / simple / tilting bases, and character-level
// tilting tests built on them.

#include <cstdint>
#include <optional>
#include <vector>

#include "verlab/laurent.hpp"

namespace verlab {

// Base-p digits of a, least significant first, with no trailing zeros.
// p_adic_digits(0, p) is empty. Throws InvalidPrime.
std::vector<int> p_adic_digits(std::int64_t a, std::int64_t p);

// ch L(a) = prod_i (chi_{a_i} with exponents scaled by p^i) over the base-p
// digits a_i of a. For a <= p-1 this is just weyl_char(a). Memoized.
SymChar simple_char(std::int64_t p, Weight a);

// ch T(m) by the Donkin recursion:
//   m <= p-1:          chi_m
//   p <= m <= 2p-2:    chi_m + chi_{2p-2-m}
//   m > 2p-2:          with m-(p-1) = a + p*b, 0 <= a <= p-1:
//                      T(p-1+a) * Frobenius-scaled T(b)
// The recursion is quarantined behind the validation checks exercised by the
// test suites; it is the only character source not derived from first
// principles here. Memoized.
SymChar tilting_char(std::int64_t p, Weight m);

// ch St_r = ch T(p^r - 1).
SymChar steinberg_char(std::int64_t p, int r);

WeightMap decompose_weyls(const SymChar& f);
WeightMap decompose_simples(const SymChar& f, std::int64_t p);
WeightMap decompose_tiltings(const SymChar& f, std::int64_t p);

// [V^{tensor i} : L(a)] for all a, i.e. decompose_simples(weyl_char(1)^i).
// Throws NegativeMultiplicity if any coefficient comes out negative, which
// would signal an implementation bug rather than a math fact.
WeightMap tensor_power_simple_mults(std::int64_t p, std::int64_t i);

// Character-level necessary condition for f to be the character of a tilting
// module: all coefficients of decompose_tiltings(f, p) are >= 0. This cannot
// see module structure, only characters.
bool is_tilting_char(const SymChar& f, std::int64_t p);

inline constexpr int kDefaultSteinbergSearchLimit = 16;

// Least r <= r_max with is_tilting_char(f * ch St_r); nullopt if none.
std::optional<int> min_steinberg_level(const SymChar& f, std::int64_t p,
                                       int r_max = kDefaultSteinbergSearchLimit);

// Coefficients (by degree) of the unique integer polynomial P_m with
// ch T(m) = P_m(chi_1); degree m with leading coefficient 1.
std::vector<Int> tilting_poly(std::int64_t p, Weight m);

}  // namespace verlab
