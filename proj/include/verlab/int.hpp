#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace verlab {

// Exact unbounded integer. Multiplicities in tensor powers grow like 2^i,
// so fixed-width arithmetic is never used for coefficients.
using Int = boost::multiprecision::cpp_int;

bool is_prime(std::int64_t p);

// Throws InvalidPrime unless p is prime.
void require_prime(std::int64_t p);

// base^exp as int64; throws BudgetExceeded when the value does not fit.
std::int64_t checked_pow(std::int64_t base, std::int64_t exp);

Int big_pow(std::int64_t base, std::int64_t exp);

}  // namespace verlab
