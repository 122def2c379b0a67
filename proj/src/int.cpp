#include "verlab/int.hpp"

#include <limits>
#include <string>

#include "verlab/errors.hpp"

namespace verlab {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p)) {
    throw InvalidPrime("p = " + std::to_string(p) + " is not prime");
  }
}

std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
  if (base < 0 || exp < 0) {
    throw BudgetExceeded("checked_pow requires nonnegative arguments");
  }
  Int r = big_pow(base, exp);
  if (r > std::numeric_limits<std::int64_t>::max()) {
    throw BudgetExceeded(std::to_string(base) + "^" + std::to_string(exp) +
                         " exceeds the supported label range");
  }
  return r.convert_to<std::int64_t>();
}

Int big_pow(std::int64_t base, std::int64_t exp) {
  Int r = 1;
  Int b = base;
  while (exp > 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

}  // namespace verlab
