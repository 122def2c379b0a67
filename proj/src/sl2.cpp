#include "verlab/sl2.hpp"

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "verlab/errors.hpp"

namespace verlab {

namespace {

// Write-once memo tables for the two character families. Fills are
// idempotent, so racing computations of the same key are harmless.
std::mutex g_char_mutex;
std::map<std::pair<std::int64_t, Weight>, SymChar>& simple_cache() {
  static std::map<std::pair<std::int64_t, Weight>, SymChar> cache;
  return cache;
}
std::map<std::pair<std::int64_t, Weight>, SymChar>& tilting_cache() {
  static std::map<std::pair<std::int64_t, Weight>, SymChar> cache;
  return cache;
}

std::optional<SymChar> cache_lookup(
    std::map<std::pair<std::int64_t, Weight>, SymChar>& cache, std::int64_t p,
    Weight m) {
  std::lock_guard<std::mutex> lock(g_char_mutex);
  auto it = cache.find({p, m});
  if (it == cache.end()) return std::nullopt;
  return it->second;
}

void cache_store(std::map<std::pair<std::int64_t, Weight>, SymChar>& cache,
                 std::int64_t p, Weight m, const SymChar& value) {
  std::lock_guard<std::mutex> lock(g_char_mutex);
  cache.emplace(std::make_pair(p, m), value);
}

}  // namespace

std::vector<int> p_adic_digits(std::int64_t a, std::int64_t p) {
  require_prime(p);
  if (a < 0) throw Error("NegativeWeight", "p_adic_digits requires a >= 0");
  std::vector<int> digits;
  while (a > 0) {
    digits.push_back(static_cast<int>(a % p));
    a /= p;
  }
  return digits;
}

SymChar simple_char(std::int64_t p, Weight a) {
  require_prime(p);
  if (auto hit = cache_lookup(simple_cache(), p, a)) return *hit;
  SymChar result = SymChar::unit();
  std::int64_t scale = 1;
  for (int digit : p_adic_digits(a, p)) {
    if (digit != 0) {
      result = result * SymChar::unchecked(
                            weyl_char(digit).poly().scale_exponents(scale));
    }
    scale *= p;
  }
  cache_store(simple_cache(), p, a, result);
  return result;
}

SymChar tilting_char(std::int64_t p, Weight m) {
  require_prime(p);
  if (m < 0) throw Error("NegativeWeight", "tilting_char requires m >= 0");
  if (auto hit = cache_lookup(tilting_cache(), p, m)) return *hit;
  SymChar result;
  if (m <= p - 1) {
    result = weyl_char(m);
  } else if (m <= 2 * p - 2) {
    result = weyl_char(m) + weyl_char(2 * p - 2 - m);
  } else {
    const Weight rem = m - (p - 1);
    const Weight a = rem % p;
    const Weight b = rem / p;
    result = tilting_char(p, p - 1 + a) * frobenius_substitute(tilting_char(p, b), p);
  }
  cache_store(tilting_cache(), p, m, result);
  return result;
}

SymChar steinberg_char(std::int64_t p, int r) {
  if (r < 0) throw Error("NegativeWeight", "steinberg_char requires r >= 0");
  return tilting_char(p, checked_pow(p, r) - 1);
}

WeightMap decompose_weyls(const SymChar& f) {
  return greedy_decompose(f, [](Weight m) { return weyl_char(m); });
}

WeightMap decompose_simples(const SymChar& f, std::int64_t p) {
  require_prime(p);
  return greedy_decompose(f, [p](Weight m) { return simple_char(p, m); });
}

WeightMap decompose_tiltings(const SymChar& f, std::int64_t p) {
  require_prime(p);
  return greedy_decompose(f, [p](Weight m) { return tilting_char(p, m); });
}

WeightMap tensor_power_simple_mults(std::int64_t p, std::int64_t i) {
  require_prime(p);
  if (i < 0) throw Error("NegativeWeight", "tensor power requires i >= 0");
  SymChar power = SymChar::unit();
  const SymChar v = weyl_char(1);
  for (std::int64_t k = 0; k < i; ++k) power = power * v;
  WeightMap mults = decompose_simples(power, p);
  for (const auto& [a, c] : mults) {
    if (c < 0) {
      throw NegativeMultiplicity(
          "simple multiplicity of a tensor power came out negative at weight " +
          std::to_string(a));
    }
  }
  return mults;
}

bool is_tilting_char(const SymChar& f, std::int64_t p) {
  for (const auto& [m, c] : decompose_tiltings(f, p)) {
    (void)m;
    if (c < 0) return false;
  }
  return true;
}

std::optional<int> min_steinberg_level(const SymChar& f, std::int64_t p,
                                       int r_max) {
  require_prime(p);
  for (int r = 0; r <= r_max; ++r) {
    if (is_tilting_char(f * steinberg_char(p, r), p)) return r;
  }
  return std::nullopt;
}

std::vector<Int> tilting_poly(std::int64_t p, Weight m) {
  require_prime(p);
  const SymChar v = weyl_char(1);
  WeightMap coeffs = greedy_decompose(tilting_char(p, m), [&v](Weight j) {
    SymChar power = SymChar::unit();
    for (Weight k = 0; k < j; ++k) power = power * v;
    return power;
  });
  std::vector<Int> poly(static_cast<std::size_t>(m) + 1, Int(0));
  for (const auto& [j, c] : coeffs) poly[static_cast<std::size_t>(j)] = c;
  return poly;
}

}  // namespace verlab
