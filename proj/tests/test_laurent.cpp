#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "verlab/errors.hpp"
#include "verlab/laurent.hpp"

using namespace verlab;

namespace {

LaurentPoly make_poly(std::initializer_list<std::pair<Weight, int>> terms) {
  LaurentPoly f;
  for (const auto& [e, c] : terms) f.add_term(e, c);
  return f;
}

// Independent dense convolution oracle: multiply via offset coefficient
// arrays instead of the sparse map path.
LaurentPoly dense_mul(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const Weight fmin = f.terms().begin()->first, fmax = f.terms().rbegin()->first;
  const Weight gmin = g.terms().begin()->first, gmax = g.terms().rbegin()->first;
  const Weight lo = fmin + gmin, hi = fmax + gmax;
  std::vector<Int> acc(static_cast<std::size_t>(hi - lo + 1), Int(0));
  for (const auto& [e1, c1] : f.terms()) {
    for (const auto& [e2, c2] : g.terms()) {
      acc[static_cast<std::size_t>(e1 + e2 - lo)] += c1 * c2;
    }
  }
  LaurentPoly out;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    out.add_term(lo + static_cast<Weight>(k), acc[k]);
  }
  return out;
}

LaurentPoly random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_terms(0, 8);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<Weight> expo(-12, 12);
  LaurentPoly f;
  const int n = n_terms(rng);
  for (int k = 0; k < n; ++k) f.add_term(expo(rng), coeff(rng));
  return f;
}

SymChar random_symmetric(std::mt19937& rng) {
  std::uniform_int_distribution<int> n_terms(0, 6);
  std::uniform_int_distribution<int> coeff(-9, 9);
  std::uniform_int_distribution<Weight> expo(0, 12);
  LaurentPoly f;
  const int n = n_terms(rng);
  for (int k = 0; k < n; ++k) {
    const Weight e = expo(rng);
    const int c = coeff(rng);
    f.add_term(e, c);
    if (e != 0) f.add_term(-e, c);
  }
  return SymChar(f);
}

}  // namespace

TEST_CASE("laurent multiplication matches the pinned examples") {
  const LaurentPoly v1 = make_poly({{1, 1}, {-1, 1}});
  CHECK(v1 * LaurentPoly::constant(1) == v1);
  CHECK(v1 * v1 == make_poly({{2, 1}, {0, 2}, {-2, 1}}));
  CHECK(v1 * make_poly({{2, 1}, {-2, 1}}) ==
        make_poly({{3, 1}, {1, 1}, {-1, 1}, {-3, 1}}));
}

TEST_CASE("laurent multiplication agrees with the dense oracle") {
  std::mt19937 rng(7101);
  for (int trial = 0; trial < 200; ++trial) {
    const LaurentPoly f = random_poly(rng);
    const LaurentPoly g = random_poly(rng);
    CHECK(f * g == dense_mul(f, g));
  }
}

TEST_CASE("ring laws hold on random inputs") {
  std::mt19937 rng(20250811);
  for (int trial = 0; trial < 150; ++trial) {
    const LaurentPoly f = random_poly(rng);
    const LaurentPoly g = random_poly(rng);
    const LaurentPoly h = random_poly(rng);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
  }
}

TEST_CASE("no zero coefficients are ever stored") {
  LaurentPoly f = make_poly({{3, 2}, {0, 1}});
  f.add_term(3, -2);
  CHECK(f.terms().size() == 1);
  CHECK(f.coefficient(3) == 0);
  f -= LaurentPoly::constant(1);
  CHECK(f.is_zero());
}

TEST_CASE("weyl characters") {
  CHECK(weyl_char(0).poly() == LaurentPoly::constant(1));
  CHECK(weyl_char(1).poly() == make_poly({{1, 1}, {-1, 1}}));
  CHECK(weyl_char(3).poly() == make_poly({{3, 1}, {1, 1}, {-1, 1}, {-3, 1}}));
  // Clebsch-Gordan: chi_1 * chi_m = chi_{m+1} + chi_{m-1}
  for (Weight m = 1; m <= 40; ++m) {
    CHECK(weyl_char(1) * weyl_char(m) == weyl_char(m + 1) + weyl_char(m - 1));
  }
}

TEST_CASE("frobenius substitution scales exponents") {
  const SymChar v1 = weyl_char(1);
  CHECK(frobenius_substitute(v1, 2).poly() == make_poly({{2, 1}, {-2, 1}}));
  CHECK(frobenius_substitute(SymChar::unit(), 5) == SymChar::unit());
  CHECK(frobenius_substitute(SymChar(make_poly({{2, 1}, {0, 1}, {-2, 1}})), 3).poly() ==
        make_poly({{6, 1}, {0, 1}, {-6, 1}}));
}

TEST_CASE("frobenius substitution is a ring homomorphism") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const SymChar f = random_symmetric(rng);
    const SymChar g = random_symmetric(rng);
    for (std::int64_t p : {2, 3, 5}) {
      CHECK(frobenius_substitute(f * g, p) ==
            frobenius_substitute(f, p) * frobenius_substitute(g, p));
    }
  }
}

TEST_CASE("greedy decomposition against the Weyl basis") {
  const CharBasis weyl = [](Weight m) { return weyl_char(m); };
  const SymChar f = weyl_char(2) + weyl_char(0);
  CHECK(greedy_decompose(f, weyl) == WeightMap{{2, 1}, {0, 1}});
  const SymChar sq = weyl_char(1) * weyl_char(1);
  CHECK(greedy_decompose(sq, weyl) == WeightMap{{2, 1}, {0, 1}});
}

TEST_CASE("greedy decomposition against the p = 2 simple basis") {
  // Steinberg products built by hand from the binary digits.
  const CharBasis simple2 = [](Weight m) {
    LaurentPoly acc = LaurentPoly::constant(1);
    Weight scale = 1;
    while (m > 0) {
      if (m % 2 == 1) {
        acc = acc * make_poly({{scale, 1}, {-scale, 1}});
      }
      m /= 2;
      scale *= 2;
    }
    return SymChar(acc);
  };
  const SymChar sq = weyl_char(1) * weyl_char(1);
  CHECK(greedy_decompose(sq, simple2) == WeightMap{{2, 1}, {0, 2}});
}

TEST_CASE("greedy round trip reconstructs the input exactly") {
  const CharBasis weyl = [](Weight m) { return weyl_char(m); };
  std::mt19937 rng(4242);
  for (int trial = 0; trial < 80; ++trial) {
    const SymChar f = random_symmetric(rng);
    const WeightMap coeffs = greedy_decompose(f, weyl);
    LaurentPoly sum;
    for (const auto& [m, c] : coeffs) sum += weyl_char(m).poly() * c;
    CHECK(sum == f.poly());
  }
}

TEST_CASE("non-symmetric inputs are rejected") {
  const LaurentPoly bad = make_poly({{1, 1}, {-1, 2}});
  CHECK_THROWS_AS(greedy_decompose(bad, [](Weight m) { return weyl_char(m); }),
                  NonSymmetricInput);
  CHECK_THROWS_AS(SymChar{bad}, NonSymmetricInput);
}

TEST_CASE("character strings parse and print") {
  const LaurentPoly chi3 = make_poly({{3, 1}, {1, 1}, {-1, 1}, {-3, 1}});
  CHECK(format_char(chi3) == "1*v^3+1*v^1+1*v^-1+1*v^-3");
  CHECK(parse_char("1*v^3+1*v^1+1*v^-1+1*v^-3") == chi3);
  CHECK(parse_char("v^2+2+v^-2") == make_poly({{2, 1}, {0, 2}, {-2, 1}}));
  CHECK(parse_char("3") == LaurentPoly::constant(3));
  CHECK(parse_char("0").is_zero());
  CHECK(parse_char("2*v^0") == LaurentPoly::constant(2));
  CHECK(parse_char("-2*v^1+v") == make_poly({{1, -1}}));
  CHECK(format_char(LaurentPoly{}) == "0");

  std::mt19937 rng(1313);
  for (int trial = 0; trial < 40; ++trial) {
    const LaurentPoly f = random_poly(rng);
    CHECK(parse_char(format_char(f)) == f);
  }

  CHECK_THROWS_AS(parse_char(""), ParseError);
  CHECK_THROWS_AS(parse_char("1*v^3+"), ParseError);
  CHECK_THROWS_AS(parse_char("v^"), ParseError);
  CHECK_THROWS_AS(parse_char("2x"), ParseError);
}
