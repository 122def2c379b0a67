#pragma once

// Label-level Frobenius between neighbouring levels, stabilization of
// tensor-power classes as the level grows, and the limit multiplicity data
// together with its cross-check against the characteristic-p SL2 pipeline.
// The two sides of the equivalence check share no code path: one iterates
// the level-(p, n) fusion recursion, the other decomposes characters.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "verlab/int.hpp"
#include "verlab/verlinde.hpp"

namespace verlab {

// The Frobenius image of the level-n simple b: the same integer b read as a
// level-(n-1) label. Defined exactly for b in Lambda at level n-1; throws
// OutsideFrobeniusDomain elsewhere.
Label frobenius_label(std::int64_t p, std::int64_t n, Label b);

// Least n >= 2 with 2i < p^{n-1} - p^{n-2} (the sharp stabilization bound).
std::int64_t stable_n_min(std::int64_t p, std::int64_t i);

// Least n with n > 4r (the coarse headline bound; always implies the sharp
// one, which keeps table sizes desk-scale).
std::int64_t coarse_n_min(std::int64_t r);

struct StabilizationWitness {
  std::int64_t i = 0;
  Label label = 0;
  std::string reason;  // "support" or "multiplicity"
  Int level_n;
  Int level_prev;
};

// True iff for all i <= r the class of the i-th tensor power of L_1 at level
// n is supported inside Lambda of level n-1 and agrees entrywise with the
// level-(n-1) class. Outside the guaranteed regime 2r < p^{n-1} - p^{n-2}
// the call throws BoundViolated unless override_bounds is set; with the
// override, disagreement is an observation, not an error.
bool stabilization_check(std::int64_t p, std::int64_t n, std::int64_t r,
                         bool override_bounds = false,
                         StabilizationWitness* witness = nullptr);

struct StableWindow {
  std::int64_t p = 0;
  std::int64_t i = 0;
  std::int64_t n_min = 0;
  std::vector<std::int64_t> n_checked;
};

struct LimitClass {
  std::map<Label, Int> mults;
  StableWindow window;
};

// Multiplicities of the i-th tensor power of the limit generator, computed
// at the two smallest admissible levels and asserted equal; a mismatch
// throws StabilityFailure (it would mean a bug, not a math fact).
LimitClass limit_class(std::int64_t p, std::int64_t i);

Int limit_multiplicity(std::int64_t p, std::int64_t i, Label a,
                       StableWindow* window = nullptr);

struct BEWitness {
  Label a = 0;
  Int limit_side;
  Int char_side;
};

// The central cross-check: limit multiplicities from the fusion recursion
// equal the simple multiplicities of the i-th tensor power of the standard
// character. Returns false with a witness on mismatch.
bool be_equivalence_check(std::int64_t p, std::int64_t i,
                          BEWitness* witness = nullptr);

// The limit class with labels multiplied by p equals the simple
// decomposition of the p-substituted character: the commuting square of the
// Frobenius with the equivalence, at the level of multiplicities.
bool frobenius_limit_check(std::int64_t p, std::int64_t i);

}  // namespace verlab
