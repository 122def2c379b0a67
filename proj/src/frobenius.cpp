#include "verlab/frobenius.hpp"

#include <string>

#include "verlab/errors.hpp"
#include "verlab/laurent.hpp"
#include "verlab/sl2.hpp"

namespace verlab {

Label frobenius_label(std::int64_t p, std::int64_t n, Label b) {
  require_prime(p);
  if (n < 2) {
    throw OutsideFrobeniusDomain("no level below n = " + std::to_string(n));
  }
  if (!label_in_lambda(p, n - 1, b)) {
    throw OutsideFrobeniusDomain("label " + std::to_string(b) +
                                 " is not in Lambda at level " + std::to_string(n - 1));
  }
  return b;
}

std::int64_t stable_n_min(std::int64_t p, std::int64_t i) {
  require_prime(p);
  if (i < 0) throw Error("NegativeWeight", "tensor power requires i >= 0");
  std::int64_t n = 2;
  while (!(2 * i < lambda_size(p, n - 1))) ++n;
  return n;
}

std::int64_t coarse_n_min(std::int64_t r) { return 4 * r + 1; }

bool stabilization_check(std::int64_t p, std::int64_t n, std::int64_t r,
                         bool override_bounds, StabilizationWitness* witness) {
  require_prime(p);
  if (n < 2) throw BoundViolated("stabilization needs n >= 2");
  if (r < 1) throw BoundViolated("stabilization needs r >= 1");
  // Entrywise class agreement is guaranteed already for r < p^{n-1} - p^{n-2},
  // so the boundary case 2r = p^{n-1} - p^{n-2} stays inside the guarded regime.
  if (!(2 * r <= lambda_size(p, n - 1)) && !override_bounds) {
    throw BoundViolated("2r <= p^{n-1} - p^{n-2} fails at (p, n, r) = (" +
                        std::to_string(p) + ", " + std::to_string(n) + ", " +
                        std::to_string(r) + "); pass the override to observe anyway");
  }

  // Advance the level-(n-1) iteration only while the support test passes, so
  // the degenerate (2, 1) bottom is never asked for powers of a missing L_1.
  KClass upper = tensor_power_class(p, n, 0);
  KClass lower = tensor_power_class(p, n - 1, 0);
  for (std::int64_t i = 0; i <= r; ++i) {
    if (i > 0) {
      KClass next = KClass::zero(p, n);
      for (const auto& [a, m] : upper.mults) {
        for (const auto& [b, c] : fuse_L1(p, n, a).mults) next.add(b, m * c);
      }
      upper = std::move(next);
    }
    for (const auto& [a, m] : upper.mults) {
      if (!label_in_lambda(p, n - 1, a)) {
        if (witness) {
          *witness = StabilizationWitness{i, a, "support", m, Int(0)};
        }
        return false;
      }
    }
    if (i > 0) {
      KClass next = KClass::zero(p, n - 1);
      for (const auto& [a, m] : lower.mults) {
        for (const auto& [b, c] : fuse_L1(p, n - 1, a).mults) next.add(b, m * c);
      }
      lower = std::move(next);
    }
    if (upper.mults != lower.mults) {
      Label bad = 0;
      Int vu = 0, vl = 0;
      for (const auto& [a, m] : upper.mults) {
        if (lower.at(a) != m) {
          bad = a;
          vu = m;
          vl = lower.at(a);
          break;
        }
      }
      if (vu == 0 && vl == 0) {
        for (const auto& [a, m] : lower.mults) {
          if (upper.at(a) != m) {
            bad = a;
            vu = upper.at(a);
            vl = m;
            break;
          }
        }
      }
      if (witness) {
        *witness = StabilizationWitness{i, bad, "multiplicity", vu, vl};
      }
      return false;
    }
  }
  return true;
}

LimitClass limit_class(std::int64_t p, std::int64_t i) {
  const std::int64_t n_min = stable_n_min(p, i);
  const KClass low = tensor_power_class(p, n_min, i);
  const KClass high = tensor_power_class(p, n_min + 1, i);
  if (low.mults != high.mults) {
    throw StabilityFailure("tensor power classes disagree between levels " +
                           std::to_string(n_min) + " and " + std::to_string(n_min + 1) +
                           " at (p, i) = (" + std::to_string(p) + ", " +
                           std::to_string(i) + ")");
  }
  LimitClass out;
  out.mults = low.mults;
  out.window = StableWindow{p, i, n_min, {n_min, n_min + 1}};
  return out;
}

Int limit_multiplicity(std::int64_t p, std::int64_t i, Label a, StableWindow* window) {
  const LimitClass lc = limit_class(p, i);
  if (window) *window = lc.window;
  auto it = lc.mults.find(a);
  return it == lc.mults.end() ? Int(0) : it->second;
}

bool be_equivalence_check(std::int64_t p, std::int64_t i, BEWitness* witness) {
  const LimitClass limit = limit_class(p, i);
  const WeightMap chars = tensor_power_simple_mults(p, i);
  // union of supports, smallest mismatch first
  auto lit = limit.mults.begin();
  auto cit = chars.begin();
  while (lit != limit.mults.end() || cit != chars.end()) {
    Label a;
    if (lit == limit.mults.end()) {
      a = cit->first;
    } else if (cit == chars.end()) {
      a = lit->first;
    } else {
      a = std::min(lit->first, cit->first);
    }
    const Int lhs = (lit != limit.mults.end() && lit->first == a) ? lit->second : Int(0);
    const Int rhs = (cit != chars.end() && cit->first == a) ? cit->second : Int(0);
    if (lhs != rhs) {
      if (witness) *witness = BEWitness{a, lhs, rhs};
      return false;
    }
    if (lit != limit.mults.end() && lit->first == a) ++lit;
    if (cit != chars.end() && cit->first == a) ++cit;
  }
  return true;
}

bool frobenius_limit_check(std::int64_t p, std::int64_t i) {
  const LimitClass limit = limit_class(p, i);
  std::map<Label, Int> doubled;
  for (const auto& [a, m] : limit.mults) doubled[p * a] = m;

  SymChar power = SymChar::unit();
  const SymChar v = weyl_char(1);
  for (std::int64_t k = 0; k < i; ++k) power = power * v;
  const WeightMap twisted = decompose_simples(frobenius_substitute(power, p), p);

  return doubled == twisted;
}

}  // namespace verlab
