#include "verlab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "verlab/errors.hpp"
#include "verlab/frobenius.hpp"
#include "verlab/sl2.hpp"
#include "verlab/version.hpp"

namespace verlab {

namespace {

using OJson = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
      .count();
}

std::string str(std::int64_t v) { return std::to_string(v); }

std::shared_ptr<const FusionTable> table_for(const VerifyConfig& cfg, std::int64_t p,
                                             std::int64_t n) {
  TableOptions opt;
  opt.cache_dir = cfg.cache_dir;
  opt.budget = cfg.budget;
  return TableStore::instance().get(p, n, opt);
}

struct InstanceRunner {
  std::string id;
  std::vector<CheckResult> results;

  // passed/witness provided by body; elapsed measured here
  template <typename Body>
  void run(std::map<std::string, std::string> params, Body&& body) {
    const auto start = Clock::now();
    OJson witness;
    const bool passed = body(witness);
    CheckResult r;
    r.check_id = id;
    r.params = std::move(params);
    r.passed = passed;
    if (!passed) r.witness = std::move(witness);
    r.elapsed_ms = elapsed_ms_since(start);
    results.push_back(std::move(r));
  }
};

// ---- be_equivalence ---------------------------------------------------------

std::vector<CheckResult> run_be_equivalence(const VerifyConfig& cfg) {
  InstanceRunner runner{"be_equivalence", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t i = 1; i <= cfg.max_i; ++i) {
      runner.run({{"i", str(i)}, {"p", str(p)}}, [&](OJson& witness) {
        BEWitness w;
        if (be_equivalence_check(p, i, &w)) return true;
        witness = OJson{{"a", w.a},
                        {"limit_side", w.limit_side.str()},
                        {"char_side", w.char_side.str()}};
        return false;
      });
    }
  }
  return runner.results;
}

// ---- stabilization ----------------------------------------------------------

std::vector<CheckResult> run_stabilization(const VerifyConfig& cfg) {
  InstanceRunner runner{"stabilization", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t r = 1; r <= cfg.max_i; ++r) {
      runner.run({{"p", str(p)}, {"r", str(r)}}, [&](OJson& witness) {
        const std::int64_t n1 = stable_n_min(p, r);
        for (std::int64_t n : {n1 + 1, n1 + 2}) {
          StabilizationWitness w;
          if (!stabilization_check(p, n, r, cfg.override_bounds, &w)) {
            witness = OJson{{"n", n},
                            {"i", w.i},
                            {"label", w.label},
                            {"reason", w.reason},
                            {"level_n", w.level_n.str()},
                            {"level_prev", w.level_prev.str()}};
            return false;
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

// ---- tilting_vanishing ------------------------------------------------------

std::vector<CheckResult> run_tilting_vanishing(const VerifyConfig& cfg) {
  InstanceRunner runner{"tilting_vanishing", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t n = 1; n <= cfg.level_cap(p); ++n) {
      runner.run({{"n", str(n)}, {"p", str(p)}}, [&](OJson& witness) {
        const std::int64_t pn = checked_pow(p, n);
        for (Weight m = 0; m <= pn + 5; ++m) {
          const bool zero = tilting_image_class(p, n, m).is_zero();
          const bool should_vanish = m >= pn - 1;
          if (zero != should_vanish) {
            witness = OJson{{"m", m}, {"zero", zero}, {"expected_zero", should_vanish}};
            return false;
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

// ---- steinberg_factorization ------------------------------------------------

std::vector<CheckResult> run_steinberg_factorization(const VerifyConfig& cfg) {
  InstanceRunner runner{"steinberg_factorization", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t n = 1; n <= cfg.level_cap(p); ++n) {
      runner.run({{"n", str(n)}, {"p", str(p)}}, [&](OJson& witness) {
        const auto table = table_for(cfg, p, n);
        for (Label a = 0; a < table->lambda; ++a) {
          if (!steinberg_factorization_check(*table, a)) {
            witness = OJson{{"a", a}};
            return false;
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

// ---- ext_locus --------------------------------------------------------------

std::vector<CheckResult> run_ext_locus(const VerifyConfig& cfg) {
  InstanceRunner runner{"ext_locus", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t n = 1; n <= cfg.level_cap(p); ++n) {
      runner.run({{"n", str(n)}, {"p", str(p)}}, [&](OJson& witness) {
        const std::vector<Label> locus = ext1_locus(p, n);
        const std::set<Label> locus_set(locus.begin(), locus.end());
        if (n == 1) return locus.empty();
        const auto table = table_for(cfg, p, n);
        for (std::int64_t j = 1; j <= n - 1; ++j) {
          if (!t2p2_check(*table, j)) {
            witness = OJson{{"j", j}, {"kind", "constituents"}};
            return false;
          }
          // the middle constituent's label is the locus point at i = n-j
          const Label c = (2 * p - 2) * checked_pow(p, n - j - 1);
          if (label_in_lambda(p, n, c) != (locus_set.count(c) > 0)) {
            witness = OJson{{"j", j}, {"kind", "locus"}, {"c", c}};
            return false;
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

// ---- ring_axioms -------------------------------------------------------------

// int64 view of a table; usable whenever every constant is small, which the
// desk-scale grids guarantee (checked before use).
struct DenseCube {
  std::int64_t lambda = 0;
  std::vector<std::int64_t> data;  // [a][b][c]

  std::int64_t at(Label a, Label b, Label c) const {
    return data[static_cast<std::size_t>((a * lambda + b) * lambda + c)];
  }
};

std::optional<DenseCube> to_cube(const FusionTable& t) {
  constexpr std::int64_t kMax = std::int64_t(1) << 20;
  DenseCube cube;
  cube.lambda = t.lambda;
  if (t.lambda >= (std::int64_t(1) << 17)) return std::nullopt;
  cube.data.assign(static_cast<std::size_t>(t.lambda * t.lambda * t.lambda), 0);
  for (Label a = 0; a < t.lambda; ++a) {
    for (Label b = 0; b < t.lambda; ++b) {
      for (const auto& [c, m] : t.product(a, b)) {
        if (m < 0 || m >= kMax) return std::nullopt;
        cube.data[static_cast<std::size_t>((a * t.lambda + b) * t.lambda + c)] =
            m.convert_to<std::int64_t>();
      }
    }
  }
  return cube;
}

bool associativity_triple(const DenseCube& cube, Label a, Label b, Label c,
                          std::vector<std::int64_t>& lhs,
                          std::vector<std::int64_t>& rhs) {
  const std::int64_t lam = cube.lambda;
  std::fill(lhs.begin(), lhs.end(), 0);
  std::fill(rhs.begin(), rhs.end(), 0);
  for (Label e = 0; e < lam; ++e) {
    const std::int64_t nab = cube.at(a, b, e);
    if (nab != 0) {
      for (Label d = 0; d < lam; ++d) lhs[static_cast<std::size_t>(d)] += nab * cube.at(e, c, d);
    }
    const std::int64_t nbc = cube.at(b, c, e);
    if (nbc != 0) {
      for (Label d = 0; d < lam; ++d) rhs[static_cast<std::size_t>(d)] += nbc * cube.at(a, e, d);
    }
  }
  return lhs == rhs;
}

// Generic (unbounded) associativity for one triple; only used when the
// int64 fast path is unavailable.
bool associativity_triple_exact(const FusionTable& t, Label a, Label b, Label c) {
  std::map<Label, Int> lhs, rhs;
  for (const auto& [e, nab] : t.product(a, b)) {
    for (const auto& [d, m] : t.product(e, c)) {
      lhs[d] += nab * m;
      if (lhs[d] == 0) lhs.erase(d);
    }
  }
  for (const auto& [e, nbc] : t.product(b, c)) {
    for (const auto& [d, m] : t.product(a, e)) {
      rhs[d] += nbc * m;
      if (rhs[d] == 0) rhs.erase(d);
    }
  }
  return lhs == rhs;
}

std::vector<CheckResult> run_ring_axioms(const VerifyConfig& cfg) {
  InstanceRunner runner{"ring_axioms", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t n = 1; n <= cfg.level_cap(p); ++n) {
      runner.run({{"n", str(n)}, {"p", str(p)}}, [&](OJson& witness) {
        const auto table = table_for(cfg, p, n);
        const Label lam = table->lambda;
        // unit
        for (Label b = 0; b < lam; ++b) {
          const auto& row = table->product(0, b);
          if (row.size() != 1 || row[0].first != b || row[0].second != 1) {
            witness = OJson{{"axiom", "unit"}, {"b", b}};
            return false;
          }
        }
        // commutativity and nonnegativity
        for (Label a = 0; a < lam; ++a) {
          for (Label b = a; b < lam; ++b) {
            if (table->product(a, b) != table->product(b, a)) {
              witness = OJson{{"axiom", "commutativity"}, {"a", a}, {"b", b}};
              return false;
            }
            for (const auto& [c, m] : table->product(a, b)) {
              if (m < 0) {
                witness = OJson{{"axiom", "nonnegativity"}, {"a", a}, {"b", b}, {"c", c}};
                return false;
              }
            }
          }
        }
        // associativity: exhaustive for |Lambda| <= 60, sampled otherwise
        const bool exhaustive = lam <= 60;
        const auto cube = to_cube(*table);
        auto check_triple = [&](Label a, Label b, Label c,
                                std::vector<std::int64_t>& lhs,
                                std::vector<std::int64_t>& rhs) {
          if (cube) return associativity_triple(*cube, a, b, c, lhs, rhs);
          return associativity_triple_exact(*table, a, b, c);
        };
        std::vector<std::int64_t> lhs(static_cast<std::size_t>(lam)),
            rhs(static_cast<std::size_t>(lam));
        if (exhaustive) {
          for (Label a = 0; a < lam; ++a) {
            for (Label b = 0; b < lam; ++b) {
              for (Label c = 0; c < lam; ++c) {
                if (!check_triple(a, b, c, lhs, rhs)) {
                  witness = OJson{{"axiom", "associativity"}, {"a", a}, {"b", b}, {"c", c}};
                  return false;
                }
              }
            }
          }
        } else {
          std::mt19937_64 rng(cfg.sample_seed ^ (static_cast<std::uint64_t>(p) << 32) ^
                              static_cast<std::uint64_t>(n));
          std::uniform_int_distribution<Label> dist(0, lam - 1);
          for (int k = 0; k < 10000; ++k) {
            const Label a = dist(rng), b = dist(rng), c = dist(rng);
            if (!check_triple(a, b, c, lhs, rhs)) {
              witness = OJson{{"axiom", "associativity"}, {"a", a}, {"b", b}, {"c", c}};
              return false;
            }
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

// ---- n1_closed_fusion --------------------------------------------------------

std::vector<CheckResult> run_n1_closed_fusion(const VerifyConfig& cfg) {
  InstanceRunner runner{"n1_closed_fusion", {}};
  for (std::int64_t p : cfg.primes) {
    runner.run({{"p", str(p)}}, [&](OJson& witness) {
      const auto table = table_for(cfg, p, 1);
      for (Label a = 0; a < table->lambda; ++a) {
        for (Label b = 0; b < table->lambda; ++b) {
          if (!table->product_class(a, b).same_mults(verp_closed_fusion(p, a, b))) {
            witness = OJson{{"a", a}, {"b", b}};
            return false;
          }
        }
      }
      return true;
    });
  }
  return runner.results;
}

// ---- embedding_compatibility ---------------------------------------------------

std::vector<CheckResult> run_embedding_compatibility(const VerifyConfig& cfg) {
  InstanceRunner runner{"embedding_compatibility", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t n = 1; n + 1 <= cfg.level_cap(p); ++n) {
      runner.run({{"n", str(n)}, {"p", str(p)}}, [&](OJson& witness) {
        const auto lower = table_for(cfg, p, n);
        const auto upper = table_for(cfg, p, n + 1);
        for (Label a = 0; a < lower->lambda; ++a) {
          for (Label b = 0; b < lower->lambda; ++b) {
            for (Label c = 0; c < lower->lambda; ++c) {
              if (lower->structure_constant(a, b, c) !=
                  upper->structure_constant(p * a, p * b, p * c)) {
                witness = OJson{{"a", a}, {"b", b}, {"c", c}};
                return false;
              }
            }
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

// ---- tilting_steinberg ---------------------------------------------------------

std::vector<CheckResult> run_tilting_steinberg(const VerifyConfig& cfg) {
  InstanceRunner runner{"tilting_steinberg", {}};
  for (std::int64_t p : cfg.primes) {
    runner.run({{"p", str(p)}}, [&](OJson& witness) {
      auto fail = [&](const char* part, std::int64_t m) {
        witness = OJson{{"part", part}, {"m", m}};
        return false;
      };
      for (Weight m = 0; m <= cfg.max_weight; ++m) {
        const SymChar tm = tilting_char(p, m);
        // (i) Weyl coefficients of a tilting character: nonnegative, top one
        const WeightMap weyl = decompose_weyls(tm);
        for (const auto& [w, c] : weyl) {
          if (c < 0) return fail("weyl_nonneg", m);
          (void)w;
        }
        if (weyl.count(m) == 0 || weyl.at(m) != 1) return fail("weyl_top", m);
        // (ii) simple coefficients nonnegative
        for (const auto& [w, c] : decompose_simples(tm, p)) {
          if (c < 0) return fail("simple_nonneg", m);
          (void)w;
        }
        // (v) fusing with T(1)
        const WeightMap fused = decompose_tiltings(tm * tilting_char(p, 1), p);
        for (const auto& [w, c] : fused) {
          if (c < 0) return fail("fuse_t1_nonneg", m);
          (void)w;
        }
        if (m <= p - 2) {
          WeightMap expected;
          expected[m + 1] = 1;
          if (m >= 1) expected[m - 1] = 1;
          if (fused != expected) return fail("fuse_t1_clebsch", m);
        }
      }
      // (iv) tensor powers of the standard character decompose into tiltings
      SymChar power = SymChar::unit();
      const SymChar v = weyl_char(1);
      for (Weight i = 0; i <= cfg.max_weight; ++i) {
        const WeightMap td = decompose_tiltings(power, p);
        for (const auto& [w, c] : td) {
          if (c < 0) return fail("power_nonneg", i);
          (void)w;
        }
        if (td.count(i) == 0 || td.at(i) != 1) return fail("power_top", i);
        power = power * v;
      }
      // (iii) Steinberg characters are simple, and (vi) the good-filtration
      // shadow: St_r (x) L(m) is tilting for m <= 2p^r - 1
      for (int r = 0; r <= 4; ++r) {
        const Weight st = checked_pow(p, r) - 1;
        if (tilting_char(p, st) != simple_char(p, st)) return fail("steinberg_simple", r);
        const SymChar st_char = steinberg_char(p, r);
        const Weight m_cap = std::min<Weight>(cfg.max_weight, 2 * checked_pow(p, r) - 1);
        for (Weight m = 0; m <= m_cap; ++m) {
          if (!is_tilting_char(simple_char(p, m) * st_char, p)) {
            witness = OJson{{"part", "good_filtration"}, {"r", r}, {"m", m}};
            return false;
          }
        }
      }
      return true;
    });
  }
  return runner.results;
}

// ---- frobenius_limit / frobenius_labels ----------------------------------------

std::vector<CheckResult> run_frobenius_limit(const VerifyConfig& cfg) {
  InstanceRunner runner{"frobenius_limit", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t i = 1; i <= cfg.max_i; ++i) {
      runner.run({{"i", str(i)}, {"p", str(p)}}, [&](OJson&) {
        return frobenius_limit_check(p, i);
      });
    }
  }
  return runner.results;
}

std::vector<CheckResult> run_frobenius_labels(const VerifyConfig& cfg) {
  InstanceRunner runner{"frobenius_labels", {}};
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t n = 2; n <= cfg.level_cap(p); ++n) {
      runner.run({{"n", str(n)}, {"p", str(p)}}, [&](OJson& witness) {
        const std::int64_t lower = lambda_size(p, n - 1);
        for (Label b = 0; b < lower; ++b) {
          if (frobenius_label(p, n, b) != b) {
            witness = OJson{{"b", b}, {"kind", "identity"}};
            return false;
          }
          const Label embedded = embed_label(p, n - 1, frobenius_label(p, n, b));
          if (embedded != p * b || !label_in_lambda(p, n, embedded)) {
            witness = OJson{{"b", b}, {"kind", "composition"}};
            return false;
          }
        }
        for (Label b = lower; b < lambda_size(p, n); ++b) {
          bool threw = false;
          try {
            frobenius_label(p, n, b);
          } catch (const OutsideFrobeniusDomain&) {
            threw = true;
          }
          if (!threw) {
            witness = OJson{{"b", b}, {"kind", "domain"}};
            return false;
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

// ---- fpdim_consistency ----------------------------------------------------------

std::vector<CheckResult> run_fpdim_consistency(const VerifyConfig& cfg) {
  InstanceRunner runner{"fpdim_consistency", {}};
  // The spectral gap of the fusion matrices closes as |Lambda| grows, and
  // with it the accuracy the 1e-9 stopping rule can deliver; past 20 labels
  // the homomorphism residuals start brushing the 1e-6 tolerance. The
  // numeric oracle therefore stays on levels with |Lambda| <= 20.
  const std::int64_t lambda_cap = std::min<std::int64_t>(cfg.max_lambda, 20);
  for (std::int64_t p : cfg.primes) {
    for (std::int64_t n = 1; n <= cfg.level_cap(p) && lambda_size(p, n) <= lambda_cap;
         ++n) {
      runner.run({{"n", str(n)}, {"p", str(p)}}, [&](OJson& witness) {
        const auto table = table_for(cfg, p, n);
        const Label lam = table->lambda;
        std::vector<double> fp(static_cast<std::size_t>(lam));
        for (Label a = 0; a < lam; ++a) {
          fp[static_cast<std::size_t>(a)] = fpdim_estimate(*table, a);
        }
        if (std::abs(fp[0] - 1.0) > 1e-6) {
          witness = OJson{{"kind", "unit"}, {"value", fp[0]}};
          return false;
        }
        if (p == 2 && n == 2 && std::abs(fp[1] - std::sqrt(2.0)) > 1e-6) {
          witness = OJson{{"kind", "pinned"}, {"value", fp[1]}};
          return false;
        }
        const double pi = std::acos(-1.0);
        if (p == 2 && n == 3 && std::abs(fp[1] - 2.0 * std::cos(pi / 8.0)) > 1e-6) {
          witness = OJson{{"kind", "pinned"}, {"value", fp[1]}};
          return false;
        }
        for (Label a = 0; a < lam; ++a) {
          for (Label b = 0; b < lam; ++b) {
            double sum = 0.0;
            for (const auto& [c, m] : table->product(a, b)) {
              sum += m.convert_to<double>() * fp[static_cast<std::size_t>(c)];
            }
            const double residual =
                std::abs(fp[static_cast<std::size_t>(a)] * fp[static_cast<std::size_t>(b)] - sum);
            if (residual > 1e-6) {
              witness = OJson{{"kind", "homomorphism"}, {"a", a}, {"b", b},
                              {"residual", residual}};
              return false;
            }
          }
        }
        return true;
      });
    }
  }
  return runner.results;
}

struct CheckDef {
  const char* id;
  const char* statement;
  std::vector<CheckResult> (*run)(const VerifyConfig&);
};

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"be_equivalence",
       "Stable multiplicities of tensor powers of the generator equal the simple "
       "multiplicities of tensor powers of the standard SL2 character in characteristic p.",
       &run_be_equivalence},
      {"embedding_compatibility",
       "N_{ab}^c at level n equals N_{pa,pb}^{pc} at level n+1.",
       &run_embedding_compatibility},
      {"ext_locus",
       "The image of T(2p-2) at depth j has class 2[1] + [L_c] with c = (2p-2)p^{n-j-1}, "
       "matching the locus {p^i + p^{i-1}(p-2)} of simples with a self-extension of the unit.",
       &run_ext_locus},
      {"fpdim_consistency",
       "Estimated Frobenius-Perron dimensions form an approximate ring homomorphism "
       "on the structure constants.",
       &run_fpdim_consistency},
      {"frobenius_labels",
       "The Frobenius label map is the identity on Lambda at level n-1, errors outside "
       "it, and composes with the level embedding to multiplication by p.",
       &run_frobenius_labels},
      {"frobenius_limit",
       "Label multiplication by p on the stable class matches the simple decomposition "
       "of the p-substituted character.",
       &run_frobenius_limit},
      {"n1_closed_fusion",
       "Level-1 structure constants equal the closed-form level-(p-2) fusion rule.",
       &run_n1_closed_fusion},
      {"ring_axioms",
       "Structure constants define a commutative unital ring with nonnegative constants "
       "and associative multiplication.",
       &run_ring_axioms},
      {"stabilization",
       "Tensor-power classes agree entrywise across neighbouring levels once "
       "2r < p^{n-1} - p^{n-2}.",
       &run_stabilization},
      {"steinberg_factorization",
       "Every simple class is the ring product of the tilting images prescribed by the "
       "base-p digits of its label.",
       &run_steinberg_factorization},
      {"tilting_steinberg",
       "Tilting characters validate against Weyl/simple/tilting decompositions; the "
       "Steinberg character of each level is simple; Steinberg twists of simples are tilting.",
       &run_tilting_steinberg},
      {"tilting_vanishing",
       "The image of T(m) at level (p, n) is zero exactly when m >= p^n - 1.",
       &run_tilting_vanishing},
  };
  return defs;
}

}  // namespace

std::int64_t VerifyConfig::level_cap(std::int64_t p) const {
  std::int64_t cap = 0;
  std::int64_t n = 1;
  while (lambda_size(p, n) <= max_lambda && (!max_n || n <= *max_n)) {
    cap = n;
    ++n;
  }
  return cap;
}

int VerificationReport::passed_count() const {
  int count = 0;
  for (const auto& r : results) count += r.passed ? 1 : 0;
  return count;
}

int VerificationReport::failed_count() const {
  return static_cast<int>(results.size()) - passed_count();
}

std::vector<CheckInfo> registered_checks() {
  std::vector<CheckInfo> out;
  for (const auto& def : registry()) out.push_back({def.id, def.statement});
  return out;
}

VerificationReport run_suite(const std::vector<std::string>& suite,
                             const VerifyConfig& config) {
  VerifyConfig cfg = config;
  std::sort(cfg.primes.begin(), cfg.primes.end());
  cfg.primes.erase(std::unique(cfg.primes.begin(), cfg.primes.end()), cfg.primes.end());
  for (std::int64_t p : cfg.primes) require_prime(p);

  std::set<std::string> wanted(suite.begin(), suite.end());
  for (const auto& id : wanted) {
    const bool known = std::any_of(registry().begin(), registry().end(),
                                   [&](const CheckDef& def) { return id == def.id; });
    if (!known) {
      std::string names;
      for (const auto& def : registry()) {
        if (!names.empty()) names += ", ";
        names += def.id;
      }
      throw UnknownCheckId("no check named '" + id + "'; available: " + names);
    }
  }

  VerificationReport report;
  report.version = kVersion;
  for (const auto& def : registry()) {
    if (wanted.count(def.id) == 0) continue;
    auto results = def.run(cfg);
    report.results.insert(report.results.end(),
                          std::make_move_iterator(results.begin()),
                          std::make_move_iterator(results.end()));
  }
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const CheckResult& x, const CheckResult& y) {
                     if (x.check_id != y.check_id) return x.check_id < y.check_id;
                     return x.params < y.params;
                   });
  return report;
}

std::string emit_report(const VerificationReport& report, ReportFormat format) {
  if (format == ReportFormat::kJson) {
    OJson doc;
    doc["schema"] = report.schema;
    OJson results = OJson::array();
    for (const auto& r : report.results) {
      OJson jr;
      jr["check_id"] = r.check_id;
      OJson params;
      for (const auto& [k, v] : r.params) params[k] = v;
      jr["params"] = std::move(params);
      jr["passed"] = r.passed;
      if (!r.passed) jr["witness"] = r.witness;
      jr["elapsed_ms"] = r.elapsed_ms;
      results.push_back(std::move(jr));
    }
    doc["results"] = std::move(results);
    doc["summary"] = OJson{{"passed", report.passed_count()},
                           {"failed", report.failed_count()}};
    return doc.dump();
  }

  std::ostringstream os;
  os << "# Verification report (v" << report.version << ")\n\n";
  os << "| check | params | passed | elapsed (ms) |\n";
  os << "|---|---|---|---|\n";
  for (const auto& r : report.results) {
    os << "| " << r.check_id << " | ";
    bool first = true;
    for (const auto& [k, v] : r.params) {
      if (!first) os << ", ";
      first = false;
      os << k << "=" << v;
    }
    os << " | " << (r.passed ? "yes" : "NO") << " | " << r.elapsed_ms << " |\n";
    if (!r.passed) os << "|  | witness: " << r.witness.dump() << " |  |  |\n";
  }
  os << "\npassed: " << report.passed_count() << ", failed: " << report.failed_count()
     << "\n";
  return os.str();
}

VerificationReport parse_report(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  if (!doc.contains("schema") || doc["schema"].get<int>() != 1) {
    throw ParseError("unsupported report schema");
  }
  VerificationReport report;
  report.version = kVersion;
  for (const auto& jr : doc.at("results")) {
    CheckResult r;
    r.check_id = jr.at("check_id").get<std::string>();
    for (const auto& [k, v] : jr.at("params").items()) {
      r.params[k] = v.get<std::string>();
    }
    r.passed = jr.at("passed").get<bool>();
    if (jr.contains("witness")) r.witness = jr["witness"];
    r.elapsed_ms = jr.at("elapsed_ms").get<std::int64_t>();
    report.results.push_back(std::move(r));
  }
  return report;
}

}  // namespace verlab
