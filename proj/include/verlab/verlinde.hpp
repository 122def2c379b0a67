#pragma once

// Grothendieck ring of the level-n Verlinde category at a prime p. Simple
// objects are labelled by Lambda = [0, p^n - p^{n-1}); fusion with the
// generator L_1 follows a two-case recursion in the base-p digits of the
// label, with the convention that any reference to a label outside Lambda of
// its level contributes zero. Full structure constants are obtained by
// expressing every simple class as an integer polynomial in [L_1] via the
// unitriangular tensor-power matrix.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "verlab/int.hpp"
#include "verlab/laurent.hpp"

namespace verlab {

using Label = std::int64_t;

// |Lambda| = p^n - p^{n-1}; labels run over [0, lambda_size).
std::int64_t lambda_size(std::int64_t p, std::int64_t n);
std::vector<Label> lambda_set(std::int64_t p, std::int64_t n);
bool label_in_lambda(std::int64_t p, std::int64_t n, Label a);

// An element of the Grothendieck group at level (p, n) in the simple basis.
// is_virtual marks intermediate values that may legitimately carry negative
// multiplicities (polynomial evaluation); classes of actual objects are
// flagged non-virtual after a nonnegativity check.
struct KClass {
  std::int64_t p = 0;
  std::int64_t n = 0;
  std::map<Label, Int> mults;  // finitely supported, no stored zeros
  bool is_virtual = true;

  static KClass zero(std::int64_t p, std::int64_t n);
  static KClass simple(std::int64_t p, std::int64_t n, Label a);

  void add(Label a, const Int& c);
  Int at(Label a) const;
  bool is_zero() const { return mults.empty(); }
  bool nonnegative() const;

  // Verifies all multiplicities >= 0 and clears the virtual flag;
  // throws NegativeMultiplicity otherwise.
  KClass checked_module_class() const;

  bool same_mults(const KClass& o) const { return mults == o.mults; }
};

// The class of L_1 (x) L_a in the simple basis. Throws LabelOutOfRange if a
// is not in Lambda, and NoSuchSimple at (p, n) = (2, 1) where L_1 does not
// exist.
KClass fuse_L1(std::int64_t p, std::int64_t n, Label a);

// The class of the i-th tensor power of L_1; propagates fuse_L1 errors.
KClass tensor_power_class(std::int64_t p, std::int64_t n, std::int64_t i);

// Level-(n+1) name of the level-n simple a: the label p*a.
Label embed_label(std::int64_t p, std::int64_t n, Label a);

inline constexpr std::int64_t kDefaultTableBudget = 50'000'000;

// Full structure constants N_{ab}^c of the level-(p, n) ring, with the
// tensor-power matrix and the polynomials expressing simples in [L_1].
struct FusionTable {
  std::int64_t p = 0;
  std::int64_t n = 0;
  Label lambda = 0;  // number of labels

  // power_matrix[j][b] = [tensor^j L_1 : L_b], rows j = 0 .. lambda-1.
  std::vector<std::vector<Int>> power_matrix;
  // simple_polys[a] = coefficients (by degree) of Q_a with [L_a] = Q_a([L_1]).
  std::vector<std::vector<Int>> simple_polys;

  const std::vector<std::pair<Label, Int>>& product(Label a, Label b) const;
  Int structure_constant(Label a, Label b, Label c) const;  // N_{ab}^c
  KClass product_class(Label a, Label b) const;
  KClass multiply(const KClass& x, const KClass& y) const;
  std::size_t stored_constants() const;

  std::vector<std::vector<std::pair<Label, Int>>> products;  // [a*lambda + b]
};

// Builds the table; throws BudgetExceeded when lambda^3 exceeds the budget.
FusionTable build_fusion_table(std::int64_t p, std::int64_t n,
                               std::int64_t budget = kDefaultTableBudget);

// Recovers Q_a from the unitriangular power matrix:
// Q_j = x^j - sum_{b<j} power_matrix[j][b] * Q_b.
std::vector<std::vector<Int>> simple_polys_from_power_matrix(
    const std::vector<std::vector<Int>>& power_matrix);

// --- persistent cache ------------------------------------------------------
// JSON schema: {"schema":1,"p":..,"n":..,"lambda_max":..,
//               "power_matrix":[["1","0",...],...],
//               "constants":[[a,b,c,"N"],...]} sorted by (a,b,c).
// Unbounded entries are stored as decimal strings so loads are exact.

std::filesystem::path fusion_cache_file(const std::filesystem::path& dir,
                                        std::int64_t p, std::int64_t n);
void save_fusion_table(const FusionTable& table,
                       const std::filesystem::path& file);
FusionTable load_fusion_table(const std::filesystem::path& file);

struct TableStats {
  std::int64_t memory_hits = 0;
  std::int64_t disk_loads = 0;
  std::int64_t builds = 0;
};

struct TableOptions {
  std::optional<std::filesystem::path> cache_dir;
  std::int64_t budget = kDefaultTableBudget;
};

// Process-wide store of immutable tables keyed by (p, n), with an optional
// disk cache. Cached files are written to a temporary and renamed into
// place, so concurrent builders are safe.
class TableStore {
 public:
  static TableStore& instance();
  std::shared_ptr<const FusionTable> get(std::int64_t p, std::int64_t n,
                                         const TableOptions& options = {});
  TableStats stats() const;
  void reset();

 private:
  TableStore();
  ~TableStore();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// --- images of tilting objects and derived checks --------------------------

// Evaluates P_m at [L_1]; the result is the (nonnegative) class of the image
// of T(m) at level (p, n), and is zero exactly when m >= p^n - 1.
KClass tilting_image_class(std::int64_t p, std::int64_t n, Weight m);

// Evaluates an integer polynomial at [L_base] inside the ring.
KClass general_image_class(const FusionTable& table, Label base,
                           std::span<const Int> poly);

// [L_a] equals the ring product of the tilting images prescribed by the
// base-p digits of a (digit a_k contributes P_{a_k} evaluated at [L_{p^k}]).
bool steinberg_factorization_check(const FusionTable& table, Label a);

// Labels a = p^i + p^{i-1}(p-2), 1 <= i <= n-1, intersected with Lambda;
// the locus where Ext^1(L_a, 1) is one-dimensional.
std::vector<Label> ext1_locus(std::int64_t p, std::int64_t n);

// The image of T(2p-2) at depth j has class 2*[1] + [L_c] with
// c = (2p-2)*p^{n-j-1}, the [L_c] term dropped when c falls outside Lambda.
bool t2p2_check(const FusionTable& table, std::int64_t j);

// Independent oracle for n = 1: the closed-form level-(p-2) fusion rule.
KClass verp_closed_fusion(std::int64_t p, Label a, Label b);

// Dominant eigenvalue of the fusion matrix (N_a)_{bc} = N_{ab}^c by power
// iteration (on the matrix shifted by the identity, which removes the
// period-two oscillation nonnegative matrices can exhibit). Stops when
// successive estimates differ by < 1e-9; throws NoConvergence after 10^4
// iterations. Test oracle only; never feeds exact results.
double fpdim_estimate(const FusionTable& table, Label a);

}  // namespace verlab
