#include "verlab/verlinde.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <string>

#include <json.hpp>

#include "verlab/errors.hpp"
#include "verlab/sl2.hpp"

namespace verlab {

namespace {

void require_level(std::int64_t n) {
  if (n < 1) {
    throw Error("InvalidLevel", "level n must be >= 1, got " + std::to_string(n));
  }
}

// [L_1 (x) L_a] at level (p, n) with the out-of-range-is-zero convention.
// Callers guarantee a in Lambda; the recursion preserves that. Returns the
// empty map when L_1 itself does not exist (p = 2, n = 1), since tensoring
// with the zero object gives zero.
std::map<Label, Int> fuse_mults(std::int64_t p, std::int64_t n, Label a) {
  if (!label_in_lambda(p, n, 1)) return {};
  std::map<Label, Int> out;
  const Label a0 = a % p;
  if (a0 < p - 1) {
    if (label_in_lambda(p, n, a + 1)) out[a + 1] += 1;
    if (a0 > 0) out[a - 1] += 1;
  } else {
    // a0 = p-1 forces n > 1: the top label of Lambda at n = 1 is p-2.
    out[a - 1] += 2;
    for (const auto& [b, m] : fuse_mults(p, n - 1, (a + 1 - p) / p)) {
      out[p * b] += m;
    }
  }
  return out;
}

void sparse_axpy(std::map<Label, Int>& acc, const Int& c,
                 const std::map<Label, Int>& x) {
  if (c == 0) return;
  for (const auto& [k, v] : x) {
    Int& slot = acc[k];
    slot += c * v;
    if (slot == 0) acc.erase(k);
  }
}

}  // namespace

std::int64_t lambda_size(std::int64_t p, std::int64_t n) {
  require_prime(p);
  require_level(n);
  return checked_pow(p, n) - checked_pow(p, n - 1);
}

std::vector<Label> lambda_set(std::int64_t p, std::int64_t n) {
  const std::int64_t size = lambda_size(p, n);
  std::vector<Label> labels(static_cast<std::size_t>(size));
  for (std::int64_t a = 0; a < size; ++a) labels[static_cast<std::size_t>(a)] = a;
  return labels;
}

bool label_in_lambda(std::int64_t p, std::int64_t n, Label a) {
  return a >= 0 && a < lambda_size(p, n);
}

KClass KClass::zero(std::int64_t p, std::int64_t n) {
  KClass k;
  k.p = p;
  k.n = n;
  k.is_virtual = false;
  return k;
}

KClass KClass::simple(std::int64_t p, std::int64_t n, Label a) {
  if (!label_in_lambda(p, n, a)) {
    throw LabelOutOfRange("label " + std::to_string(a) + " outside Lambda at (p, n) = (" +
                          std::to_string(p) + ", " + std::to_string(n) + ")");
  }
  KClass k = zero(p, n);
  k.mults[a] = 1;
  return k;
}

void KClass::add(Label a, const Int& c) {
  if (c == 0) return;
  Int& slot = mults[a];
  slot += c;
  if (slot == 0) mults.erase(a);
}

Int KClass::at(Label a) const {
  auto it = mults.find(a);
  return it == mults.end() ? Int(0) : it->second;
}

bool KClass::nonnegative() const {
  for (const auto& [a, c] : mults) {
    (void)a;
    if (c < 0) return false;
  }
  return true;
}

KClass KClass::checked_module_class() const {
  if (!nonnegative()) {
    throw NegativeMultiplicity("class of an actual object has a negative multiplicity");
  }
  KClass k = *this;
  k.is_virtual = false;
  return k;
}

KClass fuse_L1(std::int64_t p, std::int64_t n, Label a) {
  require_prime(p);
  require_level(n);
  if (p == 2 && n == 1) {
    throw NoSuchSimple("L_1 does not exist at (p, n) = (2, 1)");
  }
  if (!label_in_lambda(p, n, a)) {
    throw LabelOutOfRange("label " + std::to_string(a) + " outside Lambda at (p, n) = (" +
                          std::to_string(p) + ", " + std::to_string(n) + ")");
  }
  KClass k = KClass::zero(p, n);
  k.mults = fuse_mults(p, n, a);
  return k;
}

KClass tensor_power_class(std::int64_t p, std::int64_t n, std::int64_t i) {
  require_prime(p);
  require_level(n);
  if (i < 0) throw Error("NegativeWeight", "tensor power requires i >= 0");
  if (i > 0 && p == 2 && n == 1) {
    throw NoSuchSimple("L_1 does not exist at (p, n) = (2, 1)");
  }
  std::map<Label, std::map<Label, Int>> fuse_memo;
  std::map<Label, Int> cur;
  cur[0] = 1;
  for (std::int64_t step = 0; step < i; ++step) {
    std::map<Label, Int> next;
    for (const auto& [a, m] : cur) {
      auto it = fuse_memo.find(a);
      if (it == fuse_memo.end()) {
        it = fuse_memo.emplace(a, fuse_mults(p, n, a)).first;
      }
      sparse_axpy(next, m, it->second);
    }
    cur = std::move(next);
  }
  KClass k = KClass::zero(p, n);
  k.mults = std::move(cur);
  return k.checked_module_class();
}

Label embed_label(std::int64_t p, std::int64_t n, Label a) {
  if (!label_in_lambda(p, n, a)) {
    throw LabelOutOfRange("label " + std::to_string(a) + " outside Lambda at (p, n) = (" +
                          std::to_string(p) + ", " + std::to_string(n) + ")");
  }
  return p * a;
}

const std::vector<std::pair<Label, Int>>& FusionTable::product(Label a, Label b) const {
  if (a < 0 || a >= lambda || b < 0 || b >= lambda) {
    throw LabelOutOfRange("product index (" + std::to_string(a) + ", " +
                          std::to_string(b) + ") outside Lambda");
  }
  return products[static_cast<std::size_t>(a * lambda + b)];
}

Int FusionTable::structure_constant(Label a, Label b, Label c) const {
  const auto& row = product(a, b);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const std::pair<Label, Int>& e, Label key) {
                               return e.first < key;
                             });
  if (it == row.end() || it->first != c) return 0;
  return it->second;
}

KClass FusionTable::product_class(Label a, Label b) const {
  KClass k = KClass::zero(p, n);
  for (const auto& [c, m] : product(a, b)) k.mults[c] = m;
  return k;
}

KClass FusionTable::multiply(const KClass& x, const KClass& y) const {
  if (x.p != p || x.n != n || y.p != p || y.n != n) {
    throw Error("LevelMismatch", "multiplying classes from different rings");
  }
  KClass out;
  out.p = p;
  out.n = n;
  out.is_virtual = x.is_virtual || y.is_virtual;
  for (const auto& [a, ca] : x.mults) {
    for (const auto& [b, cb] : y.mults) {
      const Int c = ca * cb;
      for (const auto& [d, m] : product(a, b)) out.add(d, c * m);
    }
  }
  return out;
}

std::size_t FusionTable::stored_constants() const {
  std::size_t total = 0;
  for (const auto& row : products) total += row.size();
  return total;
}

std::vector<std::vector<Int>> simple_polys_from_power_matrix(
    const std::vector<std::vector<Int>>& power_matrix) {
  const std::size_t lam = power_matrix.size();
  std::vector<std::vector<Int>> q(lam);
  for (std::size_t j = 0; j < lam; ++j) {
    if (power_matrix[j][j] != 1) {
      throw Error("Unitriangularity", "power matrix diagonal entry is not 1 at row " +
                                          std::to_string(j));
    }
    for (std::size_t b = j + 1; b < lam; ++b) {
      if (power_matrix[j][b] != 0) {
        throw Error("Unitriangularity", "power matrix has a nonzero entry above the diagonal");
      }
    }
    std::vector<Int> poly(j + 1, Int(0));
    poly[j] = 1;
    for (std::size_t b = 0; b < j; ++b) {
      const Int& c = power_matrix[j][b];
      if (c == 0) continue;
      for (std::size_t k = 0; k <= b; ++k) poly[k] -= c * q[b][k];
    }
    q[j] = std::move(poly);
  }
  return q;
}

FusionTable build_fusion_table(std::int64_t p, std::int64_t n, std::int64_t budget) {
  const std::int64_t lam = lambda_size(p, n);
  const Int required = Int(lam) * lam * lam;
  if (required > budget) {
    throw BudgetExceeded("fusion table at (p, n) = (" + std::to_string(p) + ", " +
                         std::to_string(n) + ") needs " + required.str() +
                         " entries; budget is " + std::to_string(budget));
  }

  FusionTable t;
  t.p = p;
  t.n = n;
  t.lambda = lam;

  std::vector<std::map<Label, Int>> fuse_rows(static_cast<std::size_t>(lam));
  for (Label a = 0; a < lam; ++a) {
    fuse_rows[static_cast<std::size_t>(a)] = fuse_mults(p, n, a);
  }

  // tensor powers of the generator, rows 0 .. lambda-1
  t.power_matrix.assign(static_cast<std::size_t>(lam),
                        std::vector<Int>(static_cast<std::size_t>(lam), Int(0)));
  std::map<Label, Int> cur;
  cur[0] = 1;
  for (Label j = 0; j < lam; ++j) {
    for (const auto& [b, m] : cur) {
      t.power_matrix[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)] = m;
    }
    if (j + 1 < lam) {
      std::map<Label, Int> next;
      for (const auto& [a, m] : cur) {
        sparse_axpy(next, m, fuse_rows[static_cast<std::size_t>(a)]);
      }
      cur = std::move(next);
    }
  }

  t.simple_polys = simple_polys_from_power_matrix(t.power_matrix);

  // products [L_a (x) L_b] for all pairs, by induction on a:
  //   [L_{a+1}][L_b] = [L_1]([L_a][L_b]) - sum_{c <= a} fuse(a)[c] [L_c][L_b],
  // which evaluates Q_{a+1} at the generator without expanding coefficients.
  t.products.assign(static_cast<std::size_t>(lam * lam), {});
  auto row_at = [&](Label a, Label b) -> std::vector<std::pair<Label, Int>>& {
    return t.products[static_cast<std::size_t>(a * lam + b)];
  };
  for (Label b = 0; b < lam; ++b) row_at(0, b) = {{b, Int(1)}};
  for (Label a = 0; a + 1 < lam; ++a) {
    const auto& fr = fuse_rows[static_cast<std::size_t>(a)];
    if (fr.count(a + 1) == 0 || fr.at(a + 1) != 1) {
      throw Error("Unitriangularity",
                  "fusion with the generator is not unitriangular at label " +
                      std::to_string(a));
    }
    for (Label b = 0; b < lam; ++b) {
      std::map<Label, Int> acc;
      for (const auto& [d, m] : row_at(a, b)) {
        sparse_axpy(acc, m, fuse_rows[static_cast<std::size_t>(d)]);
      }
      for (const auto& [c, m] : fr) {
        if (c == a + 1) continue;
        const auto& prev = row_at(c, b);
        if (m == 0) continue;
        for (const auto& [d, v] : prev) {
          Int& slot = acc[d];
          slot -= m * v;
          if (slot == 0) acc.erase(d);
        }
      }
      auto& row = row_at(a + 1, b);
      row.assign(acc.begin(), acc.end());
    }
  }
  return t;
}

// --- persistent cache -------------------------------------------------------

std::filesystem::path fusion_cache_file(const std::filesystem::path& dir,
                                        std::int64_t p, std::int64_t n) {
  return dir / ("fusion_p" + std::to_string(p) + "_n" + std::to_string(n) + ".json");
}

namespace {

Int json_to_int(const nlohmann::json& v) {
  if (v.is_string()) return Int(v.get<std::string>());
  if (v.is_number_integer()) return Int(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return Int(v.get<std::uint64_t>());
  throw CacheError("expected an integer or decimal string in cache file");
}

}  // namespace

void save_fusion_table(const FusionTable& table, const std::filesystem::path& file) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["p"] = table.p;
  doc["n"] = table.n;
  doc["lambda_max"] = table.lambda;
  nlohmann::ordered_json pm = nlohmann::ordered_json::array();
  for (const auto& row : table.power_matrix) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const Int& v : row) jrow.push_back(v.str());
    pm.push_back(std::move(jrow));
  }
  doc["power_matrix"] = std::move(pm);
  nlohmann::ordered_json constants = nlohmann::ordered_json::array();
  for (Label a = 0; a < table.lambda; ++a) {
    for (Label b = 0; b < table.lambda; ++b) {
      for (const auto& [c, v] : table.product(a, b)) {
        constants.push_back(nlohmann::ordered_json::array({a, b, c, v.str()}));
      }
    }
  }
  doc["constants"] = std::move(constants);

  if (file.has_parent_path()) {
    std::filesystem::create_directories(file.parent_path());
  }
  std::filesystem::path tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw CacheError("cannot write cache file " + tmp.string());
    out << doc.dump();
  }
  std::filesystem::rename(tmp, file);
}

FusionTable load_fusion_table(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw CacheError("cannot read cache file " + file.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CacheError("malformed cache file " + file.string() + ": " + e.what());
  }
  if (!doc.contains("schema") || !doc["schema"].is_number_integer() ||
      doc["schema"].get<int>() != 1) {
    throw CacheError("unsupported cache schema in " + file.string());
  }
  FusionTable t;
  t.p = doc.at("p").get<std::int64_t>();
  t.n = doc.at("n").get<std::int64_t>();
  t.lambda = doc.at("lambda_max").get<std::int64_t>();
  if (t.lambda != lambda_size(t.p, t.n)) {
    throw CacheError("lambda_max does not match (p, n) in " + file.string());
  }
  const auto& pm = doc.at("power_matrix");
  if (!pm.is_array() || pm.size() != static_cast<std::size_t>(t.lambda)) {
    throw CacheError("power_matrix has the wrong shape in " + file.string());
  }
  t.power_matrix.assign(static_cast<std::size_t>(t.lambda),
                        std::vector<Int>(static_cast<std::size_t>(t.lambda), Int(0)));
  for (std::size_t j = 0; j < pm.size(); ++j) {
    if (pm[j].size() != static_cast<std::size_t>(t.lambda)) {
      throw CacheError("power_matrix has the wrong shape in " + file.string());
    }
    for (std::size_t b = 0; b < pm[j].size(); ++b) {
      t.power_matrix[j][b] = json_to_int(pm[j][b]);
    }
  }
  t.simple_polys = simple_polys_from_power_matrix(t.power_matrix);
  t.products.assign(static_cast<std::size_t>(t.lambda * t.lambda), {});
  for (const auto& entry : doc.at("constants")) {
    if (!entry.is_array() || entry.size() != 4) {
      throw CacheError("malformed constants entry in " + file.string());
    }
    const Label a = entry[0].get<Label>();
    const Label b = entry[1].get<Label>();
    const Label c = entry[2].get<Label>();
    if (a < 0 || a >= t.lambda || b < 0 || b >= t.lambda || c < 0 || c >= t.lambda) {
      throw CacheError("constants entry outside Lambda in " + file.string());
    }
    t.products[static_cast<std::size_t>(a * t.lambda + b)].emplace_back(c, json_to_int(entry[3]));
  }
  for (auto& row : t.products) {
    if (!std::is_sorted(row.begin(), row.end(),
                        [](const auto& x, const auto& y) { return x.first < y.first; })) {
      throw CacheError("constants are not sorted in " + file.string());
    }
  }
  return t;
}

struct TableStore::Impl {
  std::mutex mutex;
  std::map<std::pair<std::int64_t, std::int64_t>, std::shared_ptr<const FusionTable>> tables;
  TableStats stats;
};

TableStore::TableStore() : impl_(std::make_unique<Impl>()) {}
TableStore::~TableStore() = default;

TableStore& TableStore::instance() {
  static TableStore store;
  return store;
}

std::shared_ptr<const FusionTable> TableStore::get(std::int64_t p, std::int64_t n,
                                                   const TableOptions& options) {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  const auto key = std::make_pair(p, n);
  if (auto it = impl_->tables.find(key); it != impl_->tables.end()) {
    ++impl_->stats.memory_hits;
    return it->second;
  }
  std::shared_ptr<const FusionTable> table;
  if (options.cache_dir) {
    const auto file = fusion_cache_file(*options.cache_dir, p, n);
    if (std::filesystem::exists(file)) {
      table = std::make_shared<const FusionTable>(load_fusion_table(file));
      ++impl_->stats.disk_loads;
    }
  }
  if (!table) {
    table = std::make_shared<const FusionTable>(build_fusion_table(p, n, options.budget));
    ++impl_->stats.builds;
    if (options.cache_dir) {
      save_fusion_table(*table, fusion_cache_file(*options.cache_dir, p, n));
    }
  }
  impl_->tables.emplace(key, table);
  return table;
}

TableStats TableStore::stats() const {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  return impl_->stats;
}

void TableStore::reset() {
  std::lock_guard<std::mutex> lock(impl_->mutex);
  impl_->tables.clear();
  impl_->stats = TableStats{};
}

// --- images and checks ------------------------------------------------------

KClass tilting_image_class(std::int64_t p, std::int64_t n, Weight m) {
  require_prime(p);
  require_level(n);
  const std::vector<Int> poly = tilting_poly(p, m);
  std::map<Label, std::map<Label, Int>> fuse_memo;
  std::map<Label, Int> acc;
  for (std::size_t k = poly.size(); k-- > 0;) {
    // acc <- [L_1] * acc + poly[k] * [1]
    std::map<Label, Int> next;
    for (const auto& [a, c] : acc) {
      auto it = fuse_memo.find(a);
      if (it == fuse_memo.end()) it = fuse_memo.emplace(a, fuse_mults(p, n, a)).first;
      sparse_axpy(next, c, it->second);
    }
    acc = std::move(next);
    if (poly[k] != 0) {
      Int& slot = acc[0];
      slot += poly[k];
      if (slot == 0) acc.erase(0);
    }
  }
  KClass k = KClass::zero(p, n);
  k.mults = std::move(acc);
  return k.checked_module_class();
}

KClass general_image_class(const FusionTable& table, Label base,
                           std::span<const Int> poly) {
  if (base < 0 || base >= table.lambda) {
    throw LabelOutOfRange("base label " + std::to_string(base) + " outside Lambda");
  }
  KClass acc;
  acc.p = table.p;
  acc.n = table.n;
  acc.is_virtual = true;
  for (std::size_t k = poly.size(); k-- > 0;) {
    KClass next;
    next.p = table.p;
    next.n = table.n;
    next.is_virtual = true;
    for (const auto& [d, c] : acc.mults) {
      for (const auto& [e, m] : table.product(base, d)) next.add(e, c * m);
    }
    acc = std::move(next);
    acc.add(0, poly[k]);
  }
  return acc;
}

bool steinberg_factorization_check(const FusionTable& table, Label a) {
  if (a < 0 || a >= table.lambda) {
    throw LabelOutOfRange("label " + std::to_string(a) + " outside Lambda");
  }
  KClass acc = KClass::simple(table.p, table.n, 0);
  std::int64_t base = 1;
  for (int digit : p_adic_digits(a, table.p)) {
    if (digit != 0) {
      const std::vector<Int> poly = tilting_poly(table.p, digit);
      acc = table.multiply(acc, general_image_class(table, base, poly));
    }
    base *= table.p;
  }
  return acc.mults.size() == 1 && acc.at(a) == 1;
}

std::vector<Label> ext1_locus(std::int64_t p, std::int64_t n) {
  require_prime(p);
  require_level(n);
  std::vector<Label> locus;
  for (std::int64_t i = 1; i <= n - 1; ++i) {
    const Label a = checked_pow(p, i) + checked_pow(p, i - 1) * (p - 2);
    if (label_in_lambda(p, n, a)) locus.push_back(a);
  }
  return locus;
}

bool t2p2_check(const FusionTable& table, std::int64_t j) {
  if (j < 1 || j > table.n - 1) {
    throw LabelOutOfRange("depth j = " + std::to_string(j) + " outside [1, n-1]");
  }
  const std::int64_t p = table.p;
  const Label base = checked_pow(p, table.n - j - 1);
  const std::vector<Int> poly = tilting_poly(p, 2 * p - 2);
  const KClass image = general_image_class(table, base, poly);
  KClass expected = KClass::zero(p, table.n);
  expected.add(0, 2);
  const Label c = (2 * p - 2) * base;
  if (label_in_lambda(p, table.n, c)) expected.add(c, 1);
  return image.same_mults(expected);
}

KClass verp_closed_fusion(std::int64_t p, Label a, Label b) {
  require_prime(p);
  const std::int64_t lam = lambda_size(p, 1);
  if (a < 0 || a >= lam || b < 0 || b >= lam) {
    throw LabelOutOfRange("labels (" + std::to_string(a) + ", " + std::to_string(b) +
                          ") outside Lambda at level 1");
  }
  const std::int64_t level = p - 2;
  KClass out = KClass::zero(p, 1);
  const Label lo = std::abs(a - b);
  const Label hi = std::min(a + b, 2 * level - a - b);
  for (Label c = lo; c <= hi; c += 2) out.mults[c] = 1;
  return out;
}

double fpdim_estimate(const FusionTable& table, Label a) {
  if (a < 0 || a >= table.lambda) {
    throw LabelOutOfRange("label " + std::to_string(a) + " outside Lambda");
  }
  const std::size_t dim = static_cast<std::size_t>(table.lambda);
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    for (const auto& [c, m] : table.product(a, static_cast<Label>(b))) {
      rows[b].emplace_back(static_cast<std::size_t>(c), m.convert_to<double>());
    }
  }
  std::vector<double> v(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  std::vector<double> w(dim, 0.0);
  double prev = -1.0;
  for (int iter = 0; iter < 10000; ++iter) {
    for (std::size_t b = 0; b < dim; ++b) {
      double s = v[b];  // identity shift
      for (const auto& [c, m] : rows[b]) s += m * v[c];
      w[b] = s;
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    const double est = norm;
    for (std::size_t b = 0; b < dim; ++b) v[b] = w[b] / norm;
    if (iter > 0 && std::abs(est - prev) < 1e-9) return est - 1.0;
    prev = est;
  }
  throw NoConvergence("power iteration did not settle after 10000 steps");
}

}  // namespace verlab
