#include "verlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "verlab/errors.hpp"
#include "verlab/frobenius.hpp"
#include "verlab/laurent.hpp"
#include "verlab/sl2.hpp"
#include "verlab/verify.hpp"
#include "verlab/verlinde.hpp"
#include "verlab/version.hpp"

namespace verlab {

namespace {

// Multiplicities print as bare exact decimals, never floats; JSON keys are
// the labels in ascending order.
std::string render_map_json(const std::map<std::int64_t, Int>& m) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [a, c] : m) {
    if (!first) os << ',';
    first = false;
    os << '"' << a << "\":" << c.str();
  }
  os << '}';
  return os.str();
}

std::string render_map_csv(const std::map<std::int64_t, Int>& m) {
  std::ostringstream os;
  os << "a,multiplicity\n";
  for (const auto& [a, c] : m) os << a << ',' << c.str() << '\n';
  return os.str();
}

std::string render_map_md(const std::map<std::int64_t, Int>& m) {
  std::ostringstream os;
  os << "| a | multiplicity |\n|---|---|\n";
  for (const auto& [a, c] : m) os << "| " << a << " | " << c.str() << " |\n";
  return os.str();
}

std::string render_map(const std::map<std::int64_t, Int>& m, const std::string& format) {
  if (format == "csv") return render_map_csv(m);
  if (format == "md") return render_map_md(m);
  return render_map_json(m) + "\n";
}

std::string render_table_json(const FusionTable& t) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["p"] = t.p;
  doc["n"] = t.n;
  doc["lambda_max"] = t.lambda;
  nlohmann::ordered_json pm = nlohmann::ordered_json::array();
  for (const auto& row : t.power_matrix) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const Int& v : row) jrow.push_back(v.str());
    pm.push_back(std::move(jrow));
  }
  doc["power_matrix"] = std::move(pm);
  nlohmann::ordered_json constants = nlohmann::ordered_json::array();
  for (Label a = 0; a < t.lambda; ++a) {
    for (Label b = 0; b < t.lambda; ++b) {
      for (const auto& [c, v] : t.product(a, b)) {
        constants.push_back(nlohmann::ordered_json::array({a, b, c, v.str()}));
      }
    }
  }
  doc["constants"] = std::move(constants);
  return doc.dump() + "\n";
}

std::string render_table(const FusionTable& t, const std::string& format) {
  if (format == "json") return render_table_json(t);
  std::ostringstream os;
  if (format == "csv") {
    os << "a,b,c,N\n";
    for (Label a = 0; a < t.lambda; ++a) {
      for (Label b = 0; b < t.lambda; ++b) {
        for (const auto& [c, v] : t.product(a, b)) {
          os << a << ',' << b << ',' << c << ',' << v.str() << '\n';
        }
      }
    }
  } else {
    os << "| a | b | c | N |\n|---|---|---|---|\n";
    for (Label a = 0; a < t.lambda; ++a) {
      for (Label b = 0; b < t.lambda; ++b) {
        for (const auto& [c, v] : t.product(a, b)) {
          os << "| " << a << " | " << b << " | " << c << " | " << v.str() << " |\n";
        }
      }
    }
  }
  return os.str();
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact Grothendieck-ring computations for higher Verlinde categories"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "md"}));
  std::string cache_dir;
  app.add_option("--cache-dir", cache_dir, "fusion table cache directory")
      ->envname("VERLAB_CACHE");
  std::int64_t budget = kDefaultTableBudget;
  app.add_option("--budget", budget, "sparse-entry budget for table builds")
      ->check(CLI::PositiveNumber);
  bool override_bounds = false;
  app.add_flag("--override-bounds", override_bounds,
               "run bound-guarded checks outside their guaranteed regime");
  bool stats = false;
  app.add_flag("--stats", stats, "report cache statistics on the error stream");

  std::int64_t p = 0, n = 0, a = 0, i = 0, m = 0;

  auto* fuse_cmd = app.add_subcommand("fuse", "class of L_1 (x) L_a in the simple basis");
  fuse_cmd->add_option("--p", p)->required();
  fuse_cmd->add_option("--n", n)->required();
  fuse_cmd->add_option("--a", a)->required();

  auto* power_cmd = app.add_subcommand("power", "class of the i-th tensor power of L_1");
  power_cmd->add_option("--p", p)->required();
  power_cmd->add_option("--n", n)->required();
  power_cmd->add_option("--i", i)->required();

  std::string out_file;
  auto* ring_cmd = app.add_subcommand("ring", "full structure constants of the level ring");
  ring_cmd->add_option("--p", p)->required();
  ring_cmd->add_option("--n", n)->required();
  ring_cmd->add_option("--out", out_file, "write the export to a file instead of stdout");

  std::string char_text, basis = "simple";
  auto* dec_cmd = app.add_subcommand("decompose", "decompose a symmetric character");
  dec_cmd->add_option("--p", p)->required();
  dec_cmd->add_option("--char", char_text, "character, e.g. 1*v^2+2+1*v^-2")->required();
  dec_cmd->add_option("--basis", basis)->check(CLI::IsMember({"simple", "tilting", "weyl"}));

  auto* limit_cmd = app.add_subcommand("limit", "stable multiplicities of the i-th tensor power");
  limit_cmd->add_option("--p", p)->required();
  limit_cmd->add_option("--i", i)->required();

  auto* timg_cmd = app.add_subcommand("tilting-image", "class of the image of T(m) at level n");
  timg_cmd->add_option("--p", p)->required();
  timg_cmd->add_option("--n", n)->required();
  timg_cmd->add_option("--m", m)->required();

  std::string suite_text;
  std::vector<std::int64_t> verify_primes;
  std::int64_t max_i = 8, max_weight = 60;
  std::int64_t max_n_value = -1;
  auto* verify_cmd = app.add_subcommand("verify", "run named verification suites");
  verify_cmd->add_option("--suite", suite_text, "comma-separated check ids (default: all)");
  verify_cmd->add_option("--max-i", max_i, "tensor-power cap");
  verify_cmd->add_option("--max-n", max_n_value, "level cap");
  verify_cmd->add_option("--max-weight", max_weight, "weight cap for tilting checks");
  verify_cmd->add_option("--p", verify_primes, "primes to check (repeatable)");

  auto* ext_cmd = app.add_subcommand("ext-locus", "labels with a self-extension of the unit");
  ext_cmd->add_option("--p", p)->required();
  ext_cmd->add_option("--n", n)->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("verlab");
  for (const auto& arg : args) argv_storage.push_back(arg);
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  TableOptions table_options;
  if (!cache_dir.empty()) table_options.cache_dir = cache_dir;
  table_options.budget = budget;

  auto emit_stats = [&] {
    if (!stats) return;
    const TableStats s = TableStore::instance().stats();
    err << "cache_hits=" << (s.memory_hits + s.disk_loads)
        << " cache_builds=" << s.builds << "\n";
  };

  try {
    if (*fuse_cmd) {
      out << render_map(fuse_L1(p, n, a).mults, format);
    } else if (*power_cmd) {
      out << render_map(tensor_power_class(p, n, i).mults, format);
    } else if (*ring_cmd) {
      const auto table = TableStore::instance().get(p, n, table_options);
      const std::string text = render_table(*table, format);
      if (!out_file.empty()) {
        std::ofstream file(out_file);
        if (!file) throw Error("IoError", "cannot write " + out_file);
        file << text;
      } else {
        out << text;
      }
      emit_stats();
    } else if (*dec_cmd) {
      const SymChar f{parse_char(char_text)};
      WeightMap result;
      if (basis == "simple") {
        result = decompose_simples(f, p);
      } else if (basis == "tilting") {
        result = decompose_tiltings(f, p);
      } else {
        require_prime(p);
        result = decompose_weyls(f);
      }
      out << render_map(result, format);
    } else if (*limit_cmd) {
      const LimitClass lc = limit_class(p, i);
      if (format == "json") {
        std::ostringstream os;
        os << "{\"class\":" << render_map_json(lc.mults)
           << ",\"n_min\":" << lc.window.n_min << ",\"n_checked\":[";
        for (std::size_t k = 0; k < lc.window.n_checked.size(); ++k) {
          if (k) os << ',';
          os << lc.window.n_checked[k];
        }
        os << "]}";
        out << os.str() << "\n";
      } else {
        out << render_map(lc.mults, format);
        err << "n_min=" << lc.window.n_min << "\n";
      }
    } else if (*timg_cmd) {
      out << render_map(tilting_image_class(p, n, m).mults, format);
    } else if (*verify_cmd) {
      if (format == "csv") {
        err << "verify reports support --format json or md\n";
        return 2;
      }
      VerifyConfig cfg;
      if (!verify_primes.empty()) cfg.primes = verify_primes;
      cfg.max_i = max_i;
      if (max_n_value >= 0) cfg.max_n = max_n_value;
      cfg.max_weight = max_weight;
      cfg.budget = budget;
      if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
      cfg.override_bounds = override_bounds;
      std::vector<std::string> suite;
      if (suite_text.empty()) {
        for (const auto& info : registered_checks()) suite.push_back(info.id);
      } else {
        suite = split_csv_list(suite_text);
      }
      const VerificationReport report = run_suite(suite, cfg);
      out << emit_report(report, format == "md" ? ReportFormat::kMarkdown
                                                : ReportFormat::kJson)
          << (format == "md" ? "" : "\n");
      emit_stats();
      return report.all_passed() ? 0 : 1;
    } else if (*ext_cmd) {
      const std::vector<Label> locus = ext1_locus(p, n);
      if (format == "json") {
        std::ostringstream os;
        os << '[';
        for (std::size_t k = 0; k < locus.size(); ++k) {
          if (k) os << ',';
          os << locus[k];
        }
        os << ']';
        out << os.str() << "\n";
      } else if (format == "csv") {
        out << "a\n";
        for (Label v : locus) out << v << "\n";
      } else {
        out << "| a |\n|---|\n";
        for (Label v : locus) out << "| " << v << " |\n";
      }
    }
  } catch (const Error& e) {
    err << "{\"error\":\"" << e.code() << "\",\"message\":" << nlohmann::json(e.what()).dump()
        << "}\n";
    return 1;
  } catch (const std::exception& e) {
    err << "{\"error\":\"internal\",\"message\":" << nlohmann::json(e.what()).dump() << "}\n";
    return 1;
  }
  return 0;
}

}  // namespace verlab
