#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "verlab/cli.hpp"
#include "verlab/verlinde.hpp"

using namespace verlab;

namespace {

struct CliRun {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() /
             (std::string("verlab_cli_") + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("fuse prints the class as JSON") {
  const CliRun r = run({"fuse", "--p", "5", "--n", "2", "--a", "2", "--format", "json"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"1\":1,\"3\":1}\n");
}

TEST_CASE("fuse in csv and md formats") {
  CHECK(run({"fuse", "--p", "2", "--n", "2", "--a", "1", "--format", "csv"}).out ==
        "a,multiplicity\n0,2\n");
  const CliRun md = run({"fuse", "--p", "2", "--n", "2", "--a", "1", "--format", "md"});
  CHECK(md.out.find("| a | multiplicity |") != std::string::npos);
  CHECK(md.out.find("| 0 | 2 |") != std::string::npos);
}

TEST_CASE("power prints tensor power classes") {
  const CliRun r = run({"power", "--p", "2", "--n", "5", "--i", "3"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"1\":2,\"3\":1}\n");
}

TEST_CASE("limit prints the stable class and the window") {
  const CliRun r = run({"limit", "--p", "2", "--i", "3"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "{\"class\":{\"1\":2,\"3\":1},\"n_min\":5,\"n_checked\":[5,6]}\n");
}

TEST_CASE("decompose against the three bases") {
  const std::string square = "1*v^2+2+1*v^-2";
  CHECK(run({"decompose", "--p", "2", "--char", square, "--basis", "simple"}).out ==
        "{\"0\":2,\"2\":1}\n");
  CHECK(run({"decompose", "--p", "2", "--char", square, "--basis", "tilting"}).out ==
        "{\"2\":1}\n");
  CHECK(run({"decompose", "--p", "2", "--char", square, "--basis", "weyl"}).out ==
        "{\"0\":1,\"2\":1}\n");
}

TEST_CASE("tilting-image prints image classes") {
  CHECK(run({"tilting-image", "--p", "2", "--n", "2", "--m", "2"}).out == "{\"0\":2}\n");
  CHECK(run({"tilting-image", "--p", "2", "--n", "2", "--m", "3"}).out == "{}\n");
}

TEST_CASE("ext-locus output") {
  CHECK(run({"ext-locus", "--p", "3", "--n", "3"}).out == "[4,12]\n");
  CHECK(run({"ext-locus", "--p", "2", "--n", "2"}).out == "[]\n");
  CHECK(run({"ext-locus", "--p", "3", "--n", "3", "--format", "csv"}).out == "a\n4\n12\n");
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run({}).exit_code == 2);
  CHECK(run({"fuse", "--p", "5"}).exit_code == 2);
  CHECK(run({"fuse", "--p", "5", "--n", "2", "--a", "2", "--nope"}).exit_code == 2);
  CHECK(run({"decompose", "--p", "2", "--char", "1", "--basis", "bogus"}).exit_code == 2);
}

TEST_CASE("computation errors exit with status 1 and a structured message") {
  const CliRun missing = run({"fuse", "--p", "2", "--n", "1", "--a", "0"});
  CHECK(missing.exit_code == 1);
  CHECK(missing.out.empty());
  CHECK(missing.err.find("\"error\":\"NoSuchSimple\"") != std::string::npos);

  const CliRun range = run({"fuse", "--p", "5", "--n", "2", "--a", "99"});
  CHECK(range.exit_code == 1);
  CHECK(range.err.find("\"error\":\"LabelOutOfRange\"") != std::string::npos);

  const CliRun bad_char =
      run({"decompose", "--p", "2", "--char", "1*v^2+1*v^1", "--basis", "simple"});
  CHECK(bad_char.exit_code == 1);
  CHECK(bad_char.err.find("\"error\":\"NonSymmetricInput\"") != std::string::npos);
}

TEST_CASE("ring exports and the cache round trip") {
  const auto dir = temp_dir("ring");
  TableStore::instance().reset();

  const std::vector<std::string> args = {"ring",        "--p",       "5",
                                         "--n",         "2",         "--cache-dir",
                                         dir.string(),  "--stats"};
  const CliRun first = run(args);
  CHECK(first.exit_code == 0);
  CHECK(first.err.find("cache_builds=1") != std::string::npos);
  REQUIRE(std::filesystem::exists(fusion_cache_file(dir, 5, 2)));

  TableStore::instance().reset();  // simulate a fresh process
  const CliRun second = run(args);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);
  CHECK(second.err.find("cache_builds=0") != std::string::npos);
  CHECK(second.err.find("cache_hits=1") != std::string::npos);

  // the export is the cache schema
  const nlohmann::json doc = nlohmann::json::parse(first.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["p"] == 5);
  CHECK(doc["n"] == 2);
  CHECK(doc["lambda_max"] == 20);
  CHECK(doc["power_matrix"].size() == 20);

  // csv export has the documented header
  const CliRun csv = run({"ring", "--p", "3", "--n", "1", "--format", "csv"});
  CHECK(csv.out.rfind("a,b,c,N\n", 0) == 0);

  // --out writes the same bytes to a file
  const auto out_file = dir / "table.json";
  const CliRun to_file = run({"ring", "--p", "5", "--n", "2", "--out", out_file.string()});
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  CHECK(buffer.str() == first.out);

  TableStore::instance().reset();
  std::filesystem::remove_all(dir);
}

TEST_CASE("verify runs suites and reflects the outcome in the exit status") {
  const CliRun ok = run({"verify", "--suite", "be_equivalence", "--max-i", "2", "--p", "2"});
  CHECK(ok.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(ok.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["results"].size() == 2);
  CHECK(doc["summary"]["failed"] == 0);

  const CliRun unknown = run({"verify", "--suite", "bogus_check"});
  CHECK(unknown.exit_code == 1);
  CHECK(unknown.err.find("\"error\":\"UnknownCheckId\"") != std::string::npos);

  const CliRun csv = run({"verify", "--suite", "be_equivalence", "--format", "csv"});
  CHECK(csv.exit_code == 2);
}

TEST_CASE("VERLAB_CACHE selects the cache directory") {
  const auto dir = temp_dir("env");
  TableStore::instance().reset();
  ::setenv("VERLAB_CACHE", dir.string().c_str(), 1);
  const CliRun r = run({"ring", "--p", "3", "--n", "2"});
  ::unsetenv("VERLAB_CACHE");
  CHECK(r.exit_code == 0);
  CHECK(std::filesystem::exists(fusion_cache_file(dir, 3, 2)));
  TableStore::instance().reset();
  std::filesystem::remove_all(dir);
}

TEST_CASE("version flag") {
  const CliRun r = run({"--version"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0.1.0\n");
}
