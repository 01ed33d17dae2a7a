#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hirelab/cli.hpp"
#include "hirelab/report.hpp"

using namespace hirelab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = run_cli(std::move(args), out, err);
  return {rc, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hirelab-tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("git blob hashes") {
  REQUIRE(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  REQUIRE(git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("doubles print in shortest round-trip form") {
  REQUIRE(format_double(0.1) == "0.1");
  for (double v : {1.0 / 3, 2.0 / 7e-300, 6.02214076e23}) REQUIRE(std::stod(format_double(v)) == v);
}

TEST_CASE("CSV quoting round-trips") {
  CsvTable t;
  t.header = {"a", "b,c", "d"};
  t.add_row({"x\"y", "1\r\n2", ""});
  t.add_row({"plain", "3/4", "-1"});
  RunManifest m;
  m.command = "test";
  m.set("k", "v");
  const std::string text = to_csv(t, &m);
  REQUIRE(text.rfind("# hirelab", 0) == 0);
  const CsvTable back = parse_csv(text);
  REQUIRE(back.header == t.header);
  REQUIRE(back.rows == t.rows);
  REQUIRE_THROWS_AS(t.add_row({"too", "short"}), ConsistencyError);
}

TEST_CASE("manifest keeps run metadata out of the artifact") {
  RunManifest m;
  m.command = "simulate";
  m.set("trials", "10");
  m.set("trials", "20");
  m.wall_seconds = 1.5;
  m.workers = 4;
  REQUIRE(m.config.size() == 1);
  REQUIRE(m.inputs_json()["config"]["trials"] == "20");
  REQUIRE_FALSE(m.inputs_json().contains("wall_seconds"));
  REQUIRE(m.to_json()["workers"] == 4);
}

TEST_CASE("rationals serialize without loss") {
  const Rational r = ais_uniform_F_product(9);
  const Json j = rational_json(r);
  REQUIRE(j["numerator"] == "3014412193738231");
  REQUIRE(j["denominator"] == "1165037125238784000");
  REQUIRE(epoly_json(EPoly::from_coefficients({1, 0, -6, 6}))[0]["coefficient"] == "6");
}

TEST_CASE("exact subcommand prints table values") {
  const Run r = invoke({"exact", "F", "--strategy", "ais", "--dist", "uniform", "--N", "9"});
  REQUIRE(r.rc == kExitOk);
  REQUIRE(r.out.find("3014412193738231/1165037125238784000") != std::string::npos);
  const Run p = invoke({"exact", "P", "--dist", "exp", "--n", "3"});
  REQUIRE(p.out.find("(6e^3 - 6e^2 + 1)/e^9") != std::string::npos);
  const Run j = invoke({"exact", "ais-all-hired", "--format", "json"});
  REQUIRE(Json::parse(j.out)["result"].size() == 9);
  REQUIRE(invoke({"exact", "F", "--strategy", "ais", "--dist", "tent", "--N", "5"}).rc == kExitUsage);
  REQUIRE(invoke({"exact", "wobble"}).rc == kExitUsage);
}

TEST_CASE("usage errors exit with status 2") {
  REQUIRE(invoke({}).rc == kExitUsage);
  REQUIRE(invoke({"simulate", "--all-hired", "5", "--kernel", "rejection-free"}).rc == kExitUsage);
  REQUIRE(invoke({"simulate", "--all-hired", "5", "--grow-to", "5"}).rc == kExitUsage);
  REQUIRE(invoke({"simulate", "--strategy", "best", "--grow-to", "5"}).rc == kExitUsage);
  REQUIRE(invoke({"simulate", "--trials", "10"}).rc == kExitUsage);
  REQUIRE(invoke({"verify", "everything"}).rc == kExitUsage);
  REQUIRE(invoke({"--version"}).out == std::string(kToolVersion) + "\n");
}

TEST_CASE("verify reports named checks") {
  const Run r = invoke({"verify", "conjecture", "--max-n", "6"});
  REQUIRE(r.rc == kExitOk);
  REQUIRE(r.out.find("PASS conjecture n=6") != std::string::npos);
  const Run e = invoke({"verify", "exp-dn", "--max-n", "7", "--format", "json"});
  REQUIRE(e.rc == kExitOk);
  REQUIRE(Json::parse(e.out).size() == 14);
}

TEST_CASE("simulate writes the artifact and a sidecar manifest") {
  const fs::path out = scratch("grow.csv");
  const Run r = invoke({"simulate", "--strategy", "ais", "--grow-to", "16", "--trials", "5000", "--seed", "7", "--out",
                     out.string()});
  REQUIRE(r.rc == kExitOk);
  const std::string content = slurp(out);
  const Json m = Json::parse(slurp(out.string() + ".manifest.json"));
  REQUIRE(m["content_hash"] == git_blob_sha1(content));
  REQUIRE(m["master_seed"] == 7);
  const CsvTable t = parse_csv(content);
  REQUIRE(t.rows.size() == 16);
  REQUIRE(std::find(t.header.begin(), t.header.end(), "mu") != t.header.end());
}

TEST_CASE("config files fill in flags and the command line wins") {
  const fs::path cfg = scratch("run.cfg");
  std::ofstream(cfg) << "# all-hired run\nstrategy = lis:2\ndist=tent\ntrials=1000\nseed=5\n";
  const Run a = invoke({"simulate", "--config", cfg.string(), "--all-hired", "4", "--trials", "3000"});
  REQUIRE(a.rc == kExitOk);
  REQUIRE(a.out.find("# strategy: lis:2") != std::string::npos);
  REQUIRE(a.out.find("# trials: 3000") != std::string::npos);
  REQUIRE(a.out.find("# master_seed: 5") != std::string::npos);
  std::ofstream(scratch("bad.cfg")) << "strategy\n";
  REQUIRE(invoke({"simulate", "--config", scratch("bad.cfg").string(), "--grow-to", "3"}).rc == kExitUsage);
  REQUIRE(invoke({"simulate", "--config", "/nonexistent/x.cfg"}).rc == kExitUsage);
}

TEST_CASE("outputs are identical across worker counts") {
  std::string first;
  for (const char* w : {"1", "2", "5"}) {
    const Run r = invoke({"density", "--strategy", "mis", "--n", "3", "--bins", "8", "--trials", "20000", "--threads", w});
    REQUIRE(r.rc == kExitOk);
    if (first.empty()) first = r.out;
    REQUIRE(r.out == first);
  }
}

TEST_CASE("fit emits power-law JSON") {
  const Run r = invoke({"fit", "--metric", "mean-gap", "--strategy", "ais", "--max-n", "256", "--trials", "2000"});
  REQUIRE(r.rc == kExitOk);
  const Json j = Json::parse(r.out)["result"];
  REQUIRE(j["exponent"].get<double>() > 0.3);
  REQUIRE(j["exponent"].get<double>() < 0.7);
}
