#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "leibniz/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = leibniz::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("leibniz_cli_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run({"check", "--family", "sl2c"}).code == 0);
  CHECK(run({"check", "--family", "sl2c"}).out.find("leibniz: pass") != std::string::npos);

  const std::string bad = write_temp("bad.json", R"({"dim": 1, "table": [{"i": 1, "j": 1, "k": 1, "c": "1"}]})");
  const Run fail = run({"check", "--input", bad});
  CHECK(fail.code == 1);
  CHECK(fail.out.find("leibniz: fail at (e1, e1, e1) defect [1]") != std::string::npos);
  CHECK(run({"classify", "--input", bad}).code == 1);

  const Run violated = run({"catalog", "instantiate", "L10", "--params", "delta=0"});
  CHECK(violated.code == 2);
  CHECK(violated.err.find("constraint") != std::string::npos);
  CHECK(run({"catalog", "instantiate", "L99"}).code == 2);
  CHECK(run({"check", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);

  const std::string garbage = write_temp("garbage.json", "{not json");
  CHECK(run({"check", "--input", garbage}).code == 2);
}

TEST_CASE("cli subcommands answer --help") {
  for (const char* sub : {"check", "invariants", "der", "nilradical", "catalog", "classify", "iso", "census", "fingerprint"}) {
    const Run r = run({sub, "--help"});
    CHECK_MESSAGE(r.code == 0, sub);
    CHECK(r.out.find("Usage") != std::string::npos);
  }
}

TEST_CASE("cli results") {
  CHECK(run({"der", "--family", "lambda6"}).out.find("dim: 3") != std::string::npos);
  const Run iso = run({"iso", "--family", "L1", "--params", "gamma=2", "--target", "L1", "--target-params", "gamma=1/2"});
  CHECK(iso.code == 0);
  CHECK(iso.out.find("Found") != std::string::npos);
  const Run cls = run({"classify", "--family", "sl2c"});
  CHECK(cls.out.find("NonSolvable") != std::string::npos);
}

TEST_CASE("cli JSON output is byte stable") {
  const std::vector<std::string> args{"invariants", "--family", "L9", "--params", "gamma=3", "--format", "json"};
  const Run first = run(args);
  CHECK(first.code == 0);
  CHECK(first.out == run(args).out);
  CHECK(first.out.front() == '{');

  // Instantiated JSON reads back as the same table.
  const Run inst = run({"catalog", "instantiate", "L43", "--format", "json"});
  const std::string path = write_temp("l43.json", inst.out);
  const Run fp_file = run({"fingerprint", "--input", path, "--format", "json"});
  const Run fp_family = run({"fingerprint", "--family", "L43", "--format", "json"});
  CHECK(fp_file.out == fp_family.out);
}
