#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "refspin/cli.hpp"
#include "refspin/models.hpp"

using namespace refspin;

namespace {

const std::string kData = REFSPIN_DATA_DIR;

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("compare separates D1042 from its sibling") {
  const Run r = run({"compare", "--model", "potts-family:a=1,b=0", kData + "/graphs/d1042.smg", kData + "/graphs/d1042p.smg"});
  CHECK(r.code == kExitOk);
  CHECK(has(r.out, "verdict: DISTINGUISHED"));
  const Run same = run({"compare", "--model", "potts:n=3", kData + "/graphs/d1042.smg", kData + "/graphs/d1042p.smg"});
  CHECK(same.code == kExitOk);
  CHECK(has(same.out, "verdict: NOT DISTINGUISHED"));
}

TEST_CASE("invariant of the single vertex under the pentagonal model") {
  const Run r = run({"--json", "invariant", "--model", "pentagonal", kData + "/graphs/trivial.smg"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["command"] == "invariant");
  CHECK(j["ok"] == true);
  bool seen = false;
  for (const auto& row : j["results"])
    if (row["label"] == "I") {
      CHECK(std::abs(parse_complex(row["value"].get<std::string>()) - std::sqrt(5.0)) < kTolNum);
      seen = true;
    }
  CHECK(seen);
}

TEST_CASE("diagram input reports both colorings") {
  const Run r = run({"--json", "invariant", "--model", "potts:n=3", kData + "/diagrams/d89.sud"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  Complex i1, i2;
  for (const auto& row : j["results"]) {
    if (row["label"] == "I coloring 1") i1 = parse_complex(row["value"].get<std::string>());
    if (row["label"] == "I coloring 2") i2 = parse_complex(row["value"].get<std::string>());
  }
  CHECK(std::abs(i1 - i2) < kTolNum);
  CHECK(std::abs(i1 + std::sqrt(3.0)) < kTolNum);
  CHECK(j["inputs"]["tol"] == "1e-09");
}

TEST_CASE("naive and elimination agree through the front end") {
  auto value = [](const char* method) {
    const Run r = run({"--json", "--method", method, "invariant", "--model", "pent-family:a=1,b=0.3,c=-0.2",
                       kData + "/graphs/d89.smg"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    for (const auto& row : j["results"])
      if (row["label"] == "I") return parse_complex(row["value"].get<std::string>());
    FAIL("no I row");
    return Complex{};
  };
  CHECK(std::abs(value("naive") - value("eliminate")) < kTolNum);
}

TEST_CASE("exit codes") {
  CHECK(run({"invariant", "--model", "potts:n=3", "/nonexistent.sud"}).code == kExitParse);
  CHECK(run({"invariant", "--model", "ising", kData + "/graphs/d89.smg"}).code == kExitModelInvalid);
  CHECK(run({"validate-model", "--model", "potts-family:a=0,b=1"}).code == kExitModelInvalid);
  CHECK(run({"compare", "--model", "potts:n=3"}).code == kExitParse);
  const Run big = run({"--method", "naive", "invariant", "--model", "pentagonal", kData + "/diagrams/d1042.sud"});
  CHECK(big.code == kExitOk);
  CHECK(exit_code_for(ErrorCode::TooLarge) == kExitResource);
  CHECK(exit_code_for(ErrorCode::WidthOverflow) == kExitResource);
  CHECK(exit_code_for(ErrorCode::ColoringMismatch) == kExitCheckFailed);
  CHECK(exit_code_for(ErrorCode::SyntaxError) == kExitParse);
  const Run err = run({"invariant", "--model", "potts:n=3", "/nonexistent.sud"});
  CHECK(has(err.err, "Io"));
}

TEST_CASE("validate-model") {
  const Run ok = run({"validate-model", "--model", "potts:n=3"});
  CHECK(ok.code == kExitOk);
  CHECK(has(ok.out, "type II refinement: yes"));
  const Run gen = run({"validate-model", "--model", "potts-family:a=0.7,b=0.3"});
  CHECK(gen.code == kExitOk);
  CHECK(has(gen.out, "type II refinement: no"));
}

TEST_CASE("gluing-check") {
  const Run r = run({"gluing-check", "--model", "pentagonal", "--v1", "2", "--v2", "3", kData + "/graphs/d89.smg",
                     kData + "/graphs/d1042.smg"});
  CHECK(r.code == kExitOk);
  CHECK(has(r.out, "PASS I(A#B) = I(A) I(B) / d"));
  CHECK(run({"gluing-check", "--model", "pentagonal", "--v1", "99", kData + "/graphs/d89.smg", kData + "/graphs/d1042.smg"})
            .code == kExitParse);
}

TEST_CASE("rewrite-fuzz") {
  const Run r = run({"--json", "rewrite-fuzz", "--model", "potts-family:a=0.7,b=0.3", "--seed", "11", "--steps", "25",
                     kData + "/graphs/d1042.smg"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["ok"] == true);
  bool off = false;
  for (const auto& row : j["results"])
    if (row["label"] == "axis pair moves") off = row["text"] == "off";
  CHECK(off);
}

TEST_CASE("tait writes a parseable graph") {
  const Run r = run({"tait", "--coloring", "2", kData + "/diagrams/kink.sud"});
  REQUIRE(r.code == kExitOk);
  CHECK(has(r.out, "N 1"));
  CHECK(run({"tait", "--coloring", "3", kData + "/diagrams/kink.sud"}).code == kExitParse);
}

TEST_CASE("help") {
  const Run r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(has(r.out, "rewrite-fuzz"));
  CHECK(run({}).code != kExitOk);
}
