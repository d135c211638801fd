#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "biharm/cli.hpp"
#include "biharm/error.hpp"
#include "biharm/report.hpp"
#include "biharm/spec_file.hpp"
#include "json.hpp"

using namespace biharm;
using nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec(const std::string& name) { return std::string(BIHARM_SPEC_DIR) + "/" + name; }

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string type_of(const json& v) {
  if (v.is_boolean()) return "boolean";
  if (v.is_number()) return "number";
  if (v.is_string()) return "string";
  if (v.is_null()) return "null";
  if (v.is_array()) return "array";
  return "object";
}

// Matches a document against a skeleton whose leaves are type names
// ("number", "string|null", ...), arrays hold one element skeleton.
void expect_shape(const json& doc, const json& skeleton, const std::string& path) {
  if (skeleton.is_string()) {
    const std::string want = skeleton.get<std::string>();
    const std::string got = type_of(doc);
    EXPECT_TRUE(contains("|" + want + "|", "|" + got + "|")) << path << ": " << got << " vs " << want;
    return;
  }
  if (skeleton.is_number()) {
    EXPECT_EQ(doc, skeleton) << path;
    return;
  }
  if (skeleton.is_array()) {
    ASSERT_TRUE(doc.is_array()) << path;
    for (std::size_t i = 0; i < doc.size(); ++i) expect_shape(doc[i], skeleton[0], path + "[" + std::to_string(i) + "]");
    return;
  }
  ASSERT_TRUE(doc.is_object()) << path;
  for (const auto& [key, sub] : skeleton.items()) {
    ASSERT_TRUE(doc.contains(key)) << path << "." << key;
    expect_shape(doc[key], sub, path + "." + key);
  }
  for (const auto& [key, sub] : doc.items()) EXPECT_TRUE(skeleton.contains(key)) << "unexpected " << path << "." << key;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

}  // namespace

TEST(CliCheck, ExpectedVerdictMatches) {
  const CliRun r = run({"check", spec("s3-1over-sqrt2-in-s4.json"), "--expect", "proper-biharmonic"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(contains(r.out, "verdict: proper-biharmonic"));
}

TEST(CliCheck, NoExpectationAlwaysSucceeds) {
  EXPECT_EQ(run({"check", spec("s3-0p8-in-s4.json")}).code, kExitOk);
  EXPECT_EQ(run({"check", spec("upper-half-plane-geodesic.json"), "--expect", "minimal"}).code, kExitOk);
  EXPECT_EQ(run({"check", spec("h2-in-h3-anti-de-sitter.json"), "--expect", "proper-biharmonic"}).code, kExitOk);
}

TEST(CliCheck, MismatchExitsTwo) {
  const CliRun r = run({"check", spec("s3-0p8-in-s4.json"), "--expect", "minimal"});
  EXPECT_EQ(r.code, kExitMismatch);
}

TEST(CliCheck, NullDirectionIsAnError) {
  const CliRun r = run({"check", spec("null-line.json")});
  EXPECT_EQ(r.code, kExitError);
  EXPECT_TRUE(contains(r.err, "DegenerateInducedMetric")) << r.err;
}

TEST(CliCheck, BadInput) {
  EXPECT_EQ(run({"check", "/nonexistent/spec.json"}).code, kExitError);
  EXPECT_EQ(run({"check", spec("s3-0p8-in-s4.json"), "--expect", "bogus"}).code, kExitError);
  EXPECT_EQ(run({"check", spec("s3-0p8-in-s4.json"), "--samples", "0"}).code, kExitError);
  EXPECT_EQ(run({"nonsense"}).code, kExitError);
  EXPECT_EQ(run({}).code, kExitError);
}

TEST(CliCheck, FlagsOverrideSpecAndAreRecorded) {
  const CliRun r = run({"check", spec("s3-0p8-in-s4.json"), "--json", "-", "--samples", "3", "--seed", "7", "--step",
                     "0.002", "--tol-res", "2", "--tol-h", "1e-4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(r.out.substr(r.out.find('{')));
  EXPECT_EQ(doc["settings"]["samples"], 3);
  EXPECT_EQ(doc["settings"]["seed"], 7);
  EXPECT_EQ(doc["settings"]["step"], 0.002);
  EXPECT_EQ(doc["settings"]["tol_res"], 2.0);
  EXPECT_EQ(doc["settings"]["tol_h"], 1e-4);
  EXPECT_EQ(doc["samples"].size(), 3u);
  // A residual tolerance of 2 accepts the off-radius sphere.
  EXPECT_EQ(doc["verdict"], "proper-biharmonic");
}

TEST(CliCheck, JsonMatchesGoldenSchema) {
  const std::string path = ::testing::TempDir() + "report.json";
  const CliRun r = run({"check", spec("s3-1over-sqrt2-in-s4.json"), "--json", path, "--samples", "4", "--expect",
                     "proper-biharmonic"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = read_json(path);
  const json golden = read_json(std::string(BIHARM_GOLDEN_DIR) + "/report_schema.json");
  expect_shape(doc, golden, "$");
  EXPECT_EQ(doc["schema"], kReportSchema);
  EXPECT_EQ(doc["expected"], "proper-biharmonic");
  EXPECT_EQ(doc["matches"], true);
  std::remove(path.c_str());

  const CliRun plain = run({"check", spec("s3-1over-sqrt2-in-s4.json"), "--json", "-", "--samples", "2"});
  const json doc2 = json::parse(plain.out.substr(plain.out.find('{')));
  expect_shape(doc2, golden, "$");
  EXPECT_TRUE(doc2["expected"].is_null());
  EXPECT_TRUE(doc2["matches"].is_null());
}

TEST(CliCatalog, List) {
  const CliRun r = run({"catalog", "list"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_TRUE(contains(r.out, "h2-in-h3-anti-de-sitter"));
  EXPECT_TRUE(contains(r.out, "# R⁴₂: none"));
}

TEST(CliCatalog, CheckSingleAndUnknown) {
  const CliRun one = run({"catalog", "check", "s1xs2-1over-sqrt2-in-s4"});
  EXPECT_EQ(one.code, kExitOk) << one.out << one.err;
  EXPECT_TRUE(contains(one.out, "PASS"));
  const CliRun missing = run({"catalog", "check", "no-such"});
  EXPECT_EQ(missing.code, kExitError);
  EXPECT_TRUE(contains(missing.err, "UnknownEntry"));
}

TEST(CliCatalog, CheckAll) {
  const CliRun r = run({"catalog", "check", "--all"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_TRUE(contains(r.out, "28/28 entries verified")) << r.out;
}

TEST(CliClassify, Examples) {
  const CliRun a = run({"classify", "3", "1", "1"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_TRUE(contains(a.out, "C1=C2=2, admissible, model: S¹(1/√2)×S²(1/√2) ⊂ S⁴(1)")) << a.out;
  const CliRun b = run({"classify", "2", "1", "1"});
  EXPECT_TRUE(contains(b.out, "inadmissible: n=2p")) << b.out;
  const CliRun c = run({"classify", "3", "1", "-1"});
  EXPECT_TRUE(contains(c.out, "C1=C2=-2")) << c.out;
  EXPECT_TRUE(contains(c.out, "H")) << c.out;
  EXPECT_EQ(run({"classify", "3", "3", "1"}).code, kExitError);
  EXPECT_EQ(run({"classify", "3", "1", "0"}).code, kExitError);
}

TEST(CliSpecFile, Errors) {
  const auto code_of = [](const std::string& text) {
    try {
      parse_spec(text, "inline");
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::UnknownEntry;
  };
  EXPECT_EQ(code_of("{"), ErrorCode::SpecFileError);
  EXPECT_EQ(code_of(R"({"ambient": {"kind": "flat", "dim": 2, "index": 0}})"), ErrorCode::SpecFileError);
  const std::string bad_interval = R"({"ambient": {"kind": "flat", "dim": 2, "index": 0},
    "immersion": {"params": ["u"], "components": ["u", "0"], "domain": [[1, 0]]}})";
  EXPECT_EQ(code_of(bad_interval), ErrorCode::SpecFileError);
  const std::string bad_expr = R"({"ambient": {"kind": "flat", "dim": 2, "index": 0},
    "immersion": {"params": ["u"], "components": ["u +", "0"], "domain": [[0, 1]]}})";
  EXPECT_NE(code_of(bad_expr), ErrorCode::UnknownEntry);
  const std::string ok = R"({"ambient": {"kind": "flat", "dim": 2, "index": 0},
    "immersion": {"params": ["u"], "components": ["u", "0"], "domain": [[0, "pi/2"]]}})";
  const SpecFile s = parse_spec(ok, "inline");
  EXPECT_NEAR(s.immersion.domain()[0].hi, std::acos(0.0), 1e-15);
}
