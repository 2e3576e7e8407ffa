#include "freespec/cli.hpp"
#include "freespec/json_io.hpp"
#include "helpers.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace freespec;
using json_io::Json;

namespace {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("freespec_test_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(Cli, ClassifyPauliInCube) {
  const RunResult r = run({"classify", "--set", "cube:2", "--point", "pauli"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["classical"].get<bool>());
  EXPECT_TRUE(j["matrix"].get<bool>());
  EXPECT_TRUE(j["free"].get<bool>());
}

TEST(Cli, DecomposeCubeOrigin) {
  const RunResult r = run({"decompose", "--set", "cube:2", "--point", "zero:1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_LE(j["total_size"].get<int>(), 3);
  EXPECT_LT(j["residual"].get<double>(), 1e-6);
}

TEST(Cli, MemberBallOrigin) {
  const RunResult r = run({"member", "--set", "ball:3", "--point", "zero:2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["status"], "Interior");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, cli::kUsageError);
  EXPECT_EQ(run({"member", "--set", "sphere:2", "--point", "zero:1"}).code, cli::kUsageError);
  // g mismatch between set and point.
  EXPECT_EQ(run({"member", "--set", "cube:3", "--point", "pauli"}).code, cli::kUsageError);
  const auto outside = temp_file("outside.json", R"({"g":1,"n":1,"field":"real","matrices":[[[2.0]]]})");
  EXPECT_EQ(run({"decompose", "--set", "cube:1", "--point", outside.string()}).code, cli::kDomainError);
  // Membership reports Outside as a verdict, not an error.
  EXPECT_EQ(run({"member", "--set", "cube:1", "--point", outside.string()}).code, cli::kOk);
  const auto bad = temp_file("bad.json", R"({"g":1,"n":2,"field":"real","matrices":[[[1.0]]]})");
  EXPECT_EQ(run({"member", "--set", "cube:1", "--point", bad.string()}).code, cli::kUsageError);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"sample", "--set", "cube:2", "--n", "2", "--kind", "boundary", "--seed", "7"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> dec = {"decompose", "--set", "ball:2", "--point", "random:2", "--seed", "3"};
  EXPECT_EQ(run(dec).out, run(dec).out);
  EXPECT_NE(run({"sample", "--set", "cube:2", "--seed", "8"}).out, run({"sample", "--set", "cube:2", "--seed", "9"}).out);
}

TEST(Cli, SampleRoundTrips) {
  const RunResult s = run({"sample", "--set", "ball:2", "--n", "2", "--kind", "boundary", "--seed", "5"});
  ASSERT_EQ(s.code, 0);
  const auto file = temp_file("sample.json", s.out);
  const Json parsed = Json::parse(s.out);
  EXPECT_EQ(json_io::dump(json_io::tuple_to_json(json_io::tuple_from_json(parsed))) + "\n", s.out);
  for (const char* cmd : {"member", "classify", "decompose", "oracle"}) {
    std::vector<std::string> args = {cmd, "--set", "ball:2", "--point", file.string()};
    if (std::string(cmd) == "oracle") args.insert(args.end(), {"--trials", "50"});
    EXPECT_EQ(run(args).code, 0) << cmd;
  }
  EXPECT_EQ(Json::parse(run({"member", "--set", "ball:2", "--point", file.string()}).out)["status"], "Boundary");
}

TEST(Cli, BatchKeepsOrder) {
  Json list = Json::array();
  for (double v : {0.0, 1.0, 2.0}) list.push_back(json_io::tuple_to_json(testutil::point({v})));
  const auto file = temp_file("batch.json", list.dump());
  const RunResult one = run({"member", "--set", "cube:1", "--point", file.string()});
  const RunResult four = run({"member", "--set", "cube:1", "--point", file.string(), "--jobs", "4"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
  const Json j = Json::parse(one.out);
  ASSERT_EQ(j.size(), 3u);
  EXPECT_EQ(j[0]["status"], "Interior");
  EXPECT_EQ(j[1]["status"], "Boundary");
  EXPECT_EQ(j[2]["status"], "Outside");
}

TEST(Cli, OutFile) {
  const auto p = std::filesystem::temp_directory_path() / "freespec_test_out.json";
  std::filesystem::remove(p);
  const RunResult r = run({"example", "--set", "cube:2", "--out", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(p);
  const Json j = Json::parse(in);
  EXPECT_EQ(json_io::pencil_from_json(j).m(), 4);
}

TEST(Cli, MconvAndDualCheck) {
  const auto inside = temp_file("disk_in.json", R"({"g":2,"n":1,"field":"real","matrices":[[[0.6]],[[0.8]]]})");
  const auto outside = temp_file("disk_out.json", R"({"g":2,"n":1,"field":"real","matrices":[[[1.01]],[[0]]]})");
  EXPECT_TRUE(Json::parse(run({"mconv-member", "--set", "pauli", "--point", inside.string()}).out)["member"].get<bool>());
  EXPECT_FALSE(Json::parse(run({"mconv-member", "--set", "pauli", "--point", outside.string()}).out)["member"].get<bool>());
  const RunResult d = run({"dual-check", "--set", "pauli", "--point", inside.string(), "--samples", "50"});
  EXPECT_EQ(d.code, 0);
}

TEST(JsonIo, TupleRoundTrip) {
  linalg::Rng rng(71);
  const MatrixTuple x({linalg::random_hermitian(3, Field::kComplex, rng)}, Field::kComplex);
  const MatrixTuple y = json_io::tuple_from_json(Json::parse(json_io::dump(json_io::tuple_to_json(x))));
  EXPECT_EQ(distance(x, y), 0.0);
  EXPECT_EQ(y.field(), Field::kComplex);
  EXPECT_THROW(json_io::tuple_from_json(Json::parse(R"({"g":1,"n":1,"field":"real"})")), Error);
  EXPECT_THROW(json_io::tuple_from_json(Json::parse(R"({"g":1,"n":1,"field":"quaternion","matrices":[[[1]]]})")), Error);
}
