#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vdd/ansatz.hpp"
#include "vdd/cli.hpp"
#include "vdd/errors.hpp"
#include "vdd/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = vdd::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vdd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  std::string read(const std::string& name) const {
    std::ifstream f(path(name));
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

int count_lines(const std::string& text) { return static_cast<int>(std::count(text.begin(), text.end(), '\n')); }

}  // namespace

TEST_F(CliTest, EigenPrintsGroundEnergy) {
  const Result r = run({"eigen", "--model", "tfim", "--n", "5", "--g", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "-4.0\n");
}

TEST_F(CliTest, AmplitudeOfWorkedExample) {
  vdd::VddGraph g = vdd::build_accordion(3);
  g.set_params(1, {0.6, 0.3, 0.5});
  g.set_params(2, {0.8, -0.2, 1.1});
  g.set_params(3, {0.7, 0.9, 0.0});
  g.set_params(4, {0.5, 0.4, 1.3});
  write("eq.json", vdd::serialize(g));
  const Result r = run({"amplitude", "--vdd", path("eq.json"), "--bits", "001"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "modulus 0.41569219 phase 1.4\n");
  EXPECT_EQ(run({"amplitude", "--vdd", path("eq.json"), "--bits", "01"}).code, 2);
  EXPECT_EQ(run({"amplitude", "--vdd", path("missing.json"), "--bits", "001"}).code, 2);
}

TEST_F(CliTest, BuildValidateStatevector) {
  EXPECT_EQ(run({"build", "--n", "3", "--seed", "4", "--output-dir", path("b")}).code, 0);
  EXPECT_TRUE(fs::exists(path("b/vdd.json")));
  EXPECT_TRUE(fs::exists(path("b/resolved_config.json")));
  EXPECT_EQ(run({"validate", "--vdd", path("b/vdd.json")}).out, "valid\n");
  const Result sv = run({"statevector", "--vdd", path("b/vdd.json")});
  EXPECT_EQ(sv.code, 0);
  EXPECT_EQ(count_lines(sv.out), 9);

  json doc = json::parse(read("b/vdd.json"));
  doc["nodes"][0]["child0"] = 4;
  write("bad.json", doc.dump());
  const Result bad = run({"validate", "--vdd", path("bad.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("level skip at node 1"), std::string::npos);
}

TEST_F(CliTest, ConfigPrecedenceAndUnknownKeys) {
  write("c.json", R"({"model": "heisenberg", "n": 2})");
  EXPECT_EQ(run({"eigen", "--config", path("c.json")}).out, "-3.0\n");
  EXPECT_EQ(run({"eigen", "--config", path("c.json"), "--model", "tfim", "--g", "0"}).out, "-1.0\n");
  write("u.json", R"({"model": "tfim", "colour": 1})");
  const Result r = run({"eigen", "--config", path("u.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
  write("t.json", R"({"n": "three"})");
  EXPECT_EQ(run({"eigen", "--config", path("t.json")}).code, 2);
  EXPECT_EQ(run({"eigen", "--n", "x"}).code, 2);
  EXPECT_EQ(run({"eigen", "--model", "ising"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, TrainWritesTraceAndGraph) {
  const Result r = run({"train", "--model", "heisenberg", "--n", "10", "--epochs", "10000", "--seed", "7",
                        "--output-dir", path("t")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(read("t/trace.csv")), 10001);
  EXPECT_NO_THROW(vdd::deserialize(read("t/final_vdd.json")));
  const json cfg = json::parse(read("t/resolved_config.json"));
  EXPECT_EQ(cfg.at("seed"), 7);
  EXPECT_EQ(cfg.at("param_mode"), "trig");
  EXPECT_EQ(cfg.at("boundary"), "open");
  EXPECT_EQ(cfg.at("lr"), 0.01);
}

TEST_F(CliTest, GeneratedSeedIsRecorded) {
  const Result r = run({"train", "--model", "tfim", "--n", "3", "--epochs", "3", "--output-dir", path("s")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("generated"), std::string::npos);
  EXPECT_TRUE(json::parse(read("s/resolved_config.json")).at("seed").is_number_unsigned());
}

TEST_F(CliTest, TrainConfigErrorWritesNothing) {
  const Result r = run({"train", "--n", "3", "--epochs", "3", "--lr", "-1", "--seed", "1", "--output-dir",
                        path("e")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("lr"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("e/trace.csv")));
  EXPECT_FALSE(fs::exists(path("e/resolved_config.json")));
}

TEST_F(CliTest, PartialOutputsRemovedOnFailure) {
  fs::create_directories(path("p/fits.csv"));  // blocks the second output
  const Result r = run({"variance-scan", "--model", "tfim", "--n-values", "2,3", "--num-seeds", "3", "--seed",
                        "1", "--output-dir", path("p")});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(fs::exists(path("p/variance.csv")));
}

TEST_F(CliTest, ScanSweepSample) {
  EXPECT_EQ(run({"variance-scan", "--model", "z1z2", "--n-values", "2,3,4", "--num-seeds", "4", "--seed", "1",
                 "--output-dir", path("v")})
                .code,
            0);
  EXPECT_EQ(read("v/variance.csv").substr(0, 36), "model,g,n,param,variance,num_seeds\nz");
  EXPECT_EQ(run({"g-sweep", "--g-values", "0", "--n", "3", "--epochs", "50", "--seed", "1", "--output-dir",
                 path("g")})
                .code,
            0);
  EXPECT_EQ(read("g/sweep.csv").substr(0, 32), "g,final_energy,e0,relative_error");
  EXPECT_EQ(run({"g-sweep", "--g-values", "", "--seed", "1", "--output-dir", path("g2")}).code, 2);
  run({"build", "--n", "4", "--seed", "2", "--output-dir", path("b")});
  EXPECT_EQ(run({"sample", "--vdd", path("b/vdd.json"), "--count", "50", "--seed", "3", "--output-dir",
                 path("b")})
                .code,
            0);
  EXPECT_EQ(count_lines(read("b/samples.csv")), 51);
}

TEST_F(CliTest, PlotSvg) {
  write("trace.csv", "epoch,loss,relative_error,name\n0,3,1,a\n1,2,0.1,b\n2,1,0.01,c\n3,0.5,,d\n");
  ASSERT_EQ(run({"plot", "--csv", path("trace.csv"), "--log-y", "--output-dir", path("o")}).code, 0);
  const std::string svg = read("o/plot.svg");
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  ASSERT_EQ(run({"plot", "--csv", path("trace.csv"), "--log-y", "--out", "again.svg", "--output-dir", path("o")})
                .code,
            0);
  EXPECT_EQ(read("o/again.svg"), svg);
  EXPECT_EQ(run({"plot", "--csv", path("trace.csv"), "--y", "missing", "--output-dir", path("o")}).code, 2);
  EXPECT_EQ(run({"plot", "--csv", path("trace.csv"), "--y", "name", "--output-dir", path("o")}).code, 2);
  write("empty.csv", "");
  EXPECT_EQ(run({"plot", "--csv", path("empty.csv"), "--output-dir", path("o")}).code, 2);
  write("header.csv", "epoch,relative_error\n");
  EXPECT_EQ(run({"plot", "--csv", path("header.csv"), "--output-dir", path("o")}).code, 2);
}

TEST(Svg, DecreasingSeriesDrawsDownward) {
  vdd::CsvTable t{{"epoch", "relative_error"}, {{"0", "1"}, {"1", "0.1"}, {"2", "0.001"}}};
  const std::string svg = vdd::cli::render_svg(t, "epoch", "relative_error", true);
  const auto at = svg.find("points=\"");
  std::istringstream pts(svg.substr(at + 8, svg.find('"', at + 8) - at - 8));
  std::string p;
  double last_y = -1.0;
  while (pts >> p) {
    const double y = std::stod(p.substr(p.find(',') + 1));
    EXPECT_GT(y, last_y);  // SVG y grows downward
    last_y = y;
  }
  EXPECT_THROW(vdd::cli::render_svg(t, "epoch", "nope", false), vdd::ConfigError);
}
