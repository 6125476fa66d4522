#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bundle.hpp"
#include "commands.hpp"
#include "tropwave/io.hpp"

using namespace tropwave;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(TROPWAVE_TEST_DATA) + "/" + name; }

fs::path fresh_dir(const std::string& name) {
  fs::path d = fs::temp_directory_path() / ("tropwave_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "tropwave");
  return cli::run(args);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json manifest(const fs::path& dir) { return parse_json(slurp(dir / "manifest.json")); }

}  // namespace

TEST(Cli, WaveOnFixtureSeries) {
  fs::path out = fresh_dir("wave");
  ASSERT_EQ(run({"wave", "--series", data("third_square.json"), "--point", "1/5,1/2", "--out", out.string()}), 0);
  Json ev = parse_json(slurp(out / "event.json"));
  EXPECT_EQ(ev["c"], Json("2/15"));
  EXPECT_EQ(ev["avalanche_area"], Json("2/9"));
  for (const char* f : {"event.json", "after.json", "before.svg", "after.svg", "manifest.json"})
    EXPECT_TRUE(fs::exists(out / f)) << f;
  Json m = manifest(out);
  for (const auto& entry : m["files"])
    EXPECT_EQ(entry["sha256"].get<std::string>(), cli::sha256_hex(slurp(out / entry["path"].get<std::string>())));
  fs::remove_all(out);
}

TEST(Cli, ExitCodes) {
  fs::path out = fresh_dir("codes");
  EXPECT_EQ(run({"no-such-command"}), cli::ParseFailure);
  EXPECT_EQ(run({"wave", "--series", data("third_square.json"), "--point", "abc", "--out", out.string()}), cli::ParseFailure);
  EXPECT_EQ(run({"wave", "--series", data("third_square.json"), "--point", "2,2", "--out", out.string()}),
            cli::DomainViolation);
  EXPECT_EQ(run({"dynamics", "--domain", data("square3.json"), "--points", data("lattice_points.json"), "--max-steps",
                 "0", "--out", out.string()}),
            cli::ParseFailure);
  EXPECT_EQ(run({"dynamics", "--domain", data("square3.json"), "--points", data("lattice_points.json"), "--max-steps",
                 "1", "--out", out.string()}),
            cli::NoConvergence);
  EXPECT_EQ(run({"make-nice", "--series", data("third_square.json"), "--eps", "-1", "--out", out.string()}),
            cli::ParseFailure);
  fs::remove_all(out);
}

TEST(Cli, DynamicsStabilizesOnLatticePoints) {
  fs::path out = fresh_dir("dyn");
  ASSERT_EQ(run({"dynamics", "--domain", data("square3.json"), "--points", data("lattice_points.json"), "--out",
                 out.string()}),
            0);
  Json r = parse_json(slurp(out / "result.json"));
  EXPECT_EQ(r["stopped_reason"], Json("Stabilized"));
  std::string log = slurp(out / "events.jsonl");
  EXPECT_EQ(events_from_lines(log).size(), r["steps"].get<std::size_t>());
  fs::remove_all(out);
}

TEST(Cli, ConfigFileIsOverriddenByFlags) {
  fs::path out = fresh_dir("config");
  fs::create_directories(out);
  fs::path cfg = out / "cfg.json";
  std::ofstream(cfg) << R"({"domain":")" << data("square3.json") << R"(","points":")" << data("lattice_points.json")
                     << R"(","max_steps":1})";
  EXPECT_EQ(run({"dynamics", "--config", cfg.string(), "--out", (out / "a").string()}), cli::NoConvergence);
  EXPECT_EQ(run({"dynamics", "--config", cfg.string(), "--max-steps", "100", "--out", (out / "b").string()}), 0);
  fs::remove_all(out);
}

TEST(Cli, StatsDigestsAreReproducible) {
  fs::path a = fresh_dir("stats_a"), b = fresh_dir("stats_b");
  std::vector<std::string> common{"stats", "--n", "4", "--trials", "6", "--seed", "11"};
  auto with_out = [&](const fs::path& d) {
    auto v = common;
    v.insert(v.end(), {"--out", d.string()});
    return v;
  };
  ASSERT_EQ(run(with_out(a)), 0);
  ASSERT_EQ(run(with_out(b)), 0);
  EXPECT_EQ(slurp(a / "stats.json"), slurp(b / "stats.json"));
  Json ma = manifest(a), mb = manifest(b);
  EXPECT_EQ(ma["files"], mb["files"]);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, LiftCheckSingleAndFuzz) {
  fs::path out = fresh_dir("lift");
  ASSERT_EQ(run({"lift-check", "--poly", data("lift_xy.json"), "--p1", "t", "--p2", "t^(2)", "--out", out.string()}), 0);
  Json j = parse_json(slurp(out / "lift.json"));
  EXPECT_EQ(j["status"], Json("Holds"));
  ASSERT_EQ(run({"lift-check", "--trials", "200", "--seed", "4", "--out", out.string()}), 0);
  Json f = parse_json(slurp(out / "lift.json"));
  EXPECT_EQ(f["holds"], Json(200));
  fs::remove_all(out);
}

TEST(Cli, CoarsenCertifiesWithoutFaceCollapse) {
  fs::path out = fresh_dir("coarsen");
  ASSERT_EQ(run({"coarsen", "--series", data("collapse_series.json"), "--points", data("collapse_points.json"), "--eps",
                 "1/100", "--out", out.string()}),
            0);
  Json j = parse_json(slurp(out / "coarsen.json"));
  EXPECT_EQ(j["certified"], Json(true));
  EXPECT_EQ(j["face_collapsed_events"], Json(0));
  fs::remove_all(out);
}

TEST(Cli, CurveAndVergeAndMakeNice) {
  fs::path out = fresh_dir("misc");
  ASSERT_EQ(run({"curve", "--series", data("third_square.json"), "--out", out.string()}), 0);
  Json c = parse_json(slurp(out / "curve.json"));
  EXPECT_EQ(c["symplectic_area"], c["boundary_area"]);
  EXPECT_EQ(c["balanced"], Json(true));
  ASSERT_EQ(run({"verge", "--domain", data("unit_square.json"), "--degrees", "2,1,2,1", "--eps", "1/10", "--out",
                 out.string()}),
            0);
  EXPECT_TRUE(fs::exists(out / "verge.svg"));
  ASSERT_EQ(run({"make-nice", "--series", data("third_square.json"), "--eps", "1/10", "--out", out.string()}), 0);
  EXPECT_TRUE(fs::exists(out / "nice.json"));
  fs::remove_all(out);
}
