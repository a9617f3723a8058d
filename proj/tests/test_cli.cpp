#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"
#include "rtcover/cli.hpp"

using fixtures::data;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = rtcover::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "rtcover_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::json report(std::vector<std::string> args, int expected_code) {
  fs::path out = scratch("report.json");
  fs::remove(out);
  args.push_back("--json");
  args.push_back(out.string());
  Outcome o = run(args);
  CHECK(o.code == expected_code);
  return nlohmann::json::parse(slurp(out));
}

}  // namespace

TEST_CASE("tree command") {
  auto r = report({"tree", data("theta.graph"), "--pairs", "200", "--seed", "7"}, 0);
  CHECK(r["schema"] == 1);
  CHECK(r["command"] == "tree");
  CHECK(r["seed"] == 7);
  CHECK(r["results"]["four_point_violations"] == 0);
  CHECK(r["pass"] == true);
  CHECK_FALSE(r.contains("timings_ms"));

  auto f = report({"tree", data("theta.graph"), "--fiber", "u", "--radius", "2"}, 0);
  CHECK(f["results"]["fiber"]["count"] == 7);
  CHECK(f["results"]["fiber"]["points"].size() == 7);
  CHECK(f["results"]["fiber"]["radius"] == "2");

  CHECK(run({"tree", "missing.graph"}).code == rtcover::exit_input_error);
  CHECK(run({"tree", data("theta.graph"), "--pairs", "5"}).code == rtcover::exit_input_error);
  CHECK(run({"tree", data("theta.graph"), "--fiber", "nowhere"}).code == rtcover::exit_input_error);
  CHECK(run({"tree", data("square.cloud")}).code == rtcover::exit_input_error);
  CHECK(run({"bogus"}).code == rtcover::exit_input_error);
  CHECK(run({}).code == rtcover::exit_input_error);
  CHECK(run({"--help"}).code == rtcover::exit_ok);
}

TEST_CASE("cover command") {
  fs::path dot = scratch("cover.dot"), graph = scratch("cover.graph");
  auto r = report({"cover", data("rose2.graph"), data("idx2.sub"), "--bound", "6", "--dot", dot.string(), "--graph-out",
                   graph.string()},
                  0);
  CHECK(r["results"]["universality"]["pass"] == true);
  CHECK(r["results"]["deck"]["order"] == 2);
  CHECK(r["results"]["vertices"] == 2);
  CHECK(r["results"]["rank"] == 3);
  CHECK(r["results"]["lifts"]["g_x"] == "open");
  CHECK(r["results"]["lifts"]["g_x g_x"] == "closed");
  CHECK(slurp(dot).find("digraph") != std::string::npos);
  // Covers can be fed back in as base graphs.
  CHECK(run({"tree", graph.string()}).code == rtcover::exit_ok);

  auto full = report({"cover", data("rose2.graph"), data("full.sub")}, 0);
  CHECK(full["results"]["isomorphic_to_base"] == true);
  CHECK(full["results"]["deck"]["order"] == 1);

  auto nn = report({"cover", data("rose2.graph"), data("nonnormal.sub"), "--bound", "4"}, 1);
  bool found = false;
  for (const auto& c : nn["checks"])
    if (c["name"] == "normality") {
      found = true;
      CHECK(c["pass"] == false);
      CHECK(c["witness"] == "g_y g_x g_y^-1");
    }
  CHECK(found);

  CHECK(run({"cover", data("rose2.graph"), "missing.sub"}).code == rtcover::exit_input_error);
  CHECK(run({"cover", data("theta.graph"), data("idx2.sub")}).code == rtcover::exit_input_error);
}

TEST_CASE("eps command") {
  auto r = report({"eps", data("square.cloud"), "--scales", "3/2,6/5,1/2"}, 0);
  auto scales = r["results"]["stabilization"]["scales"];
  REQUIRE(scales.size() == 3);
  CHECK(scales[0]["rank"] == 0);
  CHECK(scales[1]["rank"] == 1);
  CHECK(scales[2]["rank"] == 0);
  CHECK(scales[2]["edges"] == 0);

  auto h = report({"eps", data("square.cloud"), "--scales", "6/5", "--homotopy", data("cyc.chain"), data("const.chain")}, 0);
  CHECK(h["results"]["homotopy"][0]["verdict"] == "no");

  auto c = report({"eps", data("c12.cloud"), "--scales", "9/2,3/2,5/4"}, 0);
  CHECK(c["results"]["stabilization"]["stable_rank"] == 1);

  CHECK(run({"eps", data("square.cloud"), "--scales", "0"}).code == rtcover::exit_input_error);
  CHECK(run({"eps", data("square.cloud"), "--scales", "1,2"}).code == rtcover::exit_input_error);
  CHECK(run({"eps", data("square.cloud"), "--scales", "1,x"}).code == rtcover::exit_input_error);
  CHECK(run({"eps", data("square.cloud")}).code == rtcover::exit_input_error);
  // The steps of cyc.chain have length 1, which is not below 1/2.
  CHECK(run({"eps", data("square.cloud"), "--scales", "1/2", "--homotopy", data("cyc.chain"), data("const.chain")}).code ==
        rtcover::exit_input_error);
  CHECK(run({"eps", data("square.cloud"), "--scales", "6/5", "--homotopy", data("cyc.chain")}).code ==
        rtcover::exit_input_error);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::vector<std::string>> commands{
      {"tree", data("rose2.graph"), "--pairs", "50", "--seed", "3", "--fiber", "x@1/2", "--radius", "2"},
      {"cover", data("rose2.graph"), data("idx4.sub"), "--bound", "4"},
      {"eps", data("c12.cloud"), "--scales", "9/2,3/2,5/4", "--homotopy", data("cyc.chain"), data("const.chain")}};
  for (auto args : commands) {
    if (args[0] == "eps") {
      // Chains over the circle fixture.
      fs::path a = scratch("loop.chain"), b = scratch("point.chain");
      std::ofstream(a) << "q0 q1 q2 q3 q4 q5 q6 q7 q8 q9 q10 q11 q0\n";
      std::ofstream(b) << "q0\n";
      args[5] = a.string();
      args[6] = b.string();
    }
    fs::path one = scratch("one.json"), two = scratch("two.json");
    auto first = args, second = args;
    first.insert(first.end(), {"--json", one.string()});
    second.insert(second.end(), {"--json", two.string()});
    CHECK(run(first).code == 0);
    CHECK(run(second).code == 0);
    CHECK(slurp(one) == slurp(two));
    CHECK(slurp(one).size() > 100);
  }
  auto t = report({"tree", data("theta.graph"), "--timings"}, 0);
  CHECK(t.contains("timings_ms"));
}
