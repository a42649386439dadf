#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "brickpoly/cli.hpp"

using namespace brickpoly;

namespace {
struct RunResult {
  int code;
  std::string out, err;
};
RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}
}  // namespace

TEST_CASE("facets command golden output") {
  auto r = run_cli({"facets", "--type", "A", "--rank", "3", "--word", "2,3,1,3,2,1,2,3,1"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema_version"] == 1);
  CHECK(j["facet_count"] == 10);
  CHECK(j["facets"][0] == nlohmann::json({2, 3, 5}));
}

TEST_CASE("identical invocations produce byte-identical output") {
  std::vector<std::string> args{"brick", "--type", "A",         "--rank", "3",
                                "--cluster", "--c", "1,2,3", "--classical"};
  auto a = run_cli(args);
  auto b = run_cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  // --parallel may change wall time, never bytes
  auto args_par = args;
  args_par.push_back("--parallel");
  auto c = run_cli(args_par);
  CHECK(c.out == a.out);
}

TEST_CASE("brick vectors include the paper example vertex") {
  auto r = run_cli({"brick", "--type", "A", "--rank", "3", "--word", "2,3,1,3,2,1,2,3,1",
                    "--classical"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["realizing"] == true);
  bool found = false;
  for (const auto& v : j["brick_vectors_classical"])
    if (v == nlohmann::json({"1", "6", "5", "6"})) found = true;
  CHECK(found);
  CHECK(j["certificates"].size() == 10);
}

TEST_CASE("non-realizing words are refused with exit 2") {
  auto r = run_cli({"brick", "--type", "A", "--rank", "2", "--word", "1,2,1,2"});
  CHECK(r.code == 2);
  CHECK(r.err.find("rank defect 1") != std::string::npos);
}

TEST_CASE("bad input yields exit 2") {
  CHECK(run_cli({"facets", "--type", "Z", "--rank", "3", "--word", "1"}).code == 2);
  CHECK(run_cli({"facets", "--type", "A", "--rank", "3", "--word", "9"}).code == 2);
  CHECK(run_cli({"kappa", "--type", "A", "--rank", "3", "--word", "1,2",
                 "--element", "oneline:nonsense"})
            .code == 2);
}

TEST_CASE("kappa and fiber commands") {
  auto r = run_cli({"kappa", "--type", "A", "--rank", "3", "--word", "2,3,1,3,2,1,2,3,1",
                    "--element", "oneline:2,3,1,4"});
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["facet"] == nlohmann::json({2, 5, 6}));

  auto f = run_cli({"fiber", "--type", "A", "--rank", "3", "--word", "2,3,1,3,2,1,2,3,1",
                    "--facet", "2,5,6"});
  REQUIRE(f.code == 0);
  auto j = nlohmann::json::parse(f.out);
  CHECK(j["elements"].size() == 3);
  CHECK(j["meet"].is_null());
  CHECK(j["join"]["one_line"] == nlohmann::json({3, 2, 1, 4}));
}

TEST_CASE("poset and minkowski commands") {
  auto p = run_cli({"poset", "--type", "A", "--rank", "3", "--word", "2,3,1,3,2,1,2,3,1"});
  REQUIRE(p.code == 0);
  auto pj = nlohmann::json::parse(p.out);
  CHECK(pj["source"] == nlohmann::json({2, 3, 5}));
  CHECK(pj["sink"] == nlohmann::json({4, 7, 9}));

  auto m = run_cli({"minkowski", "--type", "A", "--rank", "3", "--word", "2,3,1,3,2,1,2,3,1",
                    "--classical"});
  REQUIRE(m.code == 0);
  auto mj = nlohmann::json::parse(m.out);
  CHECK(mj["w_matroid_certified"] == true);
  CHECK(mj["summands"][6]["vertices"].size() == 3);  // position 7 is the triangle
}

TEST_CASE("cluster and assoc commands") {
  auto c = run_cli({"cluster", "--type", "A", "--rank", "3", "--c", "1,2,3"});
  REQUIRE(c.code == 0);
  auto cj = nlohmann::json::parse(c.out);
  CHECK(cj["facets"].size() == 14);

  auto a = run_cli({"assoc", "--type", "A", "--rank", "3", "--c", "1,2,3", "--classical"});
  REQUIRE(a.code == 0);
  auto aj = nlohmann::json::parse(a.out);
  CHECK(aj["comparison"] == true);
  CHECK(aj["translation_classical"] == nlohmann::json({"3", "2", "3", "6"}));
}

TEST_CASE("dot outputs") {
  auto g = run_cli({"flipgraph", "--type", "A", "--rank", "3", "--word", "2,3,1,3,2,1,2,3,1"});
  REQUIRE(g.code == 0);
  CHECK(g.out.find("digraph flips") == 0);
  CHECK(g.out.find("\"2,3,5\"") != std::string::npos);
  auto t = run_cli({"greedy-tree", "--sign", "+", "--type", "A", "--rank", "3", "--word",
                    "2,3,1,3,2,1,2,3,1"});
  REQUIRE(t.code == 0);
  CHECK(t.out.find("\"2,3,5\" [shape=doublecircle]") != std::string::npos);
}

TEST_CASE("verify suites") {
  auto ok = run_cli({"verify", "--suite", "cambrian", "--type", "A", "--rank", "3", "--c",
                     "1,2,3"});
  CHECK(ok.code == 0);
  auto ex = run_cli({"verify", "--suite", "exactnum"});
  CHECK(ex.code == 0);
  auto sw = run_cli({"verify", "--suite", "subword", "--type", "A", "--rank", "3", "--word",
                     "2,3,1,3,2,1,2,3,1"});
  CHECK(sw.code == 0);
  auto bad = run_cli({"verify", "--suite", "doesnotexist", "--type", "A", "--rank", "2"});
  CHECK(bad.code == 2);
}

TEST_CASE("group cap refusal") {
  auto r = run_cli({"fiber", "--type", "A", "--rank", "4", "--cluster", "--c", "1,2,3,4",
                    "--facet", "1,2,3,4", "--cap", "10"});
  CHECK(r.code == 2);
  CHECK(r.err.find("cap") != std::string::npos);
}
