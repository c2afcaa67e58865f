#include "stis/experiment.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace stis;

namespace {

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("stis_test_" + name);
  std::filesystem::remove_all(p);
  return p.string();
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("grid parsing") {
  std::vector<int> ns, nt;
  parse_grid("8,16,32x4,8", ns, nt);
  CHECK(ns == std::vector<int>{8, 16, 32});
  CHECK(nt == std::vector<int>{4, 8});
  parse_grid("2,4", ns, nt);
  CHECK(ns == nt);
  CHECK_THROWS_AS(parse_grid("8,,16", ns, nt), Error);
  CHECK_THROWS_AS(parse_grid("8x0", ns, nt), Error);
  CHECK_THROWS_AS(parse_grid("a", ns, nt), Error);
}

TEST_CASE("config round trip") {
  ExperimentConfig c;
  c.case_id = "custom";
  c.custom_base = "disk2d_kink";
  c.ns = {4, 8};
  c.nt = {2, 4};
  c.diagonal = true;
  c.pressure = PressureSpaceKind::Standard;
  c.overrides.mu_neg = 3.5;
  c.overrides.tau = 0.0;
  c.theta = 1e-3;
  c.max_dofs = 12345;
  c.threads = 2;
  c.seed = 99;
  const auto back = ExperimentConfig::from_json(c.to_json());
  CHECK(back == c);
  CHECK(ExperimentConfig::from_json(ExperimentConfig{}.to_json()) == ExperimentConfig{});

  const std::string dir = temp_dir("cfg");
  std::filesystem::create_directories(dir);
  c.save(dir + "/c.json");
  CHECK(ExperimentConfig::load(dir + "/c.json") == c);
}

TEST_CASE("config validation") {
  CHECK_THROWS_WITH_AS(ExperimentConfig::from_json({{"cases", "x"}}), doctest::Contains("unknown config key"), Error);
  CHECK_THROWS_AS(ExperimentConfig::from_json({{"grid", {{"ns", "eight"}}}}), Error);

  ExperimentConfig c;
  c.overrides.rho_neg = 2.0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("only accepted for case 'custom'"), Error);
  c = {};
  c.case_id = "paper3d_case1";
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("--enable-3d"), Error);
  c.enable_3d = true;
  CHECK_NOTHROW(c.validate());
  CHECK(c.dimension() == 3);
  c = {};
  c.case_id = "nope";
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.diagonal = true;
  c.ns = {4, 8};
  c.nt = {4};
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.theta = 1.0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = {};
  c.r = 3;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("run order") {
  ExperimentConfig c;
  c.ns = {4, 8};
  c.nt = {2, 3};
  CHECK(c.runs().size() == 4);
  CHECK(c.runs()[1] == std::pair<int, int>(4, 3));
  c.diagonal = true;
  CHECK(c.runs() == std::vector<std::pair<int, int>>{{4, 2}, {8, 3}});
}

TEST_CASE("custom case regenerates the data for new coefficients") {
  ExperimentConfig c;
  c.case_id = "custom";
  c.custom_base = "disk2d_smooth";
  c.overrides.mu_neg = 7.0;
  c.overrides.rho_pos = 2.0;
  const auto pc = make_experiment_case<2>(c);
  CHECK(pc.coeff.mu[0] == 7.0);
  CHECK(pc.coeff.rho[1] == 2.0);
  const Point<2> x(0.1, 0.2);
  const auto f = (*pc.exact)(x, 0.4, Phase::Neg);
  CHECK((pc.coeff.body_force(x, 0.4, Phase::Neg) - manufactured_body_force<2>(f, 10.0, 7.0)).norm() <= 1e-14);
}

TEST_CASE("size guard refuses before running") {
  ExperimentConfig c;
  c.ns = {2, 64};
  c.nt = {1};
  c.max_dofs = 5000;
  int runs = 0;
  CHECK_THROWS_WITH_AS(run_convergence(c, [&](const std::string&) { ++runs; }), doctest::Contains("budget"), Error);
  CHECK(runs == 0);
}

TEST_CASE("single-cell run emits a 1x1 table and all outputs") {
  ExperimentConfig c;
  c.ns = {1};
  c.nt = {1};
  c.out_dir = temp_dir("run");
  const auto res = run_convergence(c);
  REQUIRE(res.runs.size() == 1);
  CHECK(res.velocity_l2h1.get(1, 1).has_value());
  CHECK(res.runs[0].max_residual <= 1e-9);
  CHECK(res.runs[0].max_divergence_ratio <= 1e-9);
  write_outputs(c, res);
  for (const char* f : {"velocity_l2h1.csv", "velocity_l2l2.csv", "pressure_l2l2.csv", "summary.md", "provenance.json"})
    CHECK(std::filesystem::exists(c.out_dir + "/" + f));
  CHECK(slurp(c.out_dir + "/velocity_l2h1.csv").rfind("NS,1,EOC_S\n", 0) == 0);
  const auto prov = nlohmann::json::parse(slurp(c.out_dir + "/provenance.json"));
  CHECK(ExperimentConfig::from_json(prov.at("config")) == c);
  const auto& dofs = prov.at("runs").at(0).at("dofs");
  for (const char* k : {"velocity", "pressure", "pressure_base", "enriched_vertices", "filtered_vertices"})
    CHECK(dofs.contains(k));
  CHECK(prov.at("runs").at(0).at("slabs").size() == 1);
}

TEST_CASE("poly2d run reproduces the exact solution") {
  ExperimentConfig c;
  c.case_id = "poly2d";
  c.ns = {2};
  c.nt = {2};
  const auto res = run_convergence(c);
  CHECK(res.runs[0].errors.velocity_l2h1 <= 1e-9);
  CHECK(res.runs[0].errors.pressure_l2l2 <= 1e-9);
}

TEST_CASE("matrix export and decomposition dump") {
  ExperimentConfig c;
  c.ns = {2};
  c.nt = {2};
  c.out_dir = temp_dir("export");
  const std::string m = export_slab_matrix(c, 2);
  std::ifstream is(m);
  long rows = 0, cols = 0, nnz = 0;
  is >> rows >> cols >> nnz;
  CHECK(rows == cols);
  CHECK(nnz > rows);
  const auto j = nlohmann::json::parse(slurp(dump_decompositions(c, 1)));
  CHECK(j.is_array());
  CHECK(j.size() > 0);
  CHECK_THROWS_AS(export_slab_matrix(c, 3), Error);
}
