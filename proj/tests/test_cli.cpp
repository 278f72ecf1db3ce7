#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wreslab/generators.hpp"
#include "wreslab/io.hpp"
#include "wreslab/suites.hpp"

using namespace wreslab;
using json = nlohmann::json;

namespace {

std::filesystem::path scratch() {
  auto dir = std::filesystem::temp_directory_path() / "wreslab_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(WRESLAB_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("scalar json") {
  const QQi z(mpq_class(-3, 4), mpq_class(5));
  const json j = io::scalar_to_json(z);
  CHECK(j == json{{"re", "-3/4"}, {"im", "5"}});
  CHECK(io::scalar_from_json<QQi>(j) == z);
  CHECK(io::scalar_from_json<QQi>(json(7)) == QQi(7));
  CHECK(io::scalar_from_json<QQi>(json("1/3")) == QQi::ratio(1, 3));
  CHECK_THROWS_AS(io::scalar_from_json<QQi>(json(0.5)), ParseError);
  CHECK(io::scalar_from_json<C64>(json{{"re", 0.25}, {"im", -1}}) == C64(0.25, -1));
}

TEST_CASE("symbol json round trips") {
  const auto sz = symbols::heaviside<QQi>(2, -4);
  CHECK(io::symbol_from_json<QQi>(io::symbol_to_json(sz)) == sz);

  const auto w = algebraic_lift(gen::winding_family(), 6);
  const auto back = io::symbol_from_json<QQi>(json::parse(io::symbol_to_json(w).dump()));
  CHECK(back == w);
  for (int d = 0; d >= w.floor(); --d) CHECK(back.component(d) == w.component(d));

  Rng rng = trial_rng(51, 0);
  const auto a = gen::symbol(rng, 3, 1, 4, 3).convert<C64>();
  CHECK(io::symbol_from_json<C64>(json::parse(io::symbol_to_json(a).dump())) == a);
}

TEST_CASE("symbol json schema violations carry a pointer") {
  json bad = io::symbol_to_json(symbols::xi<QQi>(1, -2));
  bad["floor"] = 3;
  CHECK_THROWS_AS(io::symbol_from_json<QQi>(bad), ParseError);
  json missing = io::symbol_to_json(symbols::xi<QQi>(1, -2));
  missing.erase("order");
  try {
    io::symbol_from_json<QQi>(missing);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("/order") != std::string::npos);
  }
  json wrong = io::symbol_to_json(symbols::xi<QQi>(1, -2));
  wrong["components"][0]["plus"]["coeffs"][0]["matrix"] = "x";
  CHECK_THROWS_AS(io::symbol_from_json<QQi>(wrong), ParseError);
}

TEST_CASE("jet and nerve json round trips") {
  Rng rng = trial_rng(52, 0);
  const auto p = gen::random_idempotent_jet(rng, 3, 4, 1);
  CHECK(io::jet_from_json<QQi>(io::jet_to_json(p)) == p);
  const auto nerve = fixtures::quaternion_four_chart();
  const auto back = io::nerve_from_json(json::parse(io::nerve_to_json(nerve).dump()));
  CHECK(back.charts == nerve.charts);
  REQUIRE(back.overlaps.size() == nerve.overlaps.size());
  CHECK((back.overlaps[0].samples[1].map - nerve.overlaps[0].samples[1].map).norm() <= 1e-15);
  CHECK(back.tetrahedra == nerve.tetrahedra);
}

TEST_CASE("suites report deterministically") {
  SuiteConfig cfg;
  cfg.name = "trace";
  cfg.trials = 0;
  const auto empty = run_suite(cfg);
  CHECK(empty.passed);
  CHECK(empty.report["results"].empty());

  cfg.trials = 12;
  const auto a = run_suite(cfg);
  cfg.execution = parallel::Execution::serial;
  const auto b = run_suite(cfg);
  CHECK(a.passed);
  CHECK(a.report.dump() == b.report.dump());
  cfg.seed = 2;
  CHECK(run_suite(cfg).report.dump() != a.report.dump());

  cfg.name = "nope";
  CHECK_THROWS_AS(run_suite(cfg), UsageError);
  cfg.name = "trace";
  cfg.mode = "f32";
  CHECK_THROWS_AS(run_suite(cfg), UsageError);
}

TEST_CASE("small suites pass") {
  for (const char* name : {"prop1", "frames", "cocycle"}) {
    SuiteConfig cfg;
    cfg.name = name;
    cfg.trials = 4;
    const auto rep = run_suite(cfg);
    CHECK_MESSAGE(rep.passed, name);
    CHECK(rep.report["first_counterexample"].is_null());
  }
  SuiteConfig v;
  v.name = "vanish";
  v.trials = 2;
  v.depth = 4;
  CHECK(run_suite(v).passed);
}

TEST_CASE("cli exit codes and outputs") {
  const auto dir = scratch();
  const auto sym = dir / "w.json";
  io::write_file(sym.string(), io::symbol_to_json(embed(gen::winding_family(), 4)));

  CHECK(run_cli("lift " + sym.string() + " --depth 4 --out " + (dir / "lift.json").string()) == 0);
  const auto lift = io::symbol_from_json<QQi>(io::read_file((dir / "lift.json").string()));
  CHECK(idempotency_defect(lift).is_zero());

  CHECK(run_cli("residue " + (dir / "lift.json").string() + " --out " + (dir / "r.json").string()) == 0);
  const json r = io::read_file((dir / "r.json").string());
  CHECK(r["r"] == json{{"re", "0"}, {"im", "0"}});
  CHECK(r.contains("density"));
  CHECK(run_cli("residue " + (dir / "lift.json").string() + " --geometric") == 2);

  CHECK(run_cli("--mode f64 lift " + sym.string() + " --method contour --nodes 64 --out " +
                (dir / "c.json").string()) == 0);
  CHECK(run_cli("lift " + sym.string() + " --method contour") == 2);
  CHECK(run_cli("compose " + sym.string() + " " + sym.string() + " --out " + (dir / "pp.json").string()) == 0);
  CHECK(run_cli("adjoint " + sym.string() + " --out " + (dir / "adj.json").string()) == 0);
  CHECK(run_cli("self-adjointize " + (dir / "lift.json").string() + " --out " + (dir / "sa.json").string()) == 0);

  std::ofstream(dir / "broken.json") << "{ not json";
  CHECK(run_cli("residue " + (dir / "broken.json").string()) == 2);
  CHECK(run_cli("residue " + (dir / "missing.json").string()) == 2);
  CHECK(run_cli("no-such-command") == 2);
  CHECK(run_cli("suite bogus") == 2);

  io::write_file((dir / "nerve.json").string(), io::nerve_to_json(fixtures::quaternion_three_chart()));
  CHECK(run_cli("cocycle " + (dir / "nerve.json").string() + " --report " + (dir / "rep.json").string()) == 0);
  CHECK(io::read_file((dir / "rep.json").string())["passed"] == true);

  Rng rng = trial_rng(53, 0);
  const auto p = gen::random_idempotent_jet(rng, 2, 4, 1);
  const auto pt = newton_idempotent_lift(p + gen::random_jet(rng, 2, 4, 1));
  io::write_file((dir / "p.json").string(), io::jet_to_json(p));
  io::write_file((dir / "pt.json").string(), io::jet_to_json(pt));
  CHECK(run_cli("verify-trace " + (dir / "p.json").string() + " " + (dir / "pt.json").string() + " --j 2") == 0);
  io::write_file((dir / "q.json").string(), io::jet_to_json(p * QQi(2)));
  CHECK(run_cli("verify-trace " + (dir / "q.json").string() + " " + (dir / "pt.json").string()) == 3);

  CHECK(run_cli("dirac-experiment --trials 2 --depth 3 --out " + (dir / "d.csv").string()) == 0);
  CHECK(slurp(dir / "d.csv").rfind("trial,wres_r,density_max_abs\n0,", 0) == 0);
}

TEST_CASE("cli suite reports are byte-identical across runs") {
  const auto dir = scratch();
  CHECK(run_cli("suite trace --trials 5 --seed 9 --out " + (dir / "t1.json").string()) == 0);
  CHECK(run_cli("suite trace --trials 5 --seed 9 --serial --out " + (dir / "t2.json").string()) == 0);
  CHECK(slurp(dir / "t1.json") == slurp(dir / "t2.json"));
  CHECK(run_cli("suite trace --trials 0") == 0);
}
