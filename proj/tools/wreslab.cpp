// wreslab command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or parse error, 3 runtime error.

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "wreslab/generators.hpp"
#include "wreslab/io.hpp"
#include "wreslab/residue.hpp"
#include "wreslab/suites.hpp"

namespace {

using namespace wreslab;
using json = nlohmann::json;

struct Globals {
  std::string mode = "exact";
  std::optional<int> depth;
  std::uint64_t seed = 1;
  std::string out = "-";
  bool truncate = false;
};

template <class S>
ClassicalSymbol<S> load_symbol(const std::string& path) {
  return io::symbol_from_json<S>(io::read_file(path));
}

/// Runs fn<QQi> or fn<C64> according to --mode.
template <class Fn>
int by_mode(const Globals& g, Fn&& fn) {
  if (g.mode == "exact") return fn(QQi{});
  return fn(C64{});
}

int default_depth(const Globals& g, int fallback) { return g.depth.value_or(fallback); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbol calculus, residues and projections on the circle"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--mode", g.mode, "Scalar mode")->check(CLI::IsMember({"exact", "f64"}));
  app.add_option("--depth", g.depth, "Number of levels below the result order")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", g.seed, "Seed for random batteries");
  app.add_option("--out", g.out, "Output file ('-' for stdout)");
  app.add_flag("--truncate", g.truncate, "Cut Fourier supports at the cap instead of failing");

  std::function<int()> action;

  // compose / adjoint
  std::string in_a, in_b;
  auto* compose_cmd = app.add_subcommand("compose", "Left symbol of the composition a # b");
  compose_cmd->add_option("a", in_a)->required();
  compose_cmd->add_option("b", in_b)->required();
  compose_cmd->callback([&] {
    action = [&] {
      return by_mode(g, [&](auto tag) {
        using S = decltype(tag);
        io::write_file(g.out, io::symbol_to_json(compose(load_symbol<S>(in_a), load_symbol<S>(in_b), g.depth)));
        return 0;
      });
    };
  });

  auto* adjoint_cmd = app.add_subcommand("adjoint", "Formal adjoint of a symbol");
  adjoint_cmd->add_option("a", in_a)->required();
  adjoint_cmd->callback([&] {
    action = [&] {
      return by_mode(g, [&](auto tag) {
        using S = decltype(tag);
        io::write_file(g.out, io::symbol_to_json(adjoint(load_symbol<S>(in_a), g.depth)));
        return 0;
      });
    };
  });

  // residue
  bool geometric = false;
  auto* residue_cmd = app.add_subcommand("residue", "Residue density and its mean r (the residue is 2 pi r)");
  residue_cmd->add_option("a", in_a)->required();
  residue_cmd->add_flag("--geometric", geometric, "Report 2 pi r (f64 only)");
  residue_cmd->callback([&] {
    action = [&] {
      if (geometric && g.mode != "f64") throw UsageError("--geometric requires --mode f64");
      return by_mode(g, [&](auto tag) {
        using S = decltype(tag);
        const auto a = load_symbol<S>(in_a);
        json out{{"r", io::scalar_to_json(wres(a))}, {"density", io::trig_poly_to_json(wres_density(a))}};
        if constexpr (std::is_same_v<S, C64>)
          if (geometric) out["wres"] = io::scalar_to_json(wres_geometric(a));
        io::write_file(g.out, out);
        return 0;
      });
    };
  });

  // lift
  std::string method = "algebraic";
  int nodes = 128;
  bool serial = false;
  auto* lift_cmd = app.add_subcommand("lift", "Lift an order-0 symbol with idempotent principal part to a projection");
  lift_cmd->add_option("a", in_a)->required();
  lift_cmd->add_option("--method", method)->check(CLI::IsMember({"algebraic", "contour"}));
  lift_cmd->add_option("--nodes", nodes, "Contour quadrature nodes")->check(CLI::PositiveNumber);
  lift_cmd->add_flag("--serial", serial, "Evaluate contour nodes on one thread");
  lift_cmd->callback([&] {
    action = [&]() -> int {
      if (method == "contour") {
        if (g.mode != "f64") throw UsageError("--method contour requires --mode f64");
        auto a = load_symbol<C64>(in_a);
        if (g.depth) a = a.truncated(a.order() - *g.depth);
        const auto ex = serial ? parallel::Execution::serial : parallel::Execution::omp;
        io::write_file(g.out, io::symbol_to_json(contour_lift(a, nodes, ex)));
        return 0;
      }
      return by_mode(g, [&](auto tag) {
        using S = decltype(tag);
        const auto a = load_symbol<S>(in_a);
        io::write_file(g.out, io::symbol_to_json(newton_lift(a, default_depth(g, a.order() - a.floor()))));
        return 0;
      });
    };
  });

  auto* sa = app.add_subcommand("self-adjointize", "Self-adjoint projection with the same principal symbol");
  sa->add_option("p", in_a)->required();
  sa->callback([&] {
    action = [&] {
      return by_mode(g, [&](auto tag) {
        using S = decltype(tag);
        io::write_file(g.out, io::symbol_to_json(self_adjointize(load_symbol<S>(in_a), g.depth)));
        return 0;
      });
    };
  });

  // dirac-experiment
  int k = 2, trials = 20;
  auto* dirac = app.add_subcommand(
      "dirac-experiment", "Residues of projections lifting the positive spectral symbol of random first-order systems (CSV, f64)");
  dirac->add_option("--k", k)->check(CLI::PositiveNumber);
  dirac->add_option("--trials", trials)->check(CLI::NonNegativeNumber);
  dirac->callback([&] {
    action = [&] {
      const int depth = default_depth(g, 6);
      std::ostringstream csv;
      csv << "trial,wres_r,density_max_abs\n";
      csv.precision(17);
      bool ok = true;
      const auto rows = parallel::map(parallel::Execution::omp, trials, [&](int t) {
        Rng rng = trial_rng(g.seed, static_cast<std::uint64_t>(t));
        const auto sys = gen::random_first_order_system(rng, k);
        const auto p = positive_spectral_projection_symbol(sys.a, sys.b);
        const auto lift = newton_lift(gen::spectral_seed(sys, p, depth), depth);
        return std::pair{wres(lift), grid_max_abs(wres_density(lift), 64)};
      });
      for (int t = 0; t < trials; ++t) {
        const auto& [r, dmax] = rows[static_cast<std::size_t>(t)];
        ok = ok && std::abs(r) <= 1e-8;
        csv << t << ',' << std::abs(r) << ',' << dmax << '\n';
      }
      io::write_text(g.out, csv.str());
      return ok ? 0 : 1;
    };
  });

  // verify-trace
  int j = 0;
  auto* vt = app.add_subcommand("verify-trace", "Check tau_j(P) = tau_j(Ptilde) and the proof identities for two jets");
  vt->add_option("P", in_a)->required();
  vt->add_option("Ptilde", in_b)->required();
  vt->add_option("--j", j)->check(CLI::NonNegativeNumber);
  vt->callback([&] {
    action = [&] {
      return by_mode(g, [&](auto tag) {
        using S = decltype(tag);
        const auto p = io::jet_from_json<S>(io::read_file(in_a));
        const auto pt = io::jet_from_json<S>(io::read_file(in_b));
        const auto rep = verify_projection_trace_invariance(p, pt, {j});
        io::write_file(g.out, io::report_to_json(rep));
        return rep.passed ? 0 : 1;
      });
    };
  });

  // cocycle
  std::string report_path;
  auto* cocycle_cmd = app.add_subcommand("cocycle", "Decompose sampled transition data and extract the Cech cocycle");
  cocycle_cmd->add_option("nerve", in_a)->required();
  cocycle_cmd->add_option("--report", report_path, "Report file (defaults to --out)");
  cocycle_cmd->callback([&] {
    action = [&] {
      const auto analysis = analyze_nerve(io::nerve_from_json(io::read_file(in_a)));
      io::write_file(report_path.empty() ? g.out : report_path, io::report_to_json(analysis));
      return analysis.passed ? 0 : 1;
    };
  });

  // suite
  SuiteConfig cfg;
  std::optional<int> suite_trials, suite_k, levels;
  auto* suite = app.add_subcommand("suite", "Seeded verification battery: trace, prop1, vanish, cocycle, frames");
  suite->add_option("name", cfg.name)->required();
  suite->add_option("--trials", suite_trials);
  suite->add_option("--k", suite_k);
  suite->add_option("--levels,-N", levels, "Jet length for prop1");
  suite->add_option("--nodes", cfg.nodes)->check(CLI::PositiveNumber);
  suite->add_flag("--serial", serial, "Run trials on one thread");
  suite->callback([&] {
    action = [&] {
      cfg.mode = g.mode;
      cfg.seed = g.seed;
      cfg.depth = g.depth;
      cfg.trials = suite_trials;
      cfg.k = suite_k;
      cfg.levels = levels;
      cfg.execution = serial ? parallel::Execution::serial : parallel::Execution::omp;
      const auto rep = run_suite(cfg);
      io::write_file(g.out, rep.report);
      return rep.passed ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    set_fourier_truncation(g.truncate);
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
