#include "wreslab/suites.hpp"

#include <cmath>
#include <numbers>

#include "wreslab/cocycle.hpp"
#include "wreslab/generators.hpp"
#include "wreslab/io.hpp"
#include "wreslab/residue.hpp"

namespace wreslab {

namespace {

using json = nlohmann::json;

struct TrialOutcome {
  json record;
  bool passed = false;
  json counterexample;
};

template <class Fn>
SuiteReport battery(const SuiteConfig& cfg, const std::string& mode, int trials, json params, Fn&& fn) {
  auto guarded = [&](int t) {
    try {
      Rng rng = trial_rng(cfg.seed, static_cast<std::uint64_t>(t));
      TrialOutcome o = fn(t, rng);
      o.record["trial"] = t;
      o.record["passed"] = o.passed;
      return o;
    } catch (const std::exception& e) {
      TrialOutcome o;
      o.record = {{"trial", t}, {"passed", false}, {"error", e.what()}};
      o.counterexample = {{"error", e.what()}};
      return o;
    }
  };
  const auto outcomes = parallel::map(cfg.execution, trials, guarded);

  SuiteReport rep;
  json results = json::array();
  int failures = 0;
  json first = nullptr;
  for (const auto& o : outcomes) {
    results.push_back(o.record);
    if (!o.passed) {
      if (failures == 0) {
        first = o.counterexample;
        first["trial"] = o.record["trial"];
      }
      ++failures;
    }
  }
  rep.passed = failures == 0;
  rep.report = {{"suite", cfg.name},   {"mode", mode},          {"seed", cfg.seed},
                {"trials", trials},    {"params", std::move(params)}, {"results", std::move(results)},
                {"failures", failures}, {"passed", rep.passed}, {"first_counterexample", std::move(first)}};
  return rep;
}

int positive(std::optional<int> v, int fallback, const char* what, int min = 1) {
  const int x = v.value_or(fallback);
  if (x < min) throw UsageError(std::string(what) + " must be at least " + std::to_string(min));
  return x;
}

template <class S>
bool scalar_zero(const S& s, double tol) {
  if constexpr (Field<S>::exact) {
    (void)tol;
    return s.is_zero();
  } else {
    return std::abs(s) <= tol;
  }
}

template <class S>
bool symbols_equal(const ClassicalSymbol<S>& a, const ClassicalSymbol<S>& b, double tol) {
  if constexpr (Field<S>::exact) {
    (void)tol;
    return a == b;
  } else {
    return a.floor() == b.floor() && (a - b).max_abs() <= tol * std::max(1.0, a.max_abs());
  }
}

// ---------------------------------------------------------------------------

template <class S>
SuiteReport trace_suite(const SuiteConfig& cfg) {
  const int trials = positive(cfg.trials, 200, "trials", 0);
  const int kmax = positive(cfg.k, 3, "k");
  const int depth = positive(cfg.depth, 5, "depth");
  constexpr int J = 4;
  json params{{"k_max", kmax}, {"depth", depth}, {"J", J}, {"orders", {-2, 2}}};
  return battery(cfg, Field<S>::mode_name, trials, params, [&](int, Rng& rng) {
    const int k = static_cast<int>(uniform_int(rng, 1, kmax));
    const int oa = static_cast<int>(uniform_int(rng, -2, 2));
    const int ob = static_cast<int>(uniform_int(rng, -2, 2));
    const auto a = gen::symbol(rng, k, oa, depth, J).template convert<S>();
    const auto b = gen::symbol(rng, k, ob, depth, J).template convert<S>();
    const S r = wres(commutator(a, b));
    TrialOutcome o;
    o.passed = scalar_zero(r, 1e-9);
    o.record = {{"k", k}, {"order_a", oa}, {"order_b", ob}, {"wres_commutator", io::scalar_to_json(r)}};
    if (!o.passed)
      o.counterexample = {{"a", io::symbol_to_json(a)}, {"b", io::symbol_to_json(b)}, {"wres", io::scalar_to_json(r)}};
    return o;
  });
}

// ---------------------------------------------------------------------------

template <class S>
json trace_list(const MatrixJet<S>& p) {
  json out = json::array();
  for (int j = 0; j < p.n_levels(); ++j) out.push_back(io::scalar_to_json(residue_trace(p, {j})));
  return out;
}

template <class S>
SuiteReport prop1_suite(const SuiteConfig& cfg) {
  const int trials = positive(cfg.trials, 100, "trials", 0);
  const int k = positive(cfg.k, 3, "k");
  const int n = positive(cfg.levels ? cfg.levels : cfg.depth, 6, "levels", 2);
  json params{{"k", k}, {"N", n}};
  return battery(cfg, Field<S>::mode_name, trials, params, [&](int, Rng& rng) {
    const int rank = static_cast<int>(uniform_int(rng, 0, k));
    const auto p = gen::random_idempotent_jet(rng, k, n, rank).template convert<S>();
    const auto one = MatrixJet<QQi>::identity(k, n);
    // Two projections congruent to P mod L^{-1}.
    const auto x0 = p + gen::random_jet(rng, k, n, 1).template convert<S>();
    const auto by_newton = newton_idempotent_lift(x0);
    const auto u = (one + gen::random_jet(rng, k, n, 1)).template convert<S>();
    const auto by_conjugation = u * p * u.inverse();

    TrialOutcome o;
    o.passed = true;
    o.record = {{"rank", rank}, {"tau_p", trace_list(p)}};
    for (const auto& [name, pt] : {std::pair{"newton", &by_newton}, std::pair{"conjugation", &by_conjugation}}) {
      json per_j = json::array();
      bool ok = true;
      for (int j = 0; j < n; ++j) {
        const auto rep = verify_projection_trace_invariance(p, *pt, {j});
        ok = ok && rep.passed;
        if (j == 0) {
          o.record[name] = {{"identity_a_level", rep.identity_a_level},
                            {"identity_d_level", rep.identity_d_level},
                            {"expansion_a_levels", rep.expansion_a_levels},
                            {"expansion_d_levels", rep.expansion_d_levels},
                            {"commutator_levels", rep.commutator_levels}};
        }
        per_j.push_back(io::scalar_to_json(rep.difference));
      }
      o.record[name]["tau_ptilde"] = trace_list(*pt);
      o.record[name]["tau_differences"] = std::move(per_j);
      o.record[name]["passed"] = ok;
      if (!ok && o.passed)
        o.counterexample = {{"method", name}, {"P", io::jet_to_json(p)}, {"Ptilde", io::jet_to_json(*pt)}};
      o.passed = o.passed && ok;
    }
    return o;
  });
}

// ---------------------------------------------------------------------------

template <class S>
struct LiftCheck {
  json record;
  bool passed = true;
};

/// Bare lift plus two differently perturbed Newton lifts of the same principal.
template <class S>
LiftCheck<S> check_lifts(const PrincipalProjection<S>& p, int depth, Rng& rng, double tol) {
  LiftCheck<S> out;
  const int k = p.k();
  const auto bare = algebraic_lift(p, depth);
  const auto x1 = embed(p, depth) + gen::junk(rng, k, -depth).template convert<S>();
  const auto x2 = embed(p, depth) + gen::junk(rng, k, -depth).template convert<S>();
  const auto l1 = newton_lift(x1, depth);
  const auto l2 = newton_lift(x2, depth);
  const S r0 = wres(bare), r1 = wres(l1), r2 = wres(l2);
  double density = 0.0;
  for (const auto* l : {&bare, &l1, &l2}) density = std::max(density, grid_max_abs(wres_density(*l), 64));
  bool idempotent = true;
  for (const auto* l : {&bare, &l1, &l2}) {
    const auto d = idempotency_defect(*l);
    idempotent = idempotent && (Field<S>::exact ? d.is_zero() : d.max_abs() <= 1e-8 * std::max(1.0, l->max_abs()));
  }
  out.passed = idempotent && scalar_zero(r0, tol) && scalar_zero(r1, tol) && scalar_zero(r2, tol) &&
               scalar_zero(S(r1 - r2), tol);
  out.record = {{"wres", io::scalar_to_json(r0)},
                {"wres_perturbed", {io::scalar_to_json(r1), io::scalar_to_json(r2)}},
                {"density_max_abs", density},
                {"idempotent", idempotent}};
  return out;
}

template <class S>
SuiteReport vanish_suite(const SuiteConfig& cfg) {
  constexpr bool exact = Field<S>::exact;
  const int trials = positive(cfg.trials, 20, "trials", 0);
  const int k = positive(cfg.k, 2, "k");
  const int depth = positive(cfg.depth, 6, "depth");
  const double tol = 1e-8;
  json params{{"k", k}, {"depth", depth}, {"source", exact ? "random principal" : "spectral projection"}};

  // Named cases first.
  json named = json::object();
  bool named_ok = true;
  {
    Rng rng = trial_rng(cfg.seed, ~std::uint64_t{0});
    auto szego = check_lifts(gen::szego(k).template convert<S>(), depth, rng, tol);
    auto winding = check_lifts(gen::winding_family().template convert<S>(), depth, rng, tol);
    named["szego"] = szego.record;
    named["winding"] = winding.record;
    named["winding"]["density_pointwise_zero"] = winding.record["density_max_abs"].template get<double>() == 0.0;
    named_ok = szego.passed && winding.passed;
  }
  params["named"] = named;

  auto rep = battery(cfg, Field<S>::mode_name, trials, params, [&](int, Rng& rng) {
    PrincipalProjection<S> p;
    if constexpr (exact) {
      p = gen::random_principal(rng, k);
    } else {
      const auto sys = gen::random_first_order_system(rng, k);
      p = positive_spectral_projection_symbol(sys.a, sys.b);
    }
    auto c = check_lifts(p, depth, rng, tol);
    TrialOutcome o;
    o.passed = c.passed;
    o.record = std::move(c.record);
    o.record["J"] = std::max(p.plus.J(), p.minus.J());
    if (!o.passed)
      o.counterexample = {{"p_plus", io::trig_poly_to_json(p.plus)}, {"p_minus", io::trig_poly_to_json(p.minus)}};
    return o;
  });
  if (!named_ok) {
    rep.passed = false;
    rep.report["passed"] = false;
    if (rep.report["first_counterexample"].is_null()) rep.report["first_counterexample"] = {{"named", named}};
  }
  return rep;
}

// ---------------------------------------------------------------------------

template <class S>
SuiteReport frames_suite(const SuiteConfig& cfg) {
  const int trials = positive(cfg.trials, 50, "trials", 0);
  const int depth = positive(cfg.depth, 5, "depth", 3);
  json params{{"k", cfg.k ? json(*cfg.k) : json("2..3")}, {"depth", depth}, {"J", 3}};
  if (cfg.k && *cfg.k < 2) throw UsageError("frames: k must be at least 2 for rotation frames");
  return battery(cfg, Field<S>::mode_name, trials, params, [&](int, Rng& rng) {
    const int k = cfg.k ? *cfg.k : static_cast<int>(uniform_int(rng, 2, 3));
    const int n = static_cast<int>(uniform_int(rng, -2, 2));
    const int order = static_cast<int>(uniform_int(rng, -2, 2));
    const auto g = gen::phase(n);
    const auto phi = gen::random_rotation_frame(rng, k);
    const auto a = gen::symbol(rng, k, order, std::max(depth, order + 1), 3);
    const auto as = a.template convert<S>();
    const auto gs = g.template convert<S>();
    const auto phis = phi.template convert<S>();
    const auto b = change_of_frame(as, gs, phis);
    const auto da = wres_density(as);
    const auto db = wres_density(b);
    const auto back = change_of_frame(b, gs.adjoint(), phis.adjoint());
    TrialOutcome o;
    bool density_ok, round_trip;
    if constexpr (Field<S>::exact) {
      density_ok = da == db;
      round_trip = back == as;
    } else {
      density_ok = grid_max_abs(da - db, 64) <= 1e-9;
      round_trip = symbols_equal(back, as, 1e-9);
    }
    o.passed = density_ok && round_trip;
    o.record = {{"k", k},
                {"g_mode", n},
                {"order", order},
                {"density_invariant", density_ok},
                {"round_trip", round_trip},
                {"density_max_abs", grid_max_abs(da, 64)},
                {"wres", io::scalar_to_json(wres(as))}};
    if (!o.passed)
      o.counterexample = {{"a", io::symbol_to_json(as)},
                          {"g", io::trig_poly_to_json(gs)},
                          {"phi", io::trig_poly_to_json(phis)}};
    return o;
  });
}

// ---------------------------------------------------------------------------

CMat random_special_unitary(Rng& rng, int k) {
  CMat z(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) z(i, j) = C64(2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0);
  Eigen::HouseholderQR<CMat> qr(z);
  CMat q = qr.householderQ();
  return q / std::pow(q.determinant(), 1.0 / k);
}

CMat random_hermitian(Rng& rng, int k) {
  CMat z(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) z(i, j) = C64(2.0 * uniform_unit(rng) - 1.0, 2.0 * uniform_unit(rng) - 1.0);
  CMat h = z + z.adjoint();
  h -= (h.trace() / static_cast<double>(k)) * CMat::Identity(k, k);
  return h;
}

/// exp(i x H) for Hermitian H.
CMat unitary_flow(const CMat& h, double x) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) phases(i) = std::polar(1.0, x * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Twisted nerve on four charts: phi_ab(x) = h_a(x) q_ab h_b(x)^{-1}, lambda_ab = e^{i n_ab (x - y)}.
/// For k = 2, q follows the quaternionic four-chart fixture; otherwise q_ab are k-th roots of unity.
struct RandomNerve {
  NerveData nerve;
  PhiSamples truth;
  std::map<std::array<std::string, 3>, C64> zeta;
};

/// Root-of-unity index m with canonical_phase(u) = omega^m u.
int window_index(const CMat& u, int k) {
  const C64 r = (canonical_phase(u) * u.inverse()).trace() / static_cast<double>(k);
  const int m = static_cast<int>(std::lround(std::arg(r) * k / (2.0 * std::numbers::pi)));
  return ((m % k) + k) % k;
}

/// One draw; empty when some edge's canonical lift jumps between sample points.
std::optional<RandomNerve> try_random_nerve(Rng& rng, int k) {
  const std::vector<std::string> charts{"1", "2", "3", "4"};
  const C64 i(0.0, 1.0);
  std::map<std::pair<std::string, std::string>, CMat> q;
  const std::vector<std::pair<std::string, std::string>> edges{{"1", "2"}, {"2", "3"}, {"1", "3"},
                                                               {"1", "4"}, {"2", "4"}, {"3", "4"}};
  if (k == 2) {
    q[{"1", "2"}] = i * fixtures::pauli(1);
    q[{"2", "3"}] = i * fixtures::pauli(2);
    q[{"1", "3"}] = i * fixtures::pauli(3);
    q[{"1", "4"}] = CMat::Identity(2, 2);
    q[{"2", "4"}] = i * fixtures::pauli(1);
    q[{"3", "4"}] = i * fixtures::pauli(3);
  } else {
    for (const auto& e : edges)
      q[e] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(uniform_int(rng, 0, k - 1)) / k) *
             CMat::Identity(k, k);
  }
  std::map<std::string, std::pair<CMat, CMat>> h;  // h_a(x) = exp(i x H_a) W_a
  for (const auto& c : charts) {
    CMat hm = 0.15 * random_hermitian(rng, k);
    auto w = random_special_unitary(rng, k);
    h[c] = {std::move(hm), std::move(w)};
  }
  auto h_at = [&](const std::string& c, double x) { return CMat(unitary_flow(h[c].first, x) * h[c].second); };

  std::vector<std::pair<std::string, double>> points;
  for (int p = 0; p < 3; ++p) points.push_back({std::to_string(p), 2.0 * std::numbers::pi * uniform_unit(rng)});

  RandomNerve out;
  out.nerve.k = k;
  out.nerve.charts = charts;
  for (const auto& e : edges) {
    const int n = static_cast<int>(uniform_int(rng, -2, 2));
    std::map<std::string, CMat> phi;
    for (const auto& [xi, x] : points) phi[xi] = h_at(e.first, x) * q[e] * h_at(e.second, x).inverse();
    const int m0 = window_index(phi.begin()->second, k);
    for (const auto& [xi, u] : phi)
      if (window_index(u, k) != m0) return std::nullopt;
    Overlap o{e.first, e.second, {}};
    for (const auto& [xi, x] : points)
      for (const auto& [yi, y] : points)
        o.samples.push_back({xi, yi, transition_map(std::polar(1.0, n * (x - y)), phi[xi], phi[yi])});
    out.truth[e] = std::move(phi);
    out.nerve.overlaps.push_back(std::move(o));
  }
  out.nerve.triples = {{{"1", "2", "3"}, {}}, {{"1", "2", "4"}, {}}, {{"1", "3", "4"}, {}}, {{"2", "3", "4"}, {}}};
  out.nerve.tetrahedra = {{"1", "2", "3", "4"}};
  const auto truth_report = dd_cocycle(out.nerve, out.truth);
  for (const auto& t : truth_report.triples) out.zeta[t.charts] = t.zeta;
  return out;
}

/// Per-point phase canonicalization is only continuous away from the window boundary, so draws
/// where an edge crosses it between sample points are rejected.
RandomNerve random_nerve(Rng& rng, int k, int& attempts) {
  for (attempts = 1; attempts <= 1000; ++attempts)
    if (auto n = try_random_nerve(rng, k)) return std::move(*n);
  throw ConditioningError("random_nerve: no draw keeps the canonical phase window fixed");
}

json c64_json(C64 z) { return {{"re", z.real()}, {"im", z.imag()}}; }

SuiteReport cocycle_suite(const SuiteConfig& cfg) {
  const int trials = positive(cfg.trials, 10, "trials", 0);
  const int k = positive(cfg.k, 2, "k");
  json params{{"k", k}, {"charts", 4}, {"points", 3}};

  // Fixtures.
  const auto three = analyze_nerve(fixtures::quaternion_three_chart());
  const auto four = analyze_nerve(fixtures::quaternion_four_chart());
  const C64 z123 = three.cocycle.triples.front().zeta;
  const bool fixtures_ok = three.passed && four.passed && std::abs(z123 + 1.0) <= 1e-10;
  params["fixtures"] = {{"three_chart_zeta_123", c64_json(z123)},
                        {"three_chart_passed", three.passed},
                        {"four_chart_passed", four.passed},
                        {"four_chart_delta", c64_json(four.cocycle.tetrahedra.front().delta)}};

  auto rep = battery(cfg, "f64", trials, params, [&](int, Rng& rng) {
    int attempts = 0;
    const auto rn = random_nerve(rng, k, attempts);
    const auto a = analyze_nerve(rn.nerve);
    // Recovered zeta differs from the true one by the coboundary of c_ab = phi_rec / phi_true.
    double coboundary_gap = 0.0;
    std::map<std::pair<std::string, std::string>, C64> c;
    for (const auto& d : a.decompositions) {
      const auto& truth = rn.truth.at({d.alpha, d.beta});
      const auto& [x, u] = *d.phi.begin();
      const CMat ratio = u * truth.at(x).inverse();
      c[{d.alpha, d.beta}] = ratio.trace() / static_cast<double>(k);
    }
    auto edge_c = [&](const std::string& p, const std::string& r) {
      if (const auto it = c.find({p, r}); it != c.end()) return it->second;
      return 1.0 / c.at({r, p});
    };
    json zetas = json::array();
    for (const auto& t : a.cocycle.triples) {
      const auto& [p, q, r] = t.charts;
      const C64 expected = rn.zeta.at(t.charts) * edge_c(p, q) * edge_c(q, r) * edge_c(r, p);
      coboundary_gap = std::max(coboundary_gap, std::abs(t.zeta - expected));
      zetas.push_back(c64_json(t.zeta));
    }
    double lambda_worst = 0.0;
    for (const auto& lr : a.lambda_reports)
      lambda_worst = std::max({lambda_worst, lr.diagonal, lr.multiplicativity, lr.conjugate_symmetry});
    TrialOutcome o;
    o.passed = a.passed && coboundary_gap <= 1e-10;
    o.record = {{"draws", attempts},
                {"reconstruction_error", a.max_reconstruction_error},
                {"lambda_violation", lambda_worst},
                {"zeta", std::move(zetas)},
                {"delta", c64_json(a.cocycle.tetrahedra.front().delta)},
                {"coboundary_gap", coboundary_gap}};
    if (!o.passed) o.counterexample = {{"nerve", io::nerve_to_json(rn.nerve)}};
    return o;
  });
  if (!fixtures_ok) {
    rep.passed = false;
    rep.report["passed"] = false;
    if (rep.report["first_counterexample"].is_null())
      rep.report["first_counterexample"] = {{"fixtures", rep.report["params"]["fixtures"]}};
  }
  return rep;
}

template <class S>
SuiteReport dispatch(const SuiteConfig& cfg) {
  if (cfg.name == "trace") return trace_suite<S>(cfg);
  if (cfg.name == "prop1") return prop1_suite<S>(cfg);
  if (cfg.name == "vanish") return vanish_suite<S>(cfg);
  if (cfg.name == "frames") return frames_suite<S>(cfg);
  if (cfg.name == "cocycle") return cocycle_suite(cfg);
  throw UsageError("unknown suite '" + cfg.name + "' (expected trace, prop1, vanish, cocycle or frames)");
}

}  // namespace

SuiteReport run_suite(const SuiteConfig& config) {
  if (config.mode == "exact") return dispatch<QQi>(config);
  if (config.mode == "f64") return dispatch<C64>(config);
  throw UsageError("unknown mode '" + config.mode + "' (expected exact or f64)");
}

}  // namespace wreslab
