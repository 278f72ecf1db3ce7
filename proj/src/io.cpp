#include "wreslab/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace wreslab::io {

namespace {

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t i) { return ptr + "/" + std::to_string(i); }

const json& field(const json& j, const std::string& ptr, const char* key) {
  if (!j.is_object()) throw ParseError(ptr.empty() ? "/" : ptr, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(ptr, key), "missing field");
  return *it;
}

int int_field(const json& j, const std::string& ptr, const char* key) {
  const json& v = field(j, ptr, key);
  if (!v.is_number_integer()) throw ParseError(child(ptr, key), "expected an integer");
  return v.get<int>();
}

const json& array_field(const json& j, const std::string& ptr, const char* key) {
  const json& v = field(j, ptr, key);
  if (!v.is_array()) throw ParseError(child(ptr, key), "expected an array");
  return v;
}

mpq_class parse_rational(const json& v, const std::string& ptr) {
  if (v.is_number_integer()) return mpq_class(v.get<long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw ParseError(ptr, "malformed rational \"" + s + "\"");
    if (sgn(q.get_den()) == 0) throw ParseError(ptr, "zero denominator");
    q.canonicalize();
    return q;
  }
  if (v.is_number_float()) throw ParseError(ptr, "floating-point value in exact mode");
  throw ParseError(ptr, "expected a rational string or integer");
}

double parse_double(const json& v, const std::string& ptr) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_rational(v, ptr).get_d();
  throw ParseError(ptr, "expected a number");
}

std::string chart_id(const json& v, const std::string& ptr) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.dump();
  throw ParseError(ptr, "chart and point identifiers must be strings or integers");
}

json c64_to_json(C64 z) { return {{"re", z.real()}, {"im", z.imag()}}; }

C64 c64_from_json(const json& j, const std::string& ptr) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {parse_double(j[0], child(ptr, 0)), parse_double(j[1], child(ptr, 1))};
  if (j.is_object()) {
    const double re = j.contains("re") ? parse_double(j["re"], child(ptr, "re")) : 0.0;
    const double im = j.contains("im") ? parse_double(j["im"], child(ptr, "im")) : 0.0;
    return {re, im};
  }
  throw ParseError(ptr, "expected a complex number");
}

}  // namespace

template <>
json scalar_to_json<QQi>(const QQi& s) {
  return {{"re", s.re_string()}, {"im", s.im_string()}};
}

template <>
json scalar_to_json<C64>(const C64& s) {
  return c64_to_json(s);
}

template <>
QQi scalar_from_json<QQi>(const json& j, const std::string& ptr) {
  if (j.is_number() || j.is_string()) return {parse_rational(j, ptr), mpq_class(0)};
  if (!j.is_object()) throw ParseError(ptr, "expected a scalar object {\"re\", \"im\"}");
  mpq_class re(0), im(0);
  if (j.contains("re")) re = parse_rational(j["re"], child(ptr, "re"));
  if (j.contains("im")) im = parse_rational(j["im"], child(ptr, "im"));
  return {re, im};
}

template <>
C64 scalar_from_json<C64>(const json& j, const std::string& ptr) {
  if (j.is_string()) return {parse_double(j, ptr), 0.0};
  return c64_from_json(j, ptr);
}

template <class S>
json matrix_to_json(const Matrix<S>& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Matrix<S> matrix_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw ParseError(ptr, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix<S> m(static_cast<int>(n), static_cast<int>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto rp = child(ptr, r);
    if (!j[r].is_array() || j[r].size() != n) throw ParseError(rp, "matrix must be square");
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<int>(r), static_cast<int>(c)) = scalar_from_json<S>(j[r][c], child(rp, c));
  }
  return m;
}

template <class S>
json trig_poly_to_json(const TrigPoly<S>& p) {
  json coeffs = json::array();
  for (int j = -p.J(); j <= p.J(); ++j) {
    const auto* c = p.coeff_ptr(j);
    if (!c || c->is_zero()) continue;
    coeffs.push_back({{"j", j}, {"matrix", matrix_to_json(*c)}});
  }
  json out{{"k", p.k()}, {"J", p.J()}, {"coeffs", std::move(coeffs)}};
  if (p.truncated()) out["truncated"] = true;
  return out;
}

template <class S>
TrigPoly<S> trig_poly_from_json(const json& j, const std::string& ptr) {
  const int J = int_field(j, ptr, "J");
  if (J < 0) throw ParseError(child(ptr, "J"), "J must be non-negative");
  const json& coeffs = array_field(j, ptr, "coeffs");
  const auto cp = child(ptr, "coeffs");
  if (coeffs.empty()) {
    const int k = j.contains("k") ? int_field(j, ptr, "k") : 1;
    if (k < 1) throw ParseError(child(ptr, "k"), "k must be positive");
    return TrigPoly<S>(k);
  }
  std::optional<TrigPoly<S>> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto ep = child(cp, i);
    const int jj = int_field(coeffs[i], ep, "j");
    if (std::abs(jj) > J) throw ParseError(child(ep, "j"), "mode outside [-J, J]");
    const auto m = matrix_from_json<S>(field(coeffs[i], ep, "matrix"), child(ep, "matrix"));
    if (!out) out.emplace(m.rows());
    if (m.rows() != out->k()) throw ParseError(child(ep, "matrix"), "matrix size differs from earlier coefficients");
    if (out->coeff_ptr(jj) && !out->coeff_ptr(jj)->is_zero()) throw ParseError(child(ep, "j"), "duplicate mode");
    out->set_coeff(jj, m);
  }
  return out->trim();
}

template <class S>
json symbol_to_json(const ClassicalSymbol<S>& a) {
  json comps = json::array();
  for (int d = a.order(); d >= a.floor(); --d) {
    const auto* c = a.find(d);
    if (c->is_zero()) continue;
    comps.push_back({{"degree", d}, {"plus", trig_poly_to_json(c->plus)}, {"minus", trig_poly_to_json(c->minus)}});
  }
  return {{"k", a.k()}, {"order", a.order()}, {"floor", a.floor()}, {"components", std::move(comps)}};
}

template <class S>
ClassicalSymbol<S> symbol_from_json(const json& j, const std::string& ptr) {
  const int k = int_field(j, ptr, "k");
  const int order = int_field(j, ptr, "order");
  const int floor = int_field(j, ptr, "floor");
  if (k < 1) throw ParseError(child(ptr, "k"), "k must be positive");
  if (floor > order) throw ParseError(child(ptr, "floor"), "floor lies above order");
  ClassicalSymbol<S> out(k, order, floor);
  const json& comps = array_field(j, ptr, "components");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto cp = child(child(ptr, "components"), i);
    const int d = int_field(comps[i], cp, "degree");
    if (d > order || d < floor) throw ParseError(child(cp, "degree"), "degree outside [floor, order]");
    auto plus = trig_poly_from_json<S>(field(comps[i], cp, "plus"), child(cp, "plus"));
    auto minus = trig_poly_from_json<S>(field(comps[i], cp, "minus"), child(cp, "minus"));
    // An all-zero side may carry k = 1 when written without "k"; widen it.
    if (plus.is_zero() && plus.k() != k) plus = TrigPoly<S>(k);
    if (minus.is_zero() && minus.k() != k) minus = TrigPoly<S>(k);
    if (plus.k() != k) throw ParseError(child(cp, "plus"), "matrix size differs from k");
    if (minus.k() != k) throw ParseError(child(cp, "minus"), "matrix size differs from k");
    if (!out.find(d)->is_zero()) throw ParseError(child(cp, "degree"), "duplicate degree");
    out.set_component({d, std::move(plus), std::move(minus)});
  }
  return out;
}

template <class S>
json jet_to_json(const MatrixJet<S>& a) {
  json coeffs = json::array();
  for (const auto& m : a.coeffs()) coeffs.push_back(matrix_to_json(m));
  return {{"k", a.k()}, {"n_levels", a.n_levels()}, {"coeffs", std::move(coeffs)}};
}

template <class S>
MatrixJet<S> jet_from_json(const json& j, const std::string& ptr) {
  const int k = int_field(j, ptr, "k");
  const int n = int_field(j, ptr, "n_levels");
  if (k < 1) throw ParseError(child(ptr, "k"), "k must be positive");
  if (n < 1) throw ParseError(child(ptr, "n_levels"), "n_levels must be positive");
  const json& coeffs = array_field(j, ptr, "coeffs");
  if (static_cast<int>(coeffs.size()) != n) throw ParseError(child(ptr, "coeffs"), "expected n_levels coefficients");
  std::vector<Matrix<S>> cs;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto m = matrix_from_json<S>(coeffs[i], child(child(ptr, "coeffs"), i));
    if (m.rows() != k) throw ParseError(child(child(ptr, "coeffs"), i), "matrix size differs from k");
    cs.push_back(std::move(m));
  }
  return MatrixJet<S>::from_coeffs(std::move(cs));
}

json cmat_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(c64_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat cmat_from_json(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) throw ParseError(ptr, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  CMat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    const auto rp = child(ptr, r);
    if (!j[r].is_array() || j[r].size() != n) throw ParseError(rp, "matrix must be square");
    for (std::size_t c = 0; c < n; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = c64_from_json(j[r][c], child(rp, c));
  }
  return m;
}

json nerve_to_json(const NerveData& n) {
  json overlaps = json::array();
  for (const auto& o : n.overlaps) {
    json samples = json::array();
    for (const auto& s : o.samples) samples.push_back({{"x", s.x}, {"y", s.y}, {"map", cmat_to_json(s.map)}});
    overlaps.push_back({{"pair", {o.alpha, o.beta}}, {"samples", std::move(samples)}});
  }
  json triples = json::array();
  for (const auto& t : n.triples) {
    if (t.points.empty())
      triples.push_back(t.charts);
    else
      triples.push_back({{"charts", t.charts}, {"points", t.points}});
  }
  return {{"k", n.k},
          {"charts", n.charts},
          {"overlaps", std::move(overlaps)},
          {"triples", std::move(triples)},
          {"tetrahedra", n.tetrahedra}};
}

NerveData nerve_from_json(const json& j) {
  NerveData n;
  n.k = int_field(j, "", "k");
  if (n.k < 1) throw ParseError("/k", "k must be positive");
  const json& charts = array_field(j, "", "charts");
  for (std::size_t i = 0; i < charts.size(); ++i) n.charts.push_back(chart_id(charts[i], child("/charts", i)));
  auto known_chart = [&](const std::string& c) {
    return std::find(n.charts.begin(), n.charts.end(), c) != n.charts.end();
  };

  const json& overlaps = array_field(j, "", "overlaps");
  for (std::size_t i = 0; i < overlaps.size(); ++i) {
    const auto op = child("/overlaps", i);
    const json& pair = field(overlaps[i], op, "pair");
    if (!pair.is_array() || pair.size() != 2) throw ParseError(child(op, "pair"), "expected [alpha, beta]");
    Overlap o;
    o.alpha = chart_id(pair[0], child(child(op, "pair"), 0));
    o.beta = chart_id(pair[1], child(child(op, "pair"), 1));
    if (!known_chart(o.alpha) || !known_chart(o.beta)) throw ParseError(child(op, "pair"), "unknown chart");
    const json& samples = array_field(overlaps[i], op, "samples");
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const auto sp = child(child(op, "samples"), s);
      TransitionPoint tp;
      tp.x = chart_id(field(samples[s], sp, "x"), child(sp, "x"));
      tp.y = chart_id(field(samples[s], sp, "y"), child(sp, "y"));
      tp.map = cmat_from_json(field(samples[s], sp, "map"), child(sp, "map"));
      if (tp.map.rows() != n.k * n.k) throw ParseError(child(sp, "map"), "map must be k^2 x k^2");
      o.samples.push_back(std::move(tp));
    }
    n.overlaps.push_back(std::move(o));
  }
  auto has_edge = [&](const std::string& a, const std::string& b) {
    return std::any_of(n.overlaps.begin(), n.overlaps.end(), [&](const Overlap& o) {
      return (o.alpha == a && o.beta == b) || (o.alpha == b && o.beta == a);
    });
  };

  auto read_ids = [&](const json& arr, const std::string& ptr, std::size_t count) {
    if (!arr.is_array() || arr.size() != count)
      throw ParseError(ptr, "expected " + std::to_string(count) + " chart identifiers");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < count; ++i) {
      ids.push_back(chart_id(arr[i], child(ptr, i)));
      if (!known_chart(ids.back())) throw ParseError(child(ptr, i), "unknown chart");
    }
    return ids;
  };

  if (j.contains("triples")) {
    const json& triples = array_field(j, "", "triples");
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const auto tp = child("/triples", i);
      Triple t;
      std::vector<std::string> ids;
      if (triples[i].is_object()) {
        ids = read_ids(field(triples[i], tp, "charts"), child(tp, "charts"), 3);
        if (triples[i].contains("points")) {
          const json& pts = array_field(triples[i], tp, "points");
          for (std::size_t p = 0; p < pts.size(); ++p)
            t.points.push_back(chart_id(pts[p], child(child(tp, "points"), p)));
        }
      } else {
        ids = read_ids(triples[i], tp, 3);
      }
      t.charts = {ids[0], ids[1], ids[2]};
      if (!has_edge(ids[0], ids[1]) || !has_edge(ids[1], ids[2]) || !has_edge(ids[2], ids[0]))
        throw ParseError(tp, "an edge of the triple is not an overlap");
      n.triples.push_back(std::move(t));
    }
  }
  if (j.contains("tetrahedra")) {
    const json& tets = array_field(j, "", "tetrahedra");
    for (std::size_t i = 0; i < tets.size(); ++i) {
      const auto ids = read_ids(tets[i], child("/tetrahedra", i), 4);
      n.tetrahedra.push_back({ids[0], ids[1], ids[2], ids[3]});
    }
  }
  return n;
}

json report_to_json(const NerveAnalysis& a) {
  json decomps = json::array();
  for (std::size_t i = 0; i < a.decompositions.size(); ++i) {
    const auto& d = a.decompositions[i];
    const auto& lr = a.lambda_reports[i];
    json phi = json::object();
    for (const auto& [x, u] : d.phi) phi[x] = cmat_to_json(u);
    json lambda = json::array();
    for (const auto& l : d.lambda) lambda.push_back({{"x", l.x}, {"y", l.y}, {"value", c64_to_json(l.value)}});
    decomps.push_back({{"pair", {d.alpha, d.beta}},
                       {"phi", std::move(phi)},
                       {"lambda", std::move(lambda)},
                       {"reconstruction_error", d.reconstruction_error},
                       {"scalar_defect", d.scalar_defect},
                       {"lambda_report",
                        {{"diagonal", lr.diagonal},
                         {"multiplicativity", lr.multiplicativity},
                         {"conjugate_symmetry", lr.conjugate_symmetry},
                         {"checks", {lr.diagonal_checks, lr.multiplicativity_checks, lr.symmetry_checks}},
                         {"passed", lr.passed()}}}});
  }
  json triples = json::array();
  for (const auto& t : a.cocycle.triples)
    triples.push_back({{"charts", t.charts},
                       {"zeta", c64_to_json(t.zeta)},
                       {"points", t.points},
                       {"scalar_defect", t.scalar_defect},
                       {"constancy", t.constancy},
                       {"root_violation", t.root_violation}});
  json tets = json::array();
  for (const auto& t : a.cocycle.tetrahedra)
    tets.push_back({{"charts", t.charts}, {"delta", c64_to_json(t.delta)}, {"violation", t.violation}});
  return {{"k", a.cocycle.k},
          {"overlaps", std::move(decomps)},
          {"max_reconstruction_error", a.max_reconstruction_error},
          {"triples", std::move(triples)},
          {"tetrahedra", std::move(tets)},
          {"passed", a.passed}};
}

template <class S>
json report_to_json(const TraceInvarianceReport<S>& r) {
  return {{"j", r.j},
          {"n_levels", r.n_levels},
          {"identity_a_level", r.identity_a_level},
          {"identity_d_level", r.identity_d_level},
          {"tau_p", scalar_to_json(r.tau_p)},
          {"tau_ptilde", scalar_to_json(r.tau_ptilde)},
          {"difference", scalar_to_json(r.difference)},
          {"tau_b", scalar_to_json(r.tau_b)},
          {"tau_c", scalar_to_json(r.tau_c)},
          {"expansion_a_levels", r.expansion_a_levels},
          {"expansion_d_levels", r.expansion_d_levels},
          {"commutator_levels", r.commutator_levels},
          {"passed", r.passed}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("/", std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-" || path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

void write_file(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

#define WRESLAB_INSTANTIATE(S)                                                  \
  template json matrix_to_json(const Matrix<S>&);                               \
  template Matrix<S> matrix_from_json<S>(const json&, const std::string&);      \
  template json trig_poly_to_json(const TrigPoly<S>&);                          \
  template TrigPoly<S> trig_poly_from_json<S>(const json&, const std::string&); \
  template json symbol_to_json(const ClassicalSymbol<S>&);                      \
  template ClassicalSymbol<S> symbol_from_json<S>(const json&, const std::string&); \
  template json jet_to_json(const MatrixJet<S>&);                               \
  template MatrixJet<S> jet_from_json<S>(const json&, const std::string&);      \
  template json report_to_json(const TraceInvarianceReport<S>&);

WRESLAB_INSTANTIATE(QQi)
WRESLAB_INSTANTIATE(C64)

#undef WRESLAB_INSTANTIATE

}  // namespace wreslab::io
