#include "wreslab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "wreslab/errors.hpp"

namespace wreslab {

namespace {

constexpr double kStructTol = 1e-8;
constexpr double kScalarTol = 1e-10;

int dim_of(const CMat& t) {
  const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(t.rows()))));
  if (t.rows() != t.cols() || k * k != t.rows())
    throw StructuralError("transition map must be a k^2 x k^2 matrix");
  return k;
}

CMat unit(int k, int i, int j) {
  CMat e = CMat::Zero(k, k);
  e(i, j) = 1.0;
  return e;
}

CMat vec_to_mat(const Eigen::VectorXcd& v, int k) {
  CMat m(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) = v(i * k + j);
  return m;
}

Eigen::VectorXcd mat_to_vec(const CMat& m) {
  const int k = static_cast<int>(m.rows());
  Eigen::VectorXcd v(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) v(i * k + j) = m(i, j);
  return v;
}

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

CMat apply_map(const CMat& t, const CMat& a) {
  const int k = dim_of(t);
  if (a.rows() != k || a.cols() != k) throw StructuralError("apply_map: argument has the wrong size");
  return vec_to_mat(t * mat_to_vec(a), k);
}

CMat transition_map(C64 c, const CMat& u, const CMat& v) {
  const int k = static_cast<int>(u.rows());
  const CMat v_inv = v.inverse();
  CMat t(k * k, k * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t.col(a * k + b) = mat_to_vec(c * u * unit(k, a, b) * v_inv);
  return t;
}

CMat conjugation_map(const CMat& u) { return transition_map(1.0, u, u); }

double multiplicativity_defect(const CMat& t) {
  const int k = dim_of(t);
  std::vector<CMat> img;
  img.reserve(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) img.push_back(apply_map(t, unit(k, i, j)));
  double worst = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          CMat lhs = img[static_cast<std::size_t>(i * k + j)] * img[static_cast<std::size_t>(a * k + b)];
          if (j == a) lhs -= img[static_cast<std::size_t>(i * k + b)];
          worst = std::max(worst, max_abs(lhs));
        }
  return worst;
}

CMat canonical_phase(const CMat& u) {
  const int k = static_cast<int>(u.rows());
  const double window = 2.0 * std::numbers::pi / k;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (std::abs(u(i, j)) <= kStructTol) continue;
      double arg = std::arg(u(i, j));
      if (arg < 0) arg += 2.0 * std::numbers::pi;
      // Rotate by the root of unity that brings arg into [0, window).
      int m = static_cast<int>(std::floor(arg / window));
      double rest = arg - m * window;
      if (rest > window - 1e-12) ++m;  // rounding at the upper edge
      return u * std::polar(1.0, -m * window);
    }
  throw StructuralError("canonical_phase: zero matrix");
}

CMat extract_inner(const CMat& t) {
  const int k = dim_of(t);
  const double defect = multiplicativity_defect(t);
  if (defect > kScalarTol * std::max(1.0, max_abs(t)))
    throw NotAutomorphismError("extract_inner: map is not multiplicative on matrix units (defect " +
                               std::to_string(defect) + ")");
  // T(E_i1) = u_{. i} (u^{-1})_{1 .}: column c of these gives the columns of u up to one factor.
  const CMat e11 = apply_map(t, unit(k, 0, 0));
  Eigen::Index c = 0;
  e11.colwise().norm().maxCoeff(&c);
  CMat u(k, k);
  for (int i = 0; i < k; ++i) u.col(i) = apply_map(t, unit(k, i, 0)).col(c);
  const C64 det = u.determinant();
  if (std::abs(det) <= kStructTol) throw NotAutomorphismError("extract_inner: map is not invertible");
  u /= std::pow(det, 1.0 / k);
  if (max_abs(u * u.adjoint() - CMat::Identity(k, k)) > kStructTol)
    throw StructureError("extract_inner: automorphism is not implemented by a unitary");
  return canonical_phase(u);
}

Decomposition decompose_transition(const Overlap& overlap, int k) {
  Decomposition out;
  out.alpha = overlap.alpha;
  out.beta = overlap.beta;
  for (const auto& s : overlap.samples) {
    if (dim_of(s.map) != k) throw StructuralError("decompose_transition: map dimension differs from k");
    if (s.x == s.y) out.phi.emplace(s.x, extract_inner(s.map));
  }
  const CMat id = CMat::Identity(k, k);
  for (const auto& s : overlap.samples) {
    const auto px = out.phi.find(s.x);
    const auto py = out.phi.find(s.y);
    if (px == out.phi.end() || py == out.phi.end())
      throw PreconditionError("decompose_transition: overlap (" + overlap.alpha + ", " + overlap.beta +
                              ") lacks a diagonal sample at " + (px == out.phi.end() ? s.x : s.y));
    const CMat& ux = px->second;
    const CMat& uy = py->second;
    const CMat m = ux.inverse() * apply_map(s.map, id) * uy;
    const C64 lambda = m.trace() / static_cast<double>(k);
    const double off = max_abs(m - lambda * id);
    out.scalar_defect = std::max(out.scalar_defect, off);
    if (off > kStructTol)
      throw StructureError("decompose_transition: image of the identity is not scalar on (" + overlap.alpha + ", " +
                           overlap.beta + ") at (" + s.x + ", " + s.y + ")");
    out.lambda.push_back({s.x, s.y, lambda});
    const CMat rebuilt = transition_map(lambda, ux, uy);
    out.reconstruction_error = std::max(out.reconstruction_error, max_abs(rebuilt - s.map));
  }
  return out;
}

LambdaReport verify_lambda(const std::vector<LambdaSample>& samples) {
  LambdaReport rep;
  std::map<std::pair<std::string, std::string>, C64> lam;
  for (const auto& s : samples) lam[{s.x, s.y}] = s.value;
  for (const auto& [key, v] : lam) {
    const auto& [x, y] = key;
    if (x == y) {
      rep.diagonal = std::max(rep.diagonal, std::abs(v - 1.0));
      ++rep.diagonal_checks;
    }
    if (const auto r = lam.find({y, x}); r != lam.end()) {
      rep.conjugate_symmetry = std::max(rep.conjugate_symmetry, std::abs(v - std::conj(r->second)));
      ++rep.symmetry_checks;
    }
    // lambda(x, y) lambda(y, z) = lambda(x, z)
    for (auto it = lam.lower_bound({y, std::string()}); it != lam.end() && it->first.first == y; ++it) {
      const auto xz = lam.find({x, it->first.second});
      if (xz == lam.end()) continue;
      rep.multiplicativity = std::max(rep.multiplicativity, std::abs(v * it->second - xz->second));
      ++rep.multiplicativity_checks;
    }
  }
  return rep;
}

namespace {

const std::map<std::string, CMat>* edge(const PhiSamples& phi, const std::string& a, const std::string& b,
                                        bool& inverted) {
  if (const auto it = phi.find({a, b}); it != phi.end()) {
    inverted = false;
    return &it->second;
  }
  if (const auto it = phi.find({b, a}); it != phi.end()) {
    inverted = true;
    return &it->second;
  }
  return nullptr;
}

CMat edge_at(const std::map<std::string, CMat>& samples, bool inverted, const std::string& x) {
  const CMat& m = samples.at(x);
  return inverted ? CMat(m.inverse()) : m;
}

TripleResult evaluate_triple(const Triple& t, const PhiSamples& phi, int k) {
  const auto& [a, b, c] = t.charts;
  bool inv_ab = false, inv_bc = false, inv_ca = false;
  const auto* ab = edge(phi, a, b, inv_ab);
  const auto* bc = edge(phi, b, c, inv_bc);
  const auto* ca = edge(phi, c, a, inv_ca);
  if (!ab || !bc || !ca)
    throw StructuralError("dd_cocycle: triple (" + a + ", " + b + ", " + c + ") has an edge without samples");

  std::vector<std::string> points = t.points;
  if (points.empty())
    for (const auto& [x, m] : *ab)
      if (bc->count(x) && ca->count(x)) points.push_back(x);
  if (points.empty())
    throw StructuralError("dd_cocycle: triple (" + a + ", " + b + ", " + c + ") has no common sample point");

  TripleResult r;
  r.charts = t.charts;
  r.points = points.size();
  const CMat id = CMat::Identity(k, k);
  std::vector<C64> zetas;
  for (const auto& x : points) {
    if (!ab->count(x) || !bc->count(x) || !ca->count(x))
      throw StructuralError("dd_cocycle: point " + x + " is not sampled on every edge of the triple");
    const CMat prod = edge_at(*ab, inv_ab, x) * edge_at(*bc, inv_bc, x) * edge_at(*ca, inv_ca, x);
    const C64 z = prod.trace() / static_cast<double>(k);
    r.scalar_defect = std::max(r.scalar_defect, max_abs(prod - z * id));
    zetas.push_back(z);
  }
  r.zeta = zetas.front();
  for (const auto& z : zetas) r.constancy = std::max(r.constancy, std::abs(z - r.zeta));
  if (r.scalar_defect > kStructTol || r.constancy > kStructTol)
    throw StructureError("dd_cocycle: triple product on (" + a + ", " + b + ", " + c +
                         ") is not a constant multiple of the identity; not a convolution bundle");
  r.root_violation = std::abs(std::pow(r.zeta, k) - 1.0);
  return r;
}

}  // namespace

CocycleReport dd_cocycle(const NerveData& nerve, const PhiSamples& phi) {
  CocycleReport rep;
  rep.k = nerve.k;
  std::map<std::array<std::string, 3>, C64> zeta;
  bool ok = true;
  for (const auto& t : nerve.triples) {
    auto r = evaluate_triple(t, phi, nerve.k);
    ok = ok && r.root_violation <= kScalarTol;
    zeta[r.charts] = r.zeta;
    rep.triples.push_back(std::move(r));
  }
  auto face = [&](const std::string& a, const std::string& b, const std::string& c) {
    const std::array<std::string, 3> key{a, b, c};
    if (const auto it = zeta.find(key); it != zeta.end()) return it->second;
    return evaluate_triple({key, {}}, phi, nerve.k).zeta;
  };
  for (const auto& tet : nerve.tetrahedra) {
    const auto& [a, b, c, d] = tet;
    TetrahedronResult r;
    r.charts = tet;
    r.delta = face(b, c, d) / face(a, c, d) * face(a, b, d) / face(a, b, c);
    r.violation = std::abs(r.delta - 1.0);
    ok = ok && r.violation <= kScalarTol;
    rep.tetrahedra.push_back(std::move(r));
  }
  rep.passed = ok;
  return rep;
}

NerveAnalysis analyze_nerve(const NerveData& nerve) {
  NerveAnalysis out;
  PhiSamples phi;
  bool ok = true;
  for (const auto& o : nerve.overlaps) {
    auto d = decompose_transition(o, nerve.k);
    auto lr = verify_lambda(d.lambda);
    ok = ok && lr.passed() && d.reconstruction_error <= kScalarTol;
    out.max_reconstruction_error = std::max(out.max_reconstruction_error, d.reconstruction_error);
    phi[{o.alpha, o.beta}] = d.phi;
    out.lambda_reports.push_back(lr);
    out.decompositions.push_back(std::move(d));
  }
  out.cocycle = dd_cocycle(nerve, phi);
  out.passed = ok && out.cocycle.passed;
  return out;
}

namespace fixtures {

CMat pauli(int n) {
  const C64 i(0.0, 1.0);
  CMat m = CMat::Zero(2, 2);
  switch (n) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -i;
      m(1, 0) = i;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw StructuralError("pauli: index must be 1, 2 or 3");
  }
  return m;
}

namespace {

const std::vector<std::pair<std::string, double>>& sample_points() {
  static const std::vector<std::pair<std::string, double>> pts{{"0", 0.0}, {"1", 0.7}, {"2", 1.9}};
  return pts;
}

Overlap constant_overlap(const std::string& a, const std::string& b, const CMat& u) {
  Overlap o{a, b, {}};
  for (const auto& [xi, x] : sample_points())
    for (const auto& [yi, y] : sample_points())
      o.samples.push_back({xi, yi, transition_map(std::polar(1.0, x - y), u, u)});
  return o;
}

}  // namespace

NerveData quaternion_three_chart() {
  const C64 i(0.0, 1.0);
  NerveData n;
  n.k = 2;
  n.charts = {"1", "2", "3"};
  n.overlaps = {constant_overlap("1", "2", i * pauli(1)), constant_overlap("2", "3", i * pauli(2)),
                constant_overlap("1", "3", i * pauli(3))};
  n.triples = {{{"1", "2", "3"}, {}}};
  return n;
}

NerveData quaternion_four_chart() {
  const C64 i(0.0, 1.0);
  NerveData n = quaternion_three_chart();
  n.charts.push_back("4");
  n.overlaps.push_back(constant_overlap("1", "4", CMat::Identity(2, 2)));
  n.overlaps.push_back(constant_overlap("2", "4", i * pauli(1)));
  n.overlaps.push_back(constant_overlap("3", "4", i * pauli(3)));
  n.triples = {{{"1", "2", "3"}, {}}, {{"1", "2", "4"}, {}}, {{"1", "3", "4"}, {}}, {{"2", "3", "4"}, {}}};
  n.tetrahedra = {{"1", "2", "3", "4"}};
  return n;
}

}  // namespace fixtures

}  // namespace wreslab
