#include <numbers>

#include "doctest.h"
#include "wreslab/cocycle.hpp"
#include "wreslab/errors.hpp"

using namespace wreslab;

namespace {

const C64 I(0.0, 1.0);

double dist(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

CMat rotation(double t) {
  CMat r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

/// Overlap sampled at x in {0, 0.7, 1.9} from phi(x) and lambda(x, y).
template <class Phi, class Lambda>
Overlap sampled(const std::string& a, const std::string& b, Phi phi, Lambda lambda) {
  const std::vector<std::pair<std::string, double>> pts{{"0", 0.0}, {"1", 0.7}, {"2", 1.9}};
  Overlap o{a, b, {}};
  for (const auto& [xi, x] : pts)
    for (const auto& [yi, y] : pts) o.samples.push_back({xi, yi, transition_map(lambda(x, y), phi(x), phi(y))});
  return o;
}

CocycleReport constant_cocycle(const NerveData& n, const std::map<std::pair<std::string, std::string>, CMat>& phi) {
  PhiSamples s;
  for (const auto& [edge, u] : phi)
    for (const char* x : {"0", "1", "2"}) s[edge][x] = u;
  return dd_cocycle(n, s);
}

}  // namespace

TEST_CASE("extract inner") {
  CHECK(dist(extract_inner(CMat::Identity(4, 4)), CMat::Identity(2, 2)) <= 1e-12);
  const CMat s1 = fixtures::pauli(1);
  const CMat u = extract_inner(conjugation_map(s1));
  CHECK(dist(u, canonical_phase(I * s1)) <= 1e-12);
  CHECK(std::abs(u.determinant() - 1.0) <= 1e-12);

  CMat d = CMat::Identity(2, 2);
  d(1, 1) = I;
  // det normalization leaves e^{-i pi/4} or e^{3 i pi/4}; the argument window [0, pi) picks the second.
  const CMat ud = extract_inner(conjugation_map(d));
  CHECK(dist(ud, std::polar(1.0, 3.0 * std::numbers::pi / 4.0) * d) <= 1e-12);
}

TEST_CASE("extract inner is deterministic and implements the map") {
  for (int trial = 0; trial < 10; ++trial) {
    CMat h = CMat::Random(3, 3);
    h = h + h.adjoint().eval();
    Eigen::SelfAdjointEigenSolver<CMat> es(h);
    Eigen::VectorXcd ph(3);
    for (int j = 0; j < 3; ++j) ph(j) = std::polar(1.0, es.eigenvalues()(j));
    const CMat w = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    const CMat t = conjugation_map(w);
    const CMat u = extract_inner(t);
    CHECK(dist(u, extract_inner(t)) == 0.0);
    CHECK(std::abs(u.determinant() - 1.0) <= 1e-10);
    const CMat a = CMat::Random(3, 3);
    CHECK(dist(u * a * u.inverse(), apply_map(t, a)) <= 1e-10);
    CHECK(multiplicativity_defect(t) <= 1e-10);
  }
}

TEST_CASE("non-automorphisms are rejected") {
  CMat t = CMat::Identity(4, 4) * 2.0;
  CHECK_THROWS_AS(extract_inner(t), NotAutomorphismError);
  CHECK(multiplicativity_defect(t) > 0.5);
}

TEST_CASE("decompose transitions") {
  const auto id = decompose_transition(
      sampled("1", "2", [](double) { return CMat::Identity(2, 2); }, [](double, double) { return C64(1.0); }), 2);
  for (const auto& s : id.lambda) CHECK(std::abs(s.value - 1.0) <= 1e-12);
  for (const auto& [x, u] : id.phi) CHECK(dist(u, CMat::Identity(2, 2)) <= 1e-12);

  const auto ph = decompose_transition(
      sampled("1", "2", [](double) { return CMat::Identity(2, 2); },
              [](double x, double y) { return std::polar(1.0, x - y); }),
      2);
  const std::map<std::string, double> at{{"0", 0.0}, {"1", 0.7}, {"2", 1.9}};
  for (const auto& s : ph.lambda) CHECK(std::abs(s.value - std::polar(1.0, at.at(s.x) - at.at(s.y))) <= 1e-12);

  const auto rot = decompose_transition(
      sampled("1", "2", [](double x) { return rotation(x); }, [](double, double) { return C64(1.0); }), 2);
  // At x = 1.9 the canonical representative is -R(x), so lambda is the coboundary of that sign.
  const auto sign = [&](const std::string& x) {
    const CMat r = rotation(at.at(x));
    return (canonical_phase(r) * r.inverse())(0, 0);
  };
  CHECK(std::abs(sign("2") + 1.0) <= 1e-12);
  for (const auto& s : rot.lambda) CHECK(std::abs(s.value * sign(s.x) / sign(s.y) - 1.0) <= 1e-12);
  for (const auto& [x, u] : rot.phi) CHECK(dist(u, canonical_phase(rotation(at.at(x)))) <= 1e-12);
  CHECK(rot.reconstruction_error <= 1e-10);
}

TEST_CASE("decompose rejects non-scalar identity images") {
  Overlap o = sampled("1", "2", [](double) { return CMat::Identity(2, 2); }, [](double, double) { return C64(1.0); });
  CMat skew = CMat::Identity(2, 2);
  skew(0, 1) = 0.5;
  for (auto& s : o.samples)
    if (s.x != s.y) s.map = transition_map(1.0, skew, CMat::Identity(2, 2));
  CHECK_THROWS_AS(decompose_transition(o, 2), StructureError);
}

TEST_CASE("lambda relations") {
  std::vector<LambdaSample> ones, phases, bad;
  const std::vector<std::pair<std::string, double>> pts{{"0", 0.0}, {"1", 0.7}, {"2", 1.9}};
  for (const auto& [xi, x] : pts)
    for (const auto& [yi, y] : pts) {
      ones.push_back({xi, yi, 1.0});
      phases.push_back({xi, yi, std::polar(1.0, x - y)});
      bad.push_back({xi, yi, std::polar(1.0, x - y) + 0.01});
    }
  CHECK(verify_lambda(ones).passed());
  const auto rp = verify_lambda(phases);
  CHECK(rp.passed());
  CHECK(rp.diagonal_checks == 3);
  CHECK(rp.multiplicativity_checks == 27);
  const auto rb = verify_lambda(bad);
  CHECK_FALSE(rb.passed());
  CHECK(rb.multiplicativity > 1e-3);
}

TEST_CASE("quaternionic three-chart cocycle") {
  const auto a = analyze_nerve(fixtures::quaternion_three_chart());
  CHECK(a.passed);
  REQUIRE(a.cocycle.triples.size() == 1);
  const C64 z = a.cocycle.triples.front().zeta;
  CHECK(std::abs(z + 1.0) <= 1e-10);
  CHECK(std::abs(z * z - 1.0) <= 1e-10);
  CHECK(a.max_reconstruction_error <= 1e-10);
  for (const auto& lr : a.lambda_reports) CHECK(lr.passed(1e-10));
}

TEST_CASE("four-chart cocycle against direct quaternion products") {
  const auto nerve = fixtures::quaternion_four_chart();
  const auto a = analyze_nerve(nerve);
  CHECK(a.passed);
  std::map<std::pair<std::string, std::string>, CMat> q{
      {{"1", "2"}, I * fixtures::pauli(1)}, {{"2", "3"}, I * fixtures::pauli(2)}, {{"1", "3"}, I * fixtures::pauli(3)},
      {{"1", "4"}, CMat::Identity(2, 2)},   {{"2", "4"}, I * fixtures::pauli(1)}, {{"3", "4"}, I * fixtures::pauli(3)}};
  for (const auto& t : a.cocycle.triples) {
    const auto& [x, y, z] = t.charts;
    const CMat prod = q.at({x, y}) * q.at({y, z}) * q.at({x, z}).inverse();
    CHECK(dist(prod, t.zeta * CMat::Identity(2, 2)) <= 1e-12);
  }
  REQUIRE(a.cocycle.tetrahedra.size() == 1);
  CHECK(std::abs(a.cocycle.tetrahedra.front().delta - 1.0) <= 1e-10);
}

TEST_CASE("cocycle from constant frames") {
  const auto nerve = fixtures::quaternion_four_chart();
  std::map<std::pair<std::string, std::string>, CMat> phi;
  for (const auto& o : nerve.overlaps) phi[{o.alpha, o.beta}] = CMat::Identity(2, 2);
  const auto trivial = constant_cocycle(nerve, phi);
  for (const auto& t : trivial.triples) CHECK(std::abs(t.zeta - 1.0) <= 1e-12);

  phi = {{{"1", "2"}, I * fixtures::pauli(1)}, {{"2", "3"}, I * fixtures::pauli(2)}, {{"1", "3"}, I * fixtures::pauli(3)},
         {{"1", "4"}, CMat::Identity(2, 2)},   {{"2", "4"}, I * fixtures::pauli(1)}, {{"3", "4"}, I * fixtures::pauli(3)}};
  const auto base = constant_cocycle(nerve, phi);
  phi[{"1", "2"}] *= -1.0;
  const auto flipped = constant_cocycle(nerve, phi);
  for (std::size_t i = 0; i < base.triples.size(); ++i) {
    const auto& ch = base.triples[i].charts;
    const bool has12 = ch[0] == "1" && ch[1] == "2";
    CHECK(std::abs(flipped.triples[i].zeta - (has12 ? -1.0 : 1.0) * base.triples[i].zeta) <= 1e-12);
  }
  CHECK(std::abs(flipped.tetrahedra.front().delta - 1.0) <= 1e-10);
}

TEST_CASE("non-constant triple products are rejected") {
  const auto nerve = fixtures::quaternion_three_chart();
  PhiSamples s;
  for (const char* x : {"0", "1", "2"}) {
    s[{"1", "2"}][x] = I * fixtures::pauli(1);
    s[{"2", "3"}][x] = I * fixtures::pauli(2);
    s[{"1", "3"}][x] = I * fixtures::pauli(3);
  }
  s[{"1", "2"}]["1"] = -I * fixtures::pauli(1);
  CHECK_THROWS_AS(dd_cocycle(nerve, s), StructureError);
  s[{"1", "2"}]["1"] = rotation(0.3);
  CHECK_THROWS_AS(dd_cocycle(nerve, s), StructureError);
}
