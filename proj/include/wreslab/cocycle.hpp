#pragma once

// Sampled transition data of convolution bundles over a finite nerve.
//
// A transition map Phi(x, y) acts on Mat(k) and is stored as a k^2 x k^2 matrix on
// row-major vectorizations, vec(A)[i k + j] = A_ij. The structure theorem splits it as
//   Phi(x, y)(A) = lambda(x, y) phi(x) A phi(y)^{-1},
// with lambda scalar and phi(x) in SU(k); triple products of the phi's are k-th roots
// of unity and form a Cech 2-cocycle.

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace wreslab {

using C64 = std::complex<double>;
using CMat = Eigen::MatrixXcd;

/// k^2 x k^2 matrix of A -> u A u^{-1}.
CMat conjugation_map(const CMat& u);
/// k^2 x k^2 matrix of A -> c u A v^{-1}.
CMat transition_map(C64 c, const CMat& u, const CMat& v);
/// Apply a stored map to a k x k matrix.
CMat apply_map(const CMat& t, const CMat& a);

/// Largest deviation from T(E_ij) T(E_kl) = delta_jk T(E_il) over matrix units.
double multiplicativity_defect(const CMat& t);

/// u in SU(k) with T(A) = u A u^{-1}, phase fixed so the first entry of modulus > 1e-8 (row-major)
/// has argument in [0, 2 pi / k).
CMat extract_inner(const CMat& t);
/// The phase rule alone: the unique omega^m u (omega = e^{2 pi i / k}) satisfying the window.
CMat canonical_phase(const CMat& u);

struct TransitionPoint {
  std::string x;
  std::string y;
  CMat map;
};

struct Overlap {
  std::string alpha;
  std::string beta;
  std::vector<TransitionPoint> samples;
};

struct LambdaSample {
  std::string x;
  std::string y;
  C64 value;
};

struct Decomposition {
  std::string alpha;
  std::string beta;
  std::map<std::string, CMat> phi;
  std::vector<LambdaSample> lambda;
  /// max over samples and matrix units of |Phi(x,y)(E) - lambda phi(x) E phi(y)^{-1}|.
  double reconstruction_error = 0.0;
  /// max off-diagonal mass of phi(x)^{-1} Phi(x,y)(1) phi(y) relative to lambda I.
  double scalar_defect = 0.0;
};

/// Requires (x, x) samples for every point used; throws StructureError when the image of the
/// identity is not scalar to 1e-8 and NotAutomorphismError for non-multiplicative diagonal maps.
Decomposition decompose_transition(const Overlap& overlap, int k);

struct LambdaReport {
  double diagonal = 0.0;          // max |lambda(x,x) - 1|
  double multiplicativity = 0.0;  // max |lambda(x,y) lambda(y,z) - lambda(x,z)|
  double conjugate_symmetry = 0.0;  // max |lambda(x,y) - conj lambda(y,x)|
  int diagonal_checks = 0;
  int multiplicativity_checks = 0;
  int symmetry_checks = 0;
  bool passed(double tol = 1e-10) const {
    return diagonal <= tol && multiplicativity <= tol && conjugate_symmetry <= tol;
  }
};

LambdaReport verify_lambda(const std::vector<LambdaSample>& samples);

struct Triple {
  std::array<std::string, 3> charts;
  /// Sample points; empty means every point where all three edges are sampled.
  std::vector<std::string> points;
};

struct NerveData {
  int k = 1;
  std::vector<std::string> charts;
  std::vector<Overlap> overlaps;
  std::vector<Triple> triples;
  std::vector<std::array<std::string, 4>> tetrahedra;
};

/// phi samples per ordered edge; a missing reverse edge is served by the pointwise inverse.
using PhiSamples = std::map<std::pair<std::string, std::string>, std::map<std::string, CMat>>;

struct TripleResult {
  std::array<std::string, 3> charts;
  C64 zeta;
  std::size_t points = 0;
  double scalar_defect = 0.0;    // max |phi phi phi - zeta(x) I| over points
  double constancy = 0.0;        // max |zeta(x) - zeta|
  double root_violation = 0.0;   // |zeta^k - 1|
};

struct TetrahedronResult {
  std::array<std::string, 4> charts;
  C64 delta;  // zeta_bcd zeta_acd^{-1} zeta_abd zeta_abc^{-1}
  double violation = 0.0;
};

struct CocycleReport {
  int k = 1;
  std::vector<TripleResult> triples;
  std::vector<TetrahedronResult> tetrahedra;
  bool passed = false;
};

/// Throws StructureError when a triple product is not a constant multiple of the identity (1e-8).
CocycleReport dd_cocycle(const NerveData& nerve, const PhiSamples& phi);

struct NerveAnalysis {
  std::vector<Decomposition> decompositions;
  std::vector<LambdaReport> lambda_reports;
  CocycleReport cocycle;
  double max_reconstruction_error = 0.0;
  bool passed = false;
};

/// Decompose every overlap, verify lambda, and extract the cocycle from the recovered phi.
NerveAnalysis analyze_nerve(const NerveData& nerve);

namespace fixtures {
/// Three charts {1, 2, 3}; constant phi_12 = i sigma_1, phi_23 = i sigma_2, phi_13 = i sigma_3 and
/// lambda(x, y) = e^{i(x - y)} on a few sample points. The triple (1, 2, 3) has zeta = -1.
NerveData quaternion_three_chart();
/// Adds chart 4 with phi_14 = I, phi_24 = i sigma_1, phi_34 = i sigma_3 and all four triples
/// plus the tetrahedron (1, 2, 3, 4).
NerveData quaternion_four_chart();
/// Pauli matrix sigma_n as a 2 x 2 complex matrix.
CMat pauli(int n);
}  // namespace fixtures

}  // namespace wreslab
