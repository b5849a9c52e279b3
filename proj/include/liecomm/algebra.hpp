#ifndef LIECOMM_ALGEBRA_HPP
#define LIECOMM_ALGEBRA_HPP

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "liecomm/linalg.hpp"

namespace liecomm {

/// Which compact algebra to build. Direct sums are flat after normalize().
struct AlgebraSpec {
  enum class Kind { special_unitary, special_orthogonal, direct_sum };

  Kind kind = Kind::special_unitary;
  int n = 0;                          // su(n) needs n >= 2, so(n) needs n >= 3
  std::vector<AlgebraSpec> summands;  // direct_sum only
  std::string label;

  static AlgebraSpec su(int n);
  static AlgebraSpec so(int n);
  static AlgebraSpec sum(std::vector<AlgebraSpec> parts);

  /// Grammar: "su:N" | "so:N" | "sum:<simple>+<simple>+...".
  static AlgebraSpec parse(const std::string& text);
  std::string to_string() const;

  void validate() const;  // throws InvalidSpec
  int dim() const;
  int rank() const;
  int positive_root_count() const;
};

/// Defining-representation basis: one complex matrix per basis element,
/// block-diagonal for direct sums. Kept for the trace-form cross-checks and
/// test oracles; all runtime arithmetic goes through the structure tensor.
struct RepBasis {
  int n = 0;  // total matrix size
  std::vector<std::vector<std::complex<double>>> mats;  // row-major n*n each
};

/// Compact semisimple Lie algebra over a fixed basis. Immutable after
/// build_algebra; safe to share across threads.
struct LieAlgebra {
  AlgebraSpec spec;
  int dim = 0;
  std::vector<std::string> basis_labels;
  std::vector<double> structure;  // c[i][j][k], row-major d*d*d
  linalg::Mat killing;            // K[i][j] = tr(ad e_i ad e_j), negative definite
  linalg::Mat metric;             // G = -K, the inner product used everywhere
  linalg::Mat metric_chol;        // lower L with L Lᵀ = G
  RepBasis rep;
  uint64_t id = 0;  // identity token for cross-algebra checks

  double c(int i, int j, int k) const {
    return structure[(static_cast<size_t>(i) * dim + j) * dim + k];
  }
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// Coordinate vector in a LieAlgebra basis.
struct Element {
  AlgebraPtr algebra;
  linalg::Vec coords;
};

struct ValidationReport {
  double jacobi_residual = 0.0;       // max over basis triples
  double invariance_residual = 0.0;   // max over basis triples
  double antisymmetry_residual = 0.0;
  double killing_symmetry_residual = 0.0;
  double killing_max_eigenvalue = 0.0;  // must be < 0
  bool jacobi_ok = false;
  bool invariance_ok = false;
  bool antisymmetry_ok = false;
  bool killing_negative_definite = false;
  bool passed() const {
    return jacobi_ok && invariance_ok && antisymmetry_ok && killing_negative_definite;
  }
};

/// Per-summand least-squares fit of <X,Y> = c * Re tr(xy) over the defining
/// representation. Expect 2n for su(n) and n-2 for so(n).
struct KillingFit {
  std::string label;
  double fitted = 0.0;
  double expected = 0.0;
};

/// Builds su(n), so(n) or a direct sum with the documented basis:
/// so(n) uses {E_ij - E_ji : i<j} (lexicographic); su(n) uses the n-1
/// diagonal elements i(E_kk - E_{k+1,k+1}) followed, for each i<j, by
/// E_ij - E_ji and i(E_ij + E_ji). Structure constants come from expanding
/// matrix commutators; the Killing Gram from ad-traces.
LieAlgebra build_algebra_value(const AlgebraSpec& spec);
AlgebraPtr build_algebra(const AlgebraSpec& spec);

Element zero_element(AlgebraPtr g);
Element basis_element(AlgebraPtr g, int i);
Element make_element(AlgebraPtr g, linalg::Vec coords);

Element bracket(const Element& x, const Element& y);
linalg::Mat ad_matrix(const Element& x);
double killing_form(const Element& x, const Element& y);

/// Inner product (X,Y) = -<X,Y>; positive definite.
double inner(const Element& x, const Element& y);
double norm(const Element& x);

Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scaled(const Element& x, double a);

/// exp(ad(Z)) X. Orthogonal for the Killing metric and an automorphism.
Element exp_ad_apply(const Element& z, const Element& x);

ValidationReport validate_algebra(const LieAlgebra& g);
std::vector<KillingFit> killing_trace_fit(const LieAlgebra& g);

namespace detail {
void require_same_algebra(const Element& x, const Element& y);
}

}  // namespace liecomm

#endif
