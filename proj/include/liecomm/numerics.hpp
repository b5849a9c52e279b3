#ifndef LIECOMM_NUMERICS_HPP
#define LIECOMM_NUMERICS_HPP

#include <vector>

#include "liecomm/algebra.hpp"
#include "liecomm/linalg.hpp"

namespace liecomm {

/// Subspace with a basis orthonormal for the inner product (X,Y) = -<X,Y>.
struct Subspace {
  AlgebraPtr algebra;
  std::vector<Element> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

/// Invariant 2-planes of a metric-skew-adjoint operator: S e = w f,
/// S f = -w e with w > 0, plus the kernel.
struct SkewPlane {
  double omega = 0.0;
  Element e, f;
};

struct SkewPairing {
  Subspace zero_space;
  std::vector<SkewPlane> planes;  // frequencies ascending
};

// Coordinates <-> metric-orthonormal ("tilde") coordinates via the Cholesky
// factor of G = -K. In tilde coordinates the metric is the identity and
// metric-skew-adjoint operators are plain skew-symmetric matrices.
linalg::Vec to_ortho(const LieAlgebra& g, const linalg::Vec& coords);
linalg::Vec from_ortho(const LieAlgebra& g, const linalg::Vec& tilde);
linalg::Mat operator_to_ortho(const LieAlgebra& g, const linalg::Mat& M);

/// The whole algebra as a Subspace (metric-orthonormal basis).
Subspace full_space(AlgebraPtr g);

/// Metric-orthonormal basis of the directions with singular value
/// <= tol * sigma_max. The zero operator yields the full space.
Subspace nullspace(AlgebraPtr g, const linalg::Mat& M, double tol);

/// Modified Gram-Schmidt against the metric; inputs with residual norm
/// <= 1e-12 * (largest input norm) are dropped.
Subspace orthonormalize(const std::vector<Element>& vectors);

/// Splits `space` into ker(S) and oriented 2-planes using the spectrum of
/// the symmetric operator SᵀS = -S²; near-equal frequencies (within
/// tol * omega_max) are resolved into S-invariant planes. Throws
/// NotSkewAdjoint or PairingFailure.
SkewPairing skew_pairing(const linalg::Mat& S, const Subspace& space, double tol);

/// e^M v; see linalg::expm_apply for the scaling/Taylor contract.
linalg::Vec expm_apply(const linalg::Mat& M, const linalg::Vec& v);

// Subspace helpers.
linalg::Vec subspace_coefficients(const Subspace& s, const Element& x);
Element subspace_project(const Subspace& s, const Element& x);
double subspace_residual(const Subspace& s, const Element& x);
double gram_residual(const Subspace& s);

}  // namespace liecomm

#endif
