#ifndef LIECOMM_SOLVER_HPP
#define LIECOMM_SOLVER_HPP

#include <cstdint>
#include <vector>

#include "liecomm/rotate.hpp"

namespace liecomm {

struct SolveConfig {
  double tol_A = 1e-7;
  double tol_B = 1e-8;
  int max_iter = 500;
  RootPolicy policy = RootPolicy::max_decrease;
  double regular_delta = 1e-6;
  uint64_t rng_seed = 0;
};

/// Everything needed to check [X,Y_A]=A and [X,Y_B]=B without solver state:
/// X is regular, generators map the working frame back to the original
/// coordinates, residuals are the final bracket errors.
struct CommutatorCertificate {
  Element x, y_a, y_b;
  std::vector<Element> q_generators;  // application order (see rotate.hpp)
  CartanFrame frame_snapshot;
  double residual_a = 0.0;
  double residual_b = 0.0;
  double regularity_margin = 0.0;  // min |alpha(X_frame)| / max |alpha(X_frame)|
};

struct VerificationReport {
  double residual_a = 0.0;
  double residual_b = 0.0;
  bool residual_a_ok = false;
  bool residual_b_ok = false;
  int centralizer_dim = 0;
  int expected_rank = 0;
  double centralizer_abelian_residual = 0.0;
  bool regular_ok = false;
  bool passed() const { return residual_a_ok && residual_b_ok && regular_ok; }
};

/// Sum of the coroot directions, normalized; perturbed with seeded CSA noise
/// (up to 20 tries) if is_regular fails at delta. Throws RegularNotFound.
Element pick_regular(const CartanFrame& frame, double delta, uint64_t rng_seed = 0);

/// Solves [X, Y] = T for T orthogonal to h and X regular in h: inverts the
/// 2*pi*alpha(X)-scaled quarter turn on every root plane. The preimage has
/// zero h-component (the minimum-norm choice). The bracket residual is
/// rechecked internally; orientation bugs cannot pass silently.
Element invert_ad(const CartanFrame& frame, const Element& x, const Element& t);

/// Theorem-1 pipeline: biorthogonal CSA, one regular X for both targets,
/// per-plane inversion, and the map back through the accumulated rotation.
/// Throws CertificateInvalid rather than returning an unverified result.
/// When trace_out is given it receives the stage-1 then stage-2 descent
/// steps in production order.
CommutatorCertificate solve_commutator(AlgebraPtr g, const Element& a, const Element& b,
                                       const SolveConfig& cfg,
                                       std::vector<JacobiStep>* trace_out = nullptr);

/// Frame-free recheck from (g, A, B, X, Y_A, Y_B) alone: bracket residuals
/// plus regularity via the centralizer of X (abelian, dimension = rank).
VerificationReport verify_certificate(AlgebraPtr g, const Element& a, const Element& b,
                                      const CommutatorCertificate& cert, double tol);

}  // namespace liecomm

#endif
