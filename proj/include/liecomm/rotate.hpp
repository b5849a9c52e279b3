#ifndef LIECOMM_ROTATE_HPP
#define LIECOMM_ROTATE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "liecomm/cartan.hpp"
#include "liecomm/errors.hpp"

namespace liecomm {

/// Orthogonal frame (U, V, W) of the so(3)-isomorphic subalgebra
/// m_gamma = R*H_gamma + L_gamma, normalized so that [U,V]=W, [V,W]=U,
/// [W,U]=V. U and V span the root plane, W lies in h along the coroot
/// direction; all three have Killing norm rho.
struct So3Frame {
  int root_index = -1;
  Element U, V, W;
  double rho = 0.0;
};

struct JacobiStep {
  int root_index = -1;
  double b0_before = 0.0;
  double b0_after = 0.0;
  double decrease = 0.0;  // |H_gamma|^2, so b0_after^2 + decrease = b0_before^2
  Element z;              // rotation generator in m_gamma
};

enum class RootPolicy { max_decrease, first_nonzero, random_nonzero };

struct SweepConfig {
  double tol_A = 1e-7;
  double tol_B = 1e-8;
  int max_iter = 500;
  RootPolicy policy = RootPolicy::max_decrease;
  uint64_t rng_seed = 0;
};

/// Outcome of one descent: generators are stored in application order, so
/// applying exp(ad(Z)) for each listed Z to (a_out, b_out) recovers the
/// inputs. The trace keeps production (step) order.
struct JacobiResult {
  std::vector<Element> q_generators;
  Element a_out, b_out;
  std::vector<JacobiStep> trace;
  bool converged = false;
  double max_a_drift = 0.0;  // largest h-projection of A' seen after any step
};

/// Thrown when the descent exhausts max_iter; carries the partial result.
class MaxIterationsExceeded : public Error {
public:
  MaxIterationsExceeded(std::string what, JacobiResult partial)
      : Error(ErrorCode::max_iterations, std::move(what)), partial_(std::move(partial)) {}
  const JacobiResult& partial() const { return partial_; }

private:
  JacobiResult partial_;
};

/// Builds the normalized so(3) frame for root gamma with U along x_dir
/// (a unit vector in L_gamma): iX is x_dir rotated a quarter turn inside the
/// plane, Y = [x_dir, iX], rho = 1/sqrt(2*pi*gamma(Y)), U = rho*x_dir,
/// V = rho*iX, W = rho^2*Y. Throws DegenerateRoot when gamma(Y) is not
/// positive.
So3Frame so3_frame(const CartanFrame& frame, int root_index, const Element& x_dir);

/// Coordinates of an m_gamma element in the (U,V,W) frame (where the bracket
/// is the cross product) and back.
std::array<double, 3> so3_coords(const So3Frame& s, const Element& x);
Element so3_element(const So3Frame& s, const std::array<double, 3>& c);

/// Plans the rotation generator Z in m_gamma for one descent step: applying
/// the inverse rotation exp(ad(-Z)) zeroes the coroot component of the
/// element with components (h_comp in R*H_gamma, b_comp in L_gamma) while
/// fixing a_comp (the made-orthogonal element's L_gamma component) exactly.
/// The rotation axis is a_comp's direction when it is nonzero, otherwise
/// b_comp's, otherwise U; the angle is atan2(h, q) with q the component of
/// b_comp along i*axis, which degenerates to the right angle of Lemma-2-style
/// rotations when q = 0. Throws ZeroH when h_comp vanishes.
Element plan_rotation(const So3Frame& s, const Element& h_comp, const Element& a_comp,
                      const Element& b_comp);

/// exp(ad(Z)) X; fixes ker(gamma) pointwise for Z in m_gamma and is an
/// isometry.
Element apply_rotation(const Element& z, const Element& x);

/// Lemma-2 descent: repeatedly rotates inside one m_gamma to strictly shrink
/// the h-projection of B while keeping A orthogonal to h. Requires A's
/// h-projection below tol_A going in. Throws MaxIterationsExceeded (with the
/// partial trace) or PreconditionViolated.
JacobiResult jacobi_sweep(const Element& A, const Element& B, const CartanFrame& frame,
                          const SweepConfig& cfg);

struct BiorthogonalResult {
  JacobiResult stage1;  // makes A orthogonal to h
  JacobiResult stage2;  // makes B orthogonal to h, preserving A's orthogonality
  CartanFrame frame;
};

/// Corollary-1 pipeline: build a frame, run jacobi_sweep(0, A), transform
/// both elements, then run jacobi_sweep(A1, B1). After both stages the fixed
/// CSA h is orthogonal to the transformed A and B; equivalently the rotated
/// CSA Q(h) is orthogonal to the originals.
BiorthogonalResult biorthogonal_csa(AlgebraPtr g, const Element& A, const Element& B,
                                    const SweepConfig& cfg, uint64_t rng_seed);

/// Applies exp(ad(Z)) for each generator in list order (reconstruction map Q).
Element apply_generators(const std::vector<Element>& gens, Element x);
/// Applies Q^{-1}: exp(ad(-Z)) in reverse list order.
Element apply_generators_inverse(const std::vector<Element>& gens, Element x);

}  // namespace liecomm

#endif
