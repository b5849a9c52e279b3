#ifndef LIECOMM_CARTAN_HPP
#define LIECOMM_CARTAN_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "liecomm/numerics.hpp"

namespace liecomm {

/// Positive root: its values on the orthonormal CSA basis (so that
/// [h_j, e] = 2*pi*alpha_j * f and [h_j, f] = -2*pi*alpha_j * e), plus the
/// oriented orthonormal frame (e, f) of its plane; f realizes the complex
/// structure i.
struct Root {
  linalg::Vec alpha;
  Element e, f;
};

/// Orthonormal CSA basis, the positive roots for the orientation fixed by
/// h_ref (alpha(h_ref) > 0 for every root), and the frame constants used by
/// the descent loop.
struct CartanFrame {
  AlgebraPtr algebra;
  Subspace h;
  std::vector<Root> roots;
  Element h_ref;
  double alpha_sigma_min = 0.0;  // smallest singular value of the alpha matrix
  double stall_constant = 0.0;   // sigma_min(row-normalized alphas) / sqrt(|roots|)
  int rank() const { return h.dim(); }
};

/// Metric-orthogonal components of an element: CSA part and one (e,f)
/// coordinate pair per root plane.
struct Components {
  Element h_part;
  std::vector<std::array<double, 2>> root_parts;
};

/// ker(ad A) as a metric-orthonormal subspace; contains A.
Subspace centralizer(AlgebraPtr g, const Element& a, double tol);

/// Centralizer of a random element, retried until it is abelian.
Subspace find_csa(AlgebraPtr g, uint64_t rng_seed, int max_tries = 50);

/// Root-space decomposition of g with respect to the CSA h: picks a generic
/// reference element in h (retried until all pairing frequencies are
/// distinct and the kernel is exactly h) and recovers each root's full
/// linear form from brackets against every CSA basis vector.
CartanFrame root_decomposition(AlgebraPtr g, const Subspace& h, uint64_t rng_seed = 0,
                               int max_tries = 50);

Components project(const CartanFrame& frame, const Element& x);
Element components_reassemble(const CartanFrame& frame, const Components& c);
double reassembly_residual(const CartanFrame& frame, const Element& x);

/// alpha(H) for H expressed by its CSA coefficients.
double root_value(const Root& root, const linalg::Vec& h_coefficients);

/// Unit element of h orthogonal to ker(gamma) with gamma(u) > 0 (the
/// normalized metric dual of the root).
Element coroot_direction(const CartanFrame& frame, int root_index);

/// min |alpha(H)| >= delta * max |alpha(H)| with a positive max.
/// Throws NotInCsa when H is not in h (residual above 1e-9 relative).
bool is_regular(const CartanFrame& frame, const Element& H, double delta);

}  // namespace liecomm

#endif
