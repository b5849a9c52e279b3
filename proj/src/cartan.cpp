#include "liecomm/cartan.hpp"

#include <algorithm>
#include <cmath>

#include "liecomm/errors.hpp"
#include "liecomm/rng.hpp"

namespace liecomm {

using linalg::Mat;
using linalg::Vec;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Subspace centralizer(AlgebraPtr g, const Element& a, double tol) {
  return nullspace(g, ad_matrix(a), tol);
}

namespace {

double max_pairwise_bracket(const Subspace& s) {
  double m = 0.0;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j)
      m = std::max(m, norm(bracket(s.basis[i], s.basis[j])));
  return m;
}

}  // namespace

Subspace find_csa(AlgebraPtr g, uint64_t rng_seed, int max_tries) {
  Rng rng(rng_seed);
  for (int t = 0; t < max_tries; ++t) {
    const Element h = make_element(g, rng.normal_vec(g->dim));
    if (norm(h) == 0.0) continue;
    Subspace cen = centralizer(g, h, 1e-8);
    if (max_pairwise_bracket(cen) <= 1e-9) return cen;
  }
  throw CsaNotFound("no abelian centralizer found in " + std::to_string(max_tries) +
                    " tries (pathological seed or tolerance)");
}

namespace {

// sigma_min / sigma_max of an r x m matrix given as rows, via the r x r
// Gram of the rows' transpose (A Aᵀ).
std::pair<double, double> singular_extremes(const std::vector<Vec>& rows) {
  const int r = static_cast<int>(rows.size());
  Mat G(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) G(i, j) = linalg::dot(rows[i], rows[j]);
  const linalg::SymEig eig = linalg::sym_eig_jacobi(G);
  const double lo = std::max(eig.values.front(), 0.0);
  const double hi = std::max(eig.values.back(), 0.0);
  return {std::sqrt(lo), std::sqrt(hi)};
}

}  // namespace

CartanFrame root_decomposition(AlgebraPtr g, const Subspace& h, uint64_t rng_seed,
                               int max_tries) {
  const int r = h.dim();
  const int d = g->dim;
  if (r == 0) throw NotACsa("empty CSA");
  Rng rng(rng_seed);
  const Subspace space = full_space(g);
  bool saw_larger_kernel = false;

  for (int t = 0; t < max_tries; ++t) {
    Vec coeffs = rng.normal_vec(r);
    const double cn = linalg::norm2(coeffs);
    if (cn == 0.0) continue;
    linalg::scale(coeffs, 1.0 / cn);
    Element h0 = zero_element(g);
    for (int j = 0; j < r; ++j) linalg::axpy(coeffs[j], h.basis[j].coords, h0.coords);

    SkewPairing pairing;
    try {
      pairing = skew_pairing(ad_matrix(h0), space, 1e-8);
    } catch (const PairingFailure&) {
      continue;  // clustered frequencies; retry with a fresh reference
    }
    if (pairing.zero_space.dim() > r) {
      saw_larger_kernel = true;
      continue;
    }
    if (pairing.zero_space.dim() < r) continue;

    // The kernel must be h itself. A mismatch at the right dimension means
    // the reference drew close to a root kernel and the tiny-frequency plane
    // leaked into the kernel eigenvectors; that is a degenerate draw, retry.
    bool kernel_is_h = true;
    for (const auto& v : pairing.zero_space.basis)
      if (subspace_residual(h, v) > 1e-8) kernel_is_h = false;
    if (!kernel_is_h) continue;

    // Generic reference: all frequencies distinct and bounded away from 0.
    const double omega_max = pairing.planes.empty() ? 0.0 : pairing.planes.back().omega;
    bool distinct = !pairing.planes.empty() && pairing.planes.front().omega > 1e-6 * omega_max;
    for (size_t p = 1; p < pairing.planes.size() && distinct; ++p)
      if (pairing.planes[p].omega - pairing.planes[p - 1].omega <= 1e-6 * omega_max)
        distinct = false;
    if (!distinct) continue;

    CartanFrame frame;
    frame.algebra = g;
    frame.h = h;
    frame.h_ref = h0;
    for (const auto& plane : pairing.planes) {
      Root root;
      root.e = plane.e;
      root.f = plane.f;
      root.alpha.resize(r);
      for (int j = 0; j < r; ++j)
        root.alpha[j] = inner(root.f, bracket(h.basis[j], root.e)) / kTwoPi;
      frame.roots.push_back(std::move(root));
    }
    if (d != r + 2 * static_cast<int>(frame.roots.size()))
      throw NotACsa("dimension identity d = r + 2|roots| failed");

    // Rank of the r x m alpha matrix via the Gram of its rows.
    const size_t m = frame.roots.size();
    std::vector<Vec> a_rows(r, Vec(m));
    for (size_t p = 0; p < m; ++p)
      for (int j = 0; j < r; ++j) a_rows[j][p] = frame.roots[p].alpha[j];
    const auto [smin, smax] = singular_extremes(a_rows);
    frame.alpha_sigma_min = smin;
    if (smin <= 1e-8 * smax)
      throw DegenerateReference("alpha matrix is rank-deficient (roots do not separate h)");

    // Stall constant for the descent loop: sigma_min of the matrix whose
    // rows are the unit alpha vectors, divided by sqrt(m).
    std::vector<Vec> u_rows(r, Vec(m));
    for (size_t p = 0; p < m; ++p) {
      const double rn = linalg::norm2(frame.roots[p].alpha);
      for (int j = 0; j < r; ++j) u_rows[j][p] = frame.roots[p].alpha[j] / rn;
    }
    const auto [pmin, pmax] = singular_extremes(u_rows);
    (void)pmax;
    frame.stall_constant = pmin / std::sqrt(static_cast<double>(m));
    return frame;
  }

  if (saw_larger_kernel)
    throw NotACsa("pairing kernel strictly larger than h for every reference element");
  throw DegenerateReference("no generic reference element found in " +
                            std::to_string(max_tries) + " tries");
}

Components project(const CartanFrame& frame, const Element& x) {
  Components c;
  c.h_part = subspace_project(frame.h, x);
  c.root_parts.reserve(frame.roots.size());
  for (const auto& root : frame.roots)
    c.root_parts.push_back({inner(root.e, x), inner(root.f, x)});
  return c;
}

Element components_reassemble(const CartanFrame& frame, const Components& c) {
  Element x = c.h_part;
  for (size_t p = 0; p < frame.roots.size(); ++p) {
    linalg::axpy(c.root_parts[p][0], frame.roots[p].e.coords, x.coords);
    linalg::axpy(c.root_parts[p][1], frame.roots[p].f.coords, x.coords);
  }
  return x;
}

double reassembly_residual(const CartanFrame& frame, const Element& x) {
  return norm(sub(x, components_reassemble(frame, project(frame, x))));
}

double root_value(const Root& root, const Vec& h_coefficients) {
  return linalg::dot(root.alpha, h_coefficients);
}

Element coroot_direction(const CartanFrame& frame, int root_index) {
  const Root& root = frame.roots[root_index];
  Vec u = root.alpha;
  const double n = linalg::norm2(u);
  linalg::scale(u, 1.0 / n);
  Element out = zero_element(frame.algebra);
  for (int j = 0; j < frame.rank(); ++j)
    linalg::axpy(u[j], frame.h.basis[j].coords, out.coords);
  return out;
}

bool is_regular(const CartanFrame& frame, const Element& H, double delta) {
  const Element h_part = subspace_project(frame.h, H);
  if (norm(sub(H, h_part)) > 1e-9 * std::max(1.0, norm(H)))
    throw NotInCsa("element is not in the CSA");
  const Vec hc = subspace_coefficients(frame.h, H);
  double lo = 0.0, hi = 0.0;
  for (size_t p = 0; p < frame.roots.size(); ++p) {
    const double v = std::abs(root_value(frame.roots[p], hc));
    if (p == 0) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return hi > 0.0 && lo >= delta * hi;
}

}  // namespace liecomm
