#include "liecomm/solver.hpp"

#include <algorithm>
#include <cmath>

#include "liecomm/rng.hpp"

namespace liecomm {

using linalg::Vec;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Element pick_regular(const CartanFrame& frame, double delta, uint64_t rng_seed) {
  Element x = zero_element(frame.algebra);
  for (size_t p = 0; p < frame.roots.size(); ++p)
    x = add(x, coroot_direction(frame, static_cast<int>(p)));
  Rng rng(rng_seed);
  for (int attempt = 0; attempt < 20; ++attempt) {
    const double n = norm(x);
    if (n > 0.0) {
      x = scaled(x, 1.0 / n);
      if (is_regular(frame, x, delta)) return x;
    }
    // Seeded CSA noise of magnitude 0.1, kept exactly inside h.
    Vec noise = rng.normal_vec(frame.rank());
    const double nn = linalg::norm2(noise);
    if (nn == 0.0) continue;
    linalg::scale(noise, 0.1 / nn);
    Element bump = zero_element(frame.algebra);
    for (int j = 0; j < frame.rank(); ++j)
      linalg::axpy(noise[j], frame.h.basis[j].coords, bump.coords);
    x = add(x, bump);
  }
  throw RegularNotFound("no regular element found after 20 perturbation tries");
}

Element invert_ad(const CartanFrame& frame, const Element& x, const Element& t) {
  if (!is_regular(frame, x, 1e-9)) throw NotRegular("X is not regular in the frame's CSA");
  const double t_scale = std::max(1.0, norm(t));
  const Components ct = project(frame, t);
  if (norm(ct.h_part) > 1e-8 * t_scale)
    throw NotInImage("T has an h-component; it is outside ad(X)(g)");

  const Vec xc = subspace_coefficients(frame.h, x);
  Element y = zero_element(frame.algebra);
  for (size_t p = 0; p < frame.roots.size(); ++p) {
    const double s = kTwoPi * root_value(frame.roots[p], xc);
    const double t_e = ct.root_parts[p][0];
    const double t_f = ct.root_parts[p][1];
    linalg::axpy(t_f / s, frame.roots[p].e.coords, y.coords);
    linalg::axpy(-t_e / s, frame.roots[p].f.coords, y.coords);
  }
  // Mandatory residual check: root-plane sign conventions are never trusted.
  // Measured against the reachable component of T; the h-part (bounded by
  // the precondition) lies outside ad(X)(g) and no preimage can remove it.
  const Element t_perp = sub(t, ct.h_part);
  const double resid = norm(sub(bracket(x, y), t_perp));
  if (resid > 1e-9 * t_scale)
    throw Error(ErrorCode::generic,
                "invert_ad postcondition failed (residual " + std::to_string(resid) + ")");
  return y;
}

CommutatorCertificate solve_commutator(AlgebraPtr g, const Element& a, const Element& b,
                                       const SolveConfig& cfg,
                                       std::vector<JacobiStep>* trace_out) {
  const ValidationReport vr = validate_algebra(*g);
  if (!vr.passed())
    throw Error(ErrorCode::generic, "algebra failed validation; refusing to solve");

  SweepConfig sweep;
  sweep.tol_A = cfg.tol_A;
  // Slightly tighter than the certificate tolerance: the final bracket
  // residuals equal the leftover CSA projections, and the map back through
  // Q adds roundoff on top.
  sweep.tol_B = 0.9 * cfg.tol_B;
  sweep.max_iter = cfg.max_iter;
  sweep.policy = cfg.policy;
  sweep.rng_seed = cfg.rng_seed;

  BiorthogonalResult bio = biorthogonal_csa(g, a, b, sweep, cfg.rng_seed);
  if (trace_out) {
    *trace_out = bio.stage1.trace;
    trace_out->insert(trace_out->end(), bio.stage2.trace.begin(), bio.stage2.trace.end());
  }
  const Element& a_rot = bio.stage2.a_out;
  const Element& b_rot = bio.stage2.b_out;

  const Element x_frame = pick_regular(bio.frame, cfg.regular_delta, cfg.rng_seed + 2);
  const Element ya_frame = invert_ad(bio.frame, x_frame, a_rot);
  const Element yb_frame = invert_ad(bio.frame, x_frame, b_rot);

  CommutatorCertificate cert;
  cert.frame_snapshot = bio.frame;
  cert.q_generators = bio.stage2.q_generators;
  cert.q_generators.insert(cert.q_generators.end(), bio.stage1.q_generators.begin(),
                           bio.stage1.q_generators.end());
  cert.x = apply_generators(cert.q_generators, x_frame);
  cert.y_a = apply_generators(cert.q_generators, ya_frame);
  cert.y_b = apply_generators(cert.q_generators, yb_frame);
  cert.residual_a = norm(sub(bracket(cert.x, cert.y_a), a));
  cert.residual_b = norm(sub(bracket(cert.x, cert.y_b), b));

  const Vec xc = subspace_coefficients(bio.frame.h, x_frame);
  double lo = 0.0, hi = 0.0;
  for (size_t p = 0; p < bio.frame.roots.size(); ++p) {
    const double v = std::abs(root_value(bio.frame.roots[p], xc));
    if (p == 0)
      lo = hi = v;
    else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  cert.regularity_margin = hi > 0.0 ? lo / hi : 0.0;

  if (cert.residual_a > 1e-8 * std::max(1.0, norm(a)) ||
      cert.residual_b > 1e-8 * std::max(1.0, norm(b)))
    throw CertificateInvalid("final bracket residuals exceed tolerance (A: " +
                             std::to_string(cert.residual_a) + ", B: " +
                             std::to_string(cert.residual_b) + ")");
  if (cert.regularity_margin < 1e-6)
    throw CertificateInvalid("regularity margin " + std::to_string(cert.regularity_margin) +
                             " below 1e-6");
  return cert;
}

VerificationReport verify_certificate(AlgebraPtr g, const Element& a, const Element& b,
                                      const CommutatorCertificate& cert, double tol) {
  VerificationReport rep;
  rep.residual_a = norm(sub(bracket(cert.x, cert.y_a), a));
  rep.residual_b = norm(sub(bracket(cert.x, cert.y_b), b));
  rep.residual_a_ok = rep.residual_a <= tol * std::max(1.0, norm(a));
  rep.residual_b_ok = rep.residual_b <= tol * std::max(1.0, norm(b));

  // Regularity, frame-free: Cen(X) must be abelian of dimension rank(g).
  // An abelian centralizer of the right dimension is a CSA containing X with
  // no vanishing root.
  const Subspace cen = centralizer(g, cert.x, 1e-8);
  rep.centralizer_dim = cen.dim();
  rep.expected_rank = g->spec.rank();
  double ab = 0.0;
  for (int i = 0; i < cen.dim(); ++i)
    for (int j = i + 1; j < cen.dim(); ++j)
      ab = std::max(ab, norm(bracket(cen.basis[i], cen.basis[j])));
  rep.centralizer_abelian_residual = ab;
  rep.regular_ok = rep.centralizer_dim == rep.expected_rank && ab <= 1e-9;
  return rep;
}

}  // namespace liecomm
