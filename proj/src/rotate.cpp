#include "liecomm/rotate.hpp"

#include <algorithm>
#include <cmath>

#include "liecomm/rng.hpp"

namespace liecomm {

using linalg::Vec;

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

So3Frame so3_frame(const CartanFrame& frame, int root_index, const Element& x_dir) {
  const Root& root = frame.roots[root_index];
  const double a = inner(root.e, x_dir);
  const double b = inner(root.f, x_dir);

  Element in_plane = scaled(root.e, a);
  in_plane = add(in_plane, scaled(root.f, b));
  if (norm(sub(x_dir, in_plane)) > 1e-9 * std::max(1.0, norm(x_dir)))
    throw DegenerateRoot("x_dir is not inside the root plane");
  if (std::abs(norm(x_dir) - 1.0) > 1e-9)
    throw DegenerateRoot("x_dir must have unit norm");

  // i*X: quarter turn inside the plane, (a,b) -> (-b,a).
  Element ix = scaled(root.e, -b);
  ix = add(ix, scaled(root.f, a));

  const Element y = bracket(x_dir, ix);
  const Vec y_h = subspace_coefficients(frame.h, y);
  const double gamma_y = root_value(root, y_h);
  const double kf = killing_form(y, y);
  if (std::abs(kf + kTwoPi * gamma_y) > 1e-8 * std::max(1.0, std::abs(kf)))
    throw DegenerateRoot("<Y,Y> = -2*pi*gamma(Y) failed; frame is inconsistent");
  if (gamma_y <= 1e-12) throw DegenerateRoot("gamma(Y) is not positive");

  So3Frame s;
  s.root_index = root_index;
  s.rho = 1.0 / std::sqrt(kTwoPi * gamma_y);
  s.U = scaled(x_dir, s.rho);
  s.V = scaled(ix, s.rho);
  s.W = scaled(y, s.rho * s.rho);
  return s;
}

std::array<double, 3> so3_coords(const So3Frame& s, const Element& x) {
  const double r2 = s.rho * s.rho;
  return {inner(s.U, x) / r2, inner(s.V, x) / r2, inner(s.W, x) / r2};
}

Element so3_element(const So3Frame& s, const std::array<double, 3>& c) {
  Element out = scaled(s.U, c[0]);
  out = add(out, scaled(s.V, c[1]));
  out = add(out, scaled(s.W, c[2]));
  return out;
}

Element plan_rotation(const So3Frame& s, const Element& h_comp, const Element& a_comp,
                      const Element& b_comp) {
  const auto hc = so3_coords(s, h_comp);
  const auto ac = so3_coords(s, a_comp);
  const auto bc = so3_coords(s, b_comp);

  const double h = hc[2];
  const double scale_ref = std::max({1.0, std::abs(ac[0]) + std::abs(ac[1]),
                                     std::abs(bc[0]) + std::abs(bc[1])});
  if (std::abs(h) <= 1e-14 * scale_ref)
    throw ZeroH("coroot component below tolerance; nothing to rotate");

  // In-plane rotation axis: along A's plane component when present so the
  // rotation fixes it, else along B's, else the U axis.
  const double an = std::hypot(ac[0], ac[1]);
  const double bn = std::hypot(bc[0], bc[1]);
  double n0, n1;
  if (an > 1e-12 * scale_ref) {
    n0 = ac[0] / an;
    n1 = ac[1] / an;
  } else if (bn > 1e-12 * scale_ref) {
    n0 = bc[0] / bn;
    n1 = bc[1] / bn;
  } else {
    n0 = 1.0;
    n1 = 0.0;
  }
  // q: component of b_comp along i*axis = (-n1, n0).
  const double q = -n1 * bc[0] + n0 * bc[1];
  const double theta = std::atan2(h, q);
  return so3_element(s, {theta * n0, theta * n1, 0.0});
}

Element apply_rotation(const Element& z, const Element& x) { return exp_ad_apply(z, x); }

Element apply_generators(const std::vector<Element>& gens, Element x) {
  for (const auto& z : gens) x = exp_ad_apply(z, x);
  return x;
}

Element apply_generators_inverse(const std::vector<Element>& gens, Element x) {
  for (auto it = gens.rbegin(); it != gens.rend(); ++it)
    x = exp_ad_apply(scaled(*it, -1.0), x);
  return x;
}

namespace {

int select_root(const CartanFrame& frame, const Vec& b0_coeffs, double b0, RootPolicy policy,
                Rng& rng) {
  const size_t m = frame.roots.size();
  std::vector<double> coroot_comp(m);
  double best = 0.0;
  int best_idx = -1;
  for (size_t p = 0; p < m; ++p) {
    Vec u = frame.roots[p].alpha;
    const double un = linalg::norm2(u);
    coroot_comp[p] = std::abs(linalg::dot(u, b0_coeffs)) / un;
    if (coroot_comp[p] > best) {
      best = coroot_comp[p];
      best_idx = static_cast<int>(p);
    }
  }
  if (best_idx < 0) return -1;
  if (policy == RootPolicy::max_decrease) return best_idx;

  // Eligibility cutoff from the frame's stall constant keeps every policy
  // geometric; the maximizer always qualifies.
  const double cutoff = frame.stall_constant * b0;
  std::vector<int> eligible;
  for (size_t p = 0; p < m; ++p)
    if (coroot_comp[p] >= cutoff && coroot_comp[p] > 0.0)
      eligible.push_back(static_cast<int>(p));
  if (eligible.empty()) return best_idx;
  if (policy == RootPolicy::first_nonzero) return eligible.front();
  return eligible[static_cast<size_t>(rng.integer(eligible.size()))];
}

}  // namespace

JacobiResult jacobi_sweep(const Element& A, const Element& B, const CartanFrame& frame,
                          const SweepConfig& cfg) {
  const double a_scale = std::max(1.0, norm(A));
  const double b_scale = std::max(1.0, norm(B));

  JacobiResult res;
  res.a_out = A;
  res.b_out = B;

  {
    const Components ca = project(frame, A);
    if (norm(ca.h_part) > cfg.tol_A * a_scale)
      throw PreconditionViolated("A is not orthogonal to the CSA at entry");
  }

  Rng rng(cfg.rng_seed);
  std::vector<Element> step_gens;

  for (int iter = 0; iter <= cfg.max_iter; ++iter) {
    const Vec b0_coeffs = subspace_coefficients(frame.h, res.b_out);
    const double b0 = linalg::norm2(b0_coeffs);
    if (b0 <= cfg.tol_B * b_scale) {
      res.converged = true;
      break;
    }
    if (iter == cfg.max_iter) break;

    const int gi = select_root(frame, b0_coeffs, b0, cfg.policy, rng);
    if (gi < 0)
      throw PreconditionViolated("no root with nonzero value on B0 (frame is degenerate)");
    const Root& root = frame.roots[gi];

    // Split B0 = B00 + H_gamma along the coroot direction.
    const Element u = coroot_direction(frame, gi);
    const double h_val = inner(u, res.b_out);
    const Element h_comp = scaled(u, h_val);

    // Plane components of A' and B'.
    const double a_e = inner(root.e, res.a_out), a_f = inner(root.f, res.a_out);
    const double b_e = inner(root.e, res.b_out), b_f = inner(root.f, res.b_out);
    Element a_comp = add(scaled(root.e, a_e), scaled(root.f, a_f));
    Element b_comp = add(scaled(root.e, b_e), scaled(root.f, b_f));

    // U along A's plane component when it is usable, else the stored e.
    const double a_pn = std::hypot(a_e, a_f);
    Element x_dir = a_pn > 1e-9 * a_scale ? scaled(a_comp, 1.0 / a_pn) : root.e;
    const So3Frame s = so3_frame(frame, gi, x_dir);

    const Element z = plan_rotation(s, h_comp, a_comp, b_comp);
    const Element z_neg = scaled(z, -1.0);
    res.a_out = exp_ad_apply(z_neg, res.a_out);
    res.b_out = exp_ad_apply(z_neg, res.b_out);

    JacobiStep step;
    step.root_index = gi;
    step.b0_before = b0;
    step.b0_after = linalg::norm2(subspace_coefficients(frame.h, res.b_out));
    step.decrease = h_val * h_val;
    step.z = z;
    res.trace.push_back(step);
    step_gens.push_back(z);

    const double a_drift = norm(project(frame, res.a_out).h_part);
    res.max_a_drift = std::max(res.max_a_drift, a_drift);
    if (a_drift > cfg.tol_A * a_scale)
      throw PreconditionViolated("A lost orthogonality to the CSA during the sweep");
  }

  res.q_generators.assign(step_gens.rbegin(), step_gens.rend());
  if (!res.converged) {
    throw MaxIterationsExceeded(
        "descent did not converge within " + std::to_string(cfg.max_iter) + " iterations",
        std::move(res));
  }
  return res;
}

BiorthogonalResult biorthogonal_csa(AlgebraPtr g, const Element& A, const Element& B,
                                    const SweepConfig& cfg, uint64_t rng_seed) {
  BiorthogonalResult out;
  const Subspace h = find_csa(g, rng_seed);
  out.frame = root_decomposition(g, h, rng_seed + 1);

  out.stage1 = jacobi_sweep(zero_element(g), A, out.frame, cfg);
  const Element a1 = out.stage1.b_out;
  const Element b1 = apply_generators_inverse(out.stage1.q_generators, B);

  out.stage2 = jacobi_sweep(a1, b1, out.frame, cfg);
  return out;
}

}  // namespace liecomm
