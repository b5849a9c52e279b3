#include "liecomm/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "liecomm/errors.hpp"

namespace liecomm {

using linalg::Mat;
using linalg::Vec;

Vec to_ortho(const LieAlgebra& g, const Vec& coords) {
  const Mat& L = g.metric_chol;
  const int d = g.dim;
  Vec t(d, 0.0);
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int k = i; k < d; ++k) s += L(k, i) * coords[k];
    t[i] = s;
  }
  return t;
}

Vec from_ortho(const LieAlgebra& g, const Vec& tilde) {
  return linalg::solve_upper_t(g.metric_chol, tilde);
}

Mat operator_to_ortho(const LieAlgebra& g, const Mat& M) {
  const Mat& L = g.metric_chol;
  const int d = g.dim;
  // Y = M L^{-T}: row j of Y solves L y = (row j of M).
  Mat Y(d, d);
  for (int j = 0; j < d; ++j) {
    Vec row(d);
    for (int k = 0; k < d; ++k) row[k] = M(j, k);
    row = linalg::solve_lower(L, std::move(row));
    for (int k = 0; k < d; ++k) Y(j, k) = row[k];
  }
  // Mt = Lᵀ Y.
  Mat Mt(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = i; k < d; ++k) s += L(k, i) * Y(k, j);
      Mt(i, j) = s;
    }
  return Mt;
}

Subspace full_space(AlgebraPtr g) {
  Subspace s;
  s.algebra = g;
  const int d = g->dim;
  for (int i = 0; i < d; ++i) {
    Vec tilde(d, 0.0);
    tilde[i] = 1.0;
    s.basis.push_back(Element{g, from_ortho(*g, tilde)});
  }
  return s;
}

Subspace nullspace(AlgebraPtr g, const Mat& M, double tol) {
  if (tol <= 0.0) throw Error(ErrorCode::generic, "nullspace: tol must be positive");
  const int d = g->dim;
  const Mat Mt = operator_to_ortho(*g, M);
  const Mat T = linalg::matmul(linalg::transpose(Mt), Mt);
  const linalg::SymEig eig = linalg::sym_eig_jacobi(T);
  // Eigenvalues of the Gram matrix resolve small singular values only to
  // sqrt(eps); classify kernel membership by the direct residual instead.
  const double sigma_max = std::sqrt(std::max(eig.values.back(), 0.0));
  Subspace s;
  s.algebra = g;
  for (int j = 0; j < d; ++j) {
    const Vec v = eig.vectors.col(j);
    if (linalg::norm2(linalg::matvec(Mt, v)) <= tol * sigma_max)
      s.basis.push_back(Element{g, from_ortho(*g, v)});
  }
  return s;
}

Subspace orthonormalize(const std::vector<Element>& vectors) {
  Subspace s;
  if (vectors.empty()) return s;
  s.algebra = vectors.front().algebra;
  double scale = 0.0;
  for (const auto& v : vectors) scale = std::max(scale, norm(v));
  const double drop = 1e-12 * scale;
  for (const auto& v : vectors) {
    Element w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : s.basis) {
        const double c = inner(b, w);
        w = sub(w, scaled(b, c));
      }
    }
    const double r = norm(w);
    if (r > drop && r > 0.0) s.basis.push_back(scaled(w, 1.0 / r));
  }
  return s;
}

Vec subspace_coefficients(const Subspace& s, const Element& x) {
  Vec c(s.basis.size());
  for (size_t a = 0; a < s.basis.size(); ++a) c[a] = inner(s.basis[a], x);
  return c;
}

Element subspace_project(const Subspace& s, const Element& x) {
  Element p = zero_element(x.algebra);
  for (const auto& b : s.basis) {
    const double c = inner(b, x);
    linalg::axpy(c, b.coords, p.coords);
  }
  return p;
}

double subspace_residual(const Subspace& s, const Element& x) {
  return norm(sub(x, subspace_project(s, x)));
}

double gram_residual(const Subspace& s) {
  double r = 0.0;
  for (size_t a = 0; a < s.basis.size(); ++a)
    for (size_t b = 0; b < s.basis.size(); ++b) {
      const double g = inner(s.basis[a], s.basis[b]);
      r = std::max(r, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  return r;
}

namespace {

// Extracts S-invariant 2-planes from one near-equal-frequency cluster given
// an orthonormal set of eigenvectors of SᵀS (coordinates in `space`).
// Returns pairs (e, f) in subspace coordinates.
std::vector<std::pair<Vec, Vec>> split_cluster(const Mat& S_skew, std::vector<Vec> cluster) {
  std::vector<std::pair<Vec, Vec>> planes;
  while (!cluster.empty()) {
    Vec e = cluster.front();
    const double en = linalg::norm2(e);
    if (en <= 0.0) throw PairingFailure("degenerate cluster vector");
    linalg::scale(e, 1.0 / en);
    Vec f = linalg::matvec(S_skew, e);
    const double omega = linalg::norm2(f);
    if (omega <= 0.0)
      throw PairingFailure("zero frequency inside a nonzero cluster (tol too small)");
    linalg::scale(f, 1.0 / omega);
    // S f should be -omega e; a large residual means the cluster mixes
    // genuinely different frequencies.
    Vec back = linalg::matvec(S_skew, f);
    linalg::axpy(omega, e, back);
    if (linalg::norm2(back) > 1e-6 * omega)
      throw PairingFailure("cluster is not S-invariant at the requested tolerance");

    const size_t expected = cluster.size() - 2;
    std::vector<Vec> rest;
    for (size_t i = 1; i < cluster.size(); ++i) {
      Vec v = cluster[i];
      for (int pass = 0; pass < 2; ++pass) {
        linalg::axpy(-linalg::dot(v, e), e, v);
        linalg::axpy(-linalg::dot(v, f), f, v);
        for (const auto& r : rest) linalg::axpy(-linalg::dot(v, r), r, v);
      }
      const double vn = linalg::norm2(v);
      if (vn > 0.35) {
        linalg::scale(v, 1.0 / vn);
        rest.push_back(std::move(v));
      }
    }
    if (rest.size() != expected)
      throw PairingFailure("odd-dimensional or inconsistent frequency eigenspace");
    planes.emplace_back(std::move(e), std::move(f));
    cluster = std::move(rest);
  }
  return planes;
}

}  // namespace

SkewPairing skew_pairing(const Mat& S, const Subspace& space, double tol) {
  const int k = space.dim();
  AlgebraPtr g = space.algebra;

  // Operator restricted to the subspace, in its orthonormal coordinates.
  Mat Ssub(k, k);
  std::vector<Vec> images(k);
  for (int b = 0; b < k; ++b) images[b] = linalg::matvec(S, space.basis[b].coords);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      Ssub(a, b) = inner(space.basis[a], Element{g, images[b]});

  double skew_resid = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) skew_resid += std::pow(Ssub(a, b) + Ssub(b, a), 2);
  skew_resid = std::sqrt(skew_resid);
  if (skew_resid > tol * (1.0 + linalg::frob_norm(Ssub)))
    throw NotSkewAdjoint("operator is not skew-adjoint in the metric (residual " +
                         std::to_string(skew_resid) + ")");
  Mat Sk(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) Sk(a, b) = 0.5 * (Ssub(a, b) - Ssub(b, a));

  const Mat T = linalg::matmul(linalg::transpose(Sk), Sk);
  const linalg::SymEig eig = linalg::sym_eig_jacobi(T);
  // Direct residual frequencies: the Gram eigenvalues blur anything below
  // sqrt(eps) * omega_max, the matvec does not.
  std::vector<std::pair<double, int>> freq(k);
  for (int i = 0; i < k; ++i)
    freq[i] = {linalg::norm2(linalg::matvec(Sk, eig.vectors.col(i))), i};
  std::stable_sort(freq.begin(), freq.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  const double omega_max = k > 0 ? freq.back().first : 0.0;

  auto to_element = [&](const Vec& sub_coords) {
    Element x = zero_element(g);
    for (int a = 0; a < k; ++a) linalg::axpy(sub_coords[a], space.basis[a].coords, x.coords);
    return x;
  };

  SkewPairing out;
  out.zero_space.algebra = g;

  int i = 0;
  for (; i < k && freq[i].first <= tol * omega_max; ++i)
    out.zero_space.basis.push_back(to_element(eig.vectors.col(freq[i].second)));

  // Group the remaining eigenvectors into near-equal-frequency clusters.
  while (i < k) {
    int j = i + 1;
    while (j < k && freq[j].first - freq[j - 1].first <= tol * omega_max) ++j;
    std::vector<Vec> cluster;
    for (int t = i; t < j; ++t) cluster.push_back(eig.vectors.col(freq[t].second));
    if (cluster.size() % 2 != 0)
      throw PairingFailure("odd-dimensional nonzero-frequency eigenspace (tol too small)");
    for (auto& [e, f] : split_cluster(Sk, std::move(cluster))) {
      SkewPlane plane;
      plane.omega = linalg::norm2(linalg::matvec(Sk, e));
      plane.e = to_element(e);
      plane.f = to_element(f);
      out.planes.push_back(std::move(plane));
    }
    i = j;
  }
  std::stable_sort(out.planes.begin(), out.planes.end(),
                   [](const SkewPlane& a, const SkewPlane& b) { return a.omega < b.omega; });
  return out;
}

Vec expm_apply(const Mat& M, const Vec& v) { return linalg::expm_apply(M, v); }

}  // namespace liecomm
