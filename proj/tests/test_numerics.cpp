#include <doctest.h>

#include <cmath>

#include "liecomm/cartan.hpp"
#include "liecomm/errors.hpp"
#include "liecomm/numerics.hpp"
#include "liecomm/rng.hpp"

using namespace liecomm;
using linalg::Mat;
using linalg::Vec;

namespace {

Element random_element(AlgebraPtr g, uint64_t seed) {
  Rng rng(seed);
  return make_element(g, rng.normal_vec(g->dim));
}

// Rebuilds the operator from a pairing: S = sum omega (f e^b - e f^b) with
// b the metric dual, plus zero on the kernel.
Mat reconstruct(const LieAlgebra& g, const SkewPairing& p) {
  const int d = g.dim;
  Mat M(d, d);
  for (const auto& plane : p.planes) {
    const Vec ge = linalg::matvec(g.metric, plane.e.coords);
    const Vec gf = linalg::matvec(g.metric, plane.f.coords);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        M(i, j) += plane.omega * (plane.f.coords[i] * ge[j] - plane.e.coords[i] * gf[j]);
  }
  return M;
}

}  // namespace

TEST_CASE("nullspace: zero operator, identity, generic CSA element") {
  AlgebraPtr g = build_algebra(AlgebraSpec::so(4));
  const int d = g->dim;

  SUBCASE("zero operator gives the full space") {
    const Subspace s = nullspace(g, Mat(d, d), 1e-8);
    CHECK(s.dim() == d);
    CHECK(gram_residual(s) <= 1e-10);
  }
  SUBCASE("identity gives the empty basis") {
    const Subspace s = nullspace(g, Mat::identity(d), 1e-8);
    CHECK(s.dim() == 0);
  }
  SUBCASE("ad of a generic element has kernel of dimension rank(so(4)) = 2") {
    const Element h = random_element(g, 5);
    const Mat M = ad_matrix(h);
    const Subspace s = nullspace(g, M, 1e-8);
    CHECK(s.dim() == 2);
    CHECK(gram_residual(s) <= 1e-10);
    // Each basis vector is genuinely annihilated.
    const Vec sv = linalg::singular_values(operator_to_ortho(*g, M));
    for (const auto& v : s.basis)
      CHECK(linalg::norm2(linalg::matvec(M, v.coords)) <= 1e-7 * sv.front());
  }
}

TEST_CASE("orthonormalize: normalization, dependent input, span preservation") {
  AlgebraPtr g = build_algebra(AlgebraSpec::su(3));
  const Element x = random_element(g, 11);

  const Subspace single = orthonormalize({x});
  REQUIRE(single.dim() == 1);
  CHECK(norm(single.basis[0]) == doctest::Approx(1.0).epsilon(1e-12));

  const Subspace dep = orthonormalize({x, scaled(x, 2.0)});
  CHECK(dep.dim() == 1);

  std::vector<Element> vs;
  for (uint64_t s = 0; s < 4; ++s) vs.push_back(random_element(g, 20 + s));
  const Subspace sp = orthonormalize(vs);
  REQUIRE(sp.dim() == 4);
  CHECK(gram_residual(sp) <= 1e-10);
  for (const auto& v : vs) CHECK(subspace_residual(sp, v) <= 1e-10 * norm(v));
}

TEST_CASE("skew_pairing: zero operator, so(3), su(3) dimension counts") {
  SUBCASE("S = 0: everything is kernel") {
    AlgebraPtr g = build_algebra(AlgebraSpec::su(2));
    const SkewPairing p = skew_pairing(Mat(3, 3), full_space(g), 1e-8);
    CHECK(p.zero_space.dim() == 3);
    CHECK(p.planes.empty());
  }
  SUBCASE("so(3): ad(e3) has one plane and kernel span(e3)") {
    AlgebraPtr g = build_algebra(AlgebraSpec::so(3));
    const Element e3 = basis_element(g, 2);
    const SkewPairing p = skew_pairing(ad_matrix(e3), full_space(g), 1e-8);
    REQUIRE(p.zero_space.dim() == 1);
    REQUIRE(p.planes.size() == 1);
    CHECK(p.planes[0].omega > 0.0);
    // Kernel is the line through e3.
    const Subspace line = orthonormalize({e3});
    CHECK(subspace_residual(line, p.zero_space.basis[0]) <= 1e-9);
  }
  SUBCASE("su(3): generic CSA element gives 3 planes + 2-dim kernel") {
    AlgebraPtr g = build_algebra(AlgebraSpec::su(3));
    const Subspace h = find_csa(g, 3);
    REQUIRE(h.dim() == 2);
    Rng rng(4);
    Element h0 = zero_element(g);
    for (int j = 0; j < 2; ++j) linalg::axpy(rng.normal(), h.basis[j].coords, h0.coords);
    const SkewPairing p = skew_pairing(ad_matrix(h0), full_space(g), 1e-8);
    CHECK(p.zero_space.dim() == 2);
    CHECK(p.planes.size() == 3);
  }
}

TEST_CASE("skew_pairing plane relations and reconstruction") {
  // 20+ random CSA elements across small algebras; S e = w f, S f = -w e,
  // planes orthonormal, and the operator reconstructs to 1e-8 relative.
  const char* specs[] = {"su:2", "su:3", "su:4", "so:3", "so:4", "so:5", "so:6"};
  int case_count = 0;
  for (const char* sp : specs) {
    AlgebraPtr g = build_algebra(AlgebraSpec::parse(sp));
    const Subspace h = find_csa(g, 17);
    for (uint64_t s = 0; s < 3; ++s) {
      Rng rng(40 + s);
      Element h0 = zero_element(g);
      for (int j = 0; j < h.dim(); ++j) linalg::axpy(rng.normal(), h.basis[j].coords, h0.coords);
      const Mat S = ad_matrix(h0);
      const SkewPairing p = skew_pairing(S, full_space(g), 1e-8);
      CAPTURE(sp);
      CHECK(p.zero_space.dim() == h.dim());

      std::vector<Element> all = p.zero_space.basis;
      for (const auto& plane : p.planes) {
        const Element se = Element{g, linalg::matvec(S, plane.e.coords)};
        const Element sf = Element{g, linalg::matvec(S, plane.f.coords)};
        CHECK(norm(sub(se, scaled(plane.f, plane.omega))) <= 1e-8 * plane.omega);
        CHECK(norm(add(sf, scaled(plane.e, plane.omega))) <= 1e-8 * plane.omega);
        all.push_back(plane.e);
        all.push_back(plane.f);
      }
      const Subspace whole{g, all};
      CHECK(gram_residual(whole) <= 1e-9);

      const Mat R = reconstruct(*g, p);
      double diff = 0.0;
      for (size_t i = 0; i < R.a.size(); ++i) diff = std::max(diff, std::abs(R.a[i] - S.a[i]));
      CHECK(diff <= 1e-8 * linalg::frob_norm(S));
      ++case_count;
    }
  }
  CHECK(case_count >= 20);
}

TEST_CASE("skew_pairing resolves exactly degenerate frequencies") {
  // In su(3), ad of a coroot-aligned element has a repeated frequency pair;
  // the joint eigenspace must still split into valid S-invariant planes.
  AlgebraPtr g = build_algebra(AlgebraSpec::su(3));
  const Subspace h = find_csa(g, 23);
  const CartanFrame frame = root_decomposition(g, h, 24);
  const Element u = coroot_direction(frame, 0);
  const Mat S = ad_matrix(u);
  const SkewPairing p = skew_pairing(S, full_space(g), 1e-8);
  CHECK(p.zero_space.dim() == 2);
  REQUIRE(p.planes.size() == 3);
  for (const auto& plane : p.planes) {
    const Element se = Element{g, linalg::matvec(S, plane.e.coords)};
    CHECK(norm(sub(se, scaled(plane.f, plane.omega))) <= 1e-8 * plane.omega);
  }
  // Two of the three frequencies coincide for a coroot direction.
  const double w0 = p.planes[0].omega, w1 = p.planes[1].omega, w2 = p.planes[2].omega;
  CHECK(std::abs(w0 - w1) <= 1e-9 * w2);
}

TEST_CASE("skew_pairing rejects non-skew operators") {
  AlgebraPtr g = build_algebra(AlgebraSpec::su(2));
  CHECK_THROWS_AS(skew_pairing(Mat::identity(3), full_space(g), 1e-8), NotSkewAdjoint);
}

TEST_CASE("metric transforms round-trip") {
  AlgebraPtr g = build_algebra(AlgebraSpec::so(5));
  Rng rng(31);
  const Vec x = rng.normal_vec(g->dim);
  const Vec t = to_ortho(*g, x);
  const Vec back = from_ortho(*g, t);
  for (int i = 0; i < g->dim; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-10));
  // Euclidean norm in tilde coordinates equals the metric norm.
  const Element ex{g, x};
  CHECK(linalg::norm2(t) == doctest::Approx(norm(ex)).epsilon(1e-12));
}
