// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criteria run at their stated tolerances against the nine desk-scale
// algebras; every tolerance is pinned here, not configurable.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "liecomm/rng.hpp"
#include "liecomm/solver.hpp"

using namespace liecomm;
using linalg::Mat;
using linalg::Vec;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

const char* kSpecs[] = {"su:2", "su:3", "su:4",         "so:3", "so:4",
                        "so:5", "so:6", "so:7",         "sum:su:2+so:5"};
constexpr int kNumSpecs = 9;
constexpr int kPairs = 50;

int g_failures = 0;

void report(int criterion, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion, name,
              detail.c_str());
  if (!ok) ++g_failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Element random_element(AlgebraPtr g, uint64_t seed) {
  Rng rng(seed);
  return make_element(g, rng.normal_vec(g->dim));
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

struct Suite {
  std::vector<AlgebraPtr> algebras;
  std::vector<CartanFrame> frames;
};

// --- criterion 1: algebra validity --------------------------------------

void criterion1(const Suite& s) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_jac = 0.0, worst_inv = 0.0, worst_eig = -1e300;
  for (const auto& g : s.algebras) {
    const ValidationReport rep = validate_algebra(*g);
    worst_jac = std::max(worst_jac, rep.jacobi_residual);
    worst_inv = std::max(worst_inv, rep.invariance_residual);
    worst_eig = std::max(worst_eig, rep.killing_max_eigenvalue);
    ok = ok && rep.jacobi_residual <= 1e-10 && rep.invariance_residual <= 1e-9 &&
         rep.killing_max_eigenvalue < 0.0;
  }
  const double dt = elapsed_s(t0);
  ok = ok && dt < 5.0;
  report(1, "algebra validity", ok,
         fmt("max jacobi %.2e, max invariance %.2e, runtime %.2fs", worst_jac, worst_inv, dt));
}

// --- criterion 2: decomposition identity + root action ------------------

void criterion2(const Suite& s) {
  bool ok = true;
  double worst = 0.0;
  for (size_t i = 0; i < s.algebras.size(); ++i) {
    const AlgebraPtr& g = s.algebras[i];
    const CartanFrame& frame = s.frames[i];
    ok = ok && g->dim == frame.rank() + 2 * static_cast<int>(frame.roots.size());
    for (const auto& r : frame.roots)
      for (int j = 0; j < frame.rank(); ++j) {
        const double w = kTwoPi * r.alpha[j];
        worst = std::max(worst, norm(sub(bracket(frame.h.basis[j], r.e), scaled(r.f, w))));
        worst = std::max(worst, norm(add(bracket(frame.h.basis[j], r.f), scaled(r.e, w))));
      }
  }
  ok = ok && worst <= 1e-8;
  report(2, "decomposition identity d = rank + 2|roots|, root action", ok,
         fmt("worst 2x2 block residual %.2e", worst));
}

// --- criterion 3: Lemma so3 frames ---------------------------------------

void criterion3(const Suite& s) {
  bool ok = true;
  double worst_bracket = 0.0, worst_y = 0.0;
  int frames_built = 0;
  for (size_t i = 0; i < s.algebras.size(); ++i) {
    const CartanFrame& frame = s.frames[i];
    for (size_t p = 0; p < frame.roots.size(); ++p) {
      const So3Frame f = so3_frame(frame, static_cast<int>(p), frame.roots[p].e);
      worst_bracket = std::max(worst_bracket, norm(sub(bracket(f.U, f.V), f.W)));
      worst_bracket = std::max(worst_bracket, norm(sub(bracket(f.V, f.W), f.U)));
      worst_bracket = std::max(worst_bracket, norm(sub(bracket(f.W, f.U), f.V)));
      const Element y = bracket(frame.roots[p].e, frame.roots[p].f);
      const Vec yc = subspace_coefficients(frame.h, y);
      worst_y = std::max(worst_y,
                         std::abs(killing_form(y, y) + kTwoPi * root_value(frame.roots[p], yc)));
      ++frames_built;
    }
  }
  ok = worst_bracket <= 1e-8 && worst_y <= 1e-8;
  report(3, "Lemma so3 frames for every root", ok,
         fmt("worst bracket residual %.2e, worst <Y,Y>+2pi*gamma(Y) %.2e over %.0f frames",
             worst_bracket, worst_y, static_cast<double>(frames_built)));
}

// --- criteria 4 + 5: Lemma 2 descent and Corollary 1 ---------------------

void criteria45(const Suite& s) {
  bool ok4 = true, ok5 = true;
  double worst_identity = 0.0;  // residual relative to its allowance (<= 1 passes)
  double worst_drift = 0.0;     // relative to 1e-7 * scale
  double worst_proj_a = 0.0, worst_proj_b = 0.0;  // relative to 1e-8 * scale
  long steps_total = 0;

  for (size_t i = 0; i < s.algebras.size(); ++i) {
    const AlgebraPtr& g = s.algebras[i];
    for (int k = 0; k < kPairs; ++k) {
      const uint64_t base = 1000 * (i + 1) + 10 * static_cast<uint64_t>(k);
      const Element a = random_element(g, base + 1);
      const Element b = random_element(g, base + 2);
      SweepConfig cfg;
      cfg.tol_B = 0.9e-8;  // engineering margin under the 1e-8 criterion
      BiorthogonalResult r;
      try {
        r = biorthogonal_csa(g, a, b, cfg, base);
      } catch (const Error&) {
        ok4 = false;
        continue;
      }
      const double sa = std::max(1.0, norm(a));
      const double sb = std::max(1.0, norm(b));
      ok4 = ok4 && r.stage1.converged && r.stage2.converged;

      auto check_stage = [&](const JacobiResult& st, double scale) {
        for (const auto& step : st.trace) {
          ++steps_total;
          if (!(step.b0_after < step.b0_before)) ok4 = false;
          const double resid =
              std::abs(step.b0_after * step.b0_after + step.decrease -
                       step.b0_before * step.b0_before);
          const double allow =
              1e-8 * step.b0_before * step.b0_before + 1e-12 * step.b0_before * scale;
          worst_identity = std::max(worst_identity, resid / allow);
          if (resid > allow) ok4 = false;
          if (static_cast<int>(st.trace.size()) > 500) ok4 = false;
        }
      };
      check_stage(r.stage1, sa);
      check_stage(r.stage2, sb);

      worst_drift = std::max(worst_drift, r.stage2.max_a_drift / (1e-7 * sa));
      if (r.stage2.max_a_drift > 1e-7 * sa) ok4 = false;

      const double pa = norm(project(r.frame, r.stage2.a_out).h_part);
      const double pb = norm(project(r.frame, r.stage2.b_out).h_part);
      worst_proj_a = std::max(worst_proj_a, pa / (1e-8 * sa));
      worst_proj_b = std::max(worst_proj_b, pb / (1e-8 * sb));
      if (pa > 1e-8 * sa || pb > 1e-8 * sb) ok5 = false;
    }
  }
  report(4, "Lemma 2 descent over 50 pairs x 9 algebras", ok4,
         fmt("worst identity residual %.3f of allowance, worst A-drift %.3f of budget, "
             "%.0f steps",
             worst_identity, worst_drift, static_cast<double>(steps_total)));
  report(5, "Corollary 1 biorthogonal projections", ok5,
         fmt("worst final projection: A %.3f, B %.3f of the 1e-8 budget", worst_proj_a,
             worst_proj_b));
}

// --- criterion 6: Theorem 1 end to end -----------------------------------

void criterion6(const Suite& s) {
  bool ok = true;
  double worst_resid = 0.0, worst_margin = 1e300;
  double su4_worst_t = 0.0, so7_worst_t = 0.0;
  for (size_t i = 0; i < s.algebras.size(); ++i) {
    const AlgebraPtr& g = s.algebras[i];
    const std::string spec = g->spec.to_string();
    for (int k = 0; k < kPairs; ++k) {
      const uint64_t base = 20000 * (i + 1) + 10 * static_cast<uint64_t>(k);
      const Element a = random_element(g, base + 1);
      const Element b = random_element(g, base + 2);
      SolveConfig cfg;
      cfg.rng_seed = base;
      const auto t0 = std::chrono::steady_clock::now();
      CommutatorCertificate cert;
      try {
        cert = solve_commutator(g, a, b, cfg);
      } catch (const Error&) {
        ok = false;
        continue;
      }
      const double dt = elapsed_s(t0);
      if (spec == "su:4") su4_worst_t = std::max(su4_worst_t, dt);
      if (spec == "so:7") so7_worst_t = std::max(so7_worst_t, dt);

      const double sa = std::max(1.0, norm(a));
      const double sb = std::max(1.0, norm(b));
      const VerificationReport rep = verify_certificate(g, a, b, cert, 1e-8);
      if (!rep.passed()) ok = false;
      worst_resid = std::max({worst_resid, rep.residual_a / sa, rep.residual_b / sb});
      worst_margin = std::min(worst_margin, cert.regularity_margin);
      if (cert.regularity_margin < 1e-6) ok = false;
    }
  }
  ok = ok && su4_worst_t < 1.0 && so7_worst_t < 5.0;
  report(6, "Theorem 1 end-to-end certificates", ok,
         fmt("worst relative residual %.2e, min margin %.2e, slowest su(4)/so(7) solve "
             "%.3fs",
             worst_resid, worst_margin, std::max(su4_worst_t, so7_worst_t)));
}

// --- criterion 7: Lemma 1 oracle equivalence ------------------------------

Vec brute_force_preimage(const Mat& M, const Vec& t) {
  const Mat T = linalg::matmul(linalg::transpose(M), M);
  const linalg::SymEig eig = linalg::sym_eig_jacobi(T);
  const Vec rhs = linalg::matvec(linalg::transpose(M), t);
  Vec y(t.size(), 0.0);
  const double cut = 1e-12 * eig.values.back();
  for (size_t j = 0; j < t.size(); ++j) {
    if (eig.values[j] <= cut) continue;
    const Vec v = eig.vectors.col(static_cast<int>(j));
    linalg::axpy(linalg::dot(v, rhs) / eig.values[j], v, y);
  }
  return y;
}

void criterion7(const Suite& s) {
  bool ok = true;
  double worst_inner = 0.0;
  for (size_t i = 0; i < s.algebras.size(); ++i) {
    const AlgebraPtr& g = s.algebras[i];
    for (int k = 0; k < 20; ++k) {
      const Element a = random_element(g, 40000 + 100 * i + static_cast<uint64_t>(k));
      const Subspace cen = centralizer(g, a, 1e-8);
      const Mat M = ad_matrix(a);
      std::vector<Element> image;
      for (int j = 0; j < g->dim; ++j)
        image.push_back(Element{g, linalg::matvec(M, basis_element(g, j).coords)});
      const Subspace img = orthonormalize(image);
      if (cen.dim() + img.dim() != g->dim) ok = false;
      for (const auto& u : cen.basis)
        for (const auto& w : img.basis)
          worst_inner = std::max(worst_inner, std::abs(inner(u, w)));
    }
  }
  ok = ok && worst_inner <= 1e-8;

  // Brute-force least-squares agreement on so(3) for regular A.
  AlgebraPtr g3 = build_algebra(AlgebraSpec::so(3));
  double worst_bf = 0.0;
  for (uint64_t k = 0; k < 20; ++k) {
    Element a = random_element(g3, 50000 + k);
    a = scaled(a, 1.0 / norm(a));
    const Subspace h = orthonormalize({a});
    const CartanFrame frame = root_decomposition(g3, h, 51000 + k);
    Element t = random_element(g3, 52000 + k);
    t = sub(t, project(frame, t).h_part);
    const Element y = invert_ad(frame, a, t);
    const Vec y_bf = brute_force_preimage(ad_matrix(a), t.coords);
    worst_bf = std::max(worst_bf,
                        norm(Element{g3, linalg::sub(y.coords, y_bf)}) / std::max(1.0, norm(y)));
  }
  ok = ok && worst_bf <= 1e-8;
  report(7, "Lemma 1 orthogonal decomposition + so(3) least-squares oracle", ok,
         fmt("worst cross inner product %.2e, worst brute-force deviation %.2e", worst_inner,
             worst_bf));
}

// --- criterion 8: Killing constants ---------------------------------------

void criterion8(const Suite& s) {
  bool ok = true;
  double worst = 0.0;
  for (const auto& g : s.algebras) {
    for (const auto& fit : killing_trace_fit(*g)) {
      const double rel = std::abs(fit.fitted - fit.expected) / fit.expected;
      worst = std::max(worst, rel);
      if (rel > 1e-8) ok = false;
    }
  }
  report(8, "Killing constants 2n (su) and n-2 (so)", ok,
         fmt("worst relative deviation %.2e", worst));
}

// --- criterion 9: CLI determinism and exit codes ---------------------------

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LIECOMM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : (WIFEXITED(rc) ? WEXITSTATUS(rc) : -1);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion9() {
  namespace fs = std::filesystem;
  const std::string root = "/tmp/liecomm_acceptance_cli";
  fs::remove_all(root);
  fs::create_directories(root + "/r1");
  fs::create_directories(root + "/r2");
  bool ok = true;
  std::string why = "all checks passed";
  auto fail = [&](const std::string& msg) {
    ok = false;
    why = msg;
  };

  for (const char* dir : {"/r1", "/r2"}) {
    if (run_cli("generate --spec su:2 --seed 42 --out " + root + dir) != 0)
      fail("generate exit code");
    if (run_cli("decompose --spec su:2 --seed 42 --out " + root + dir) != 0)
      fail("decompose exit code");
    if (run_cli("solve --spec su:2 --seed 42 --out " + root + dir + " " + root + dir +
                "/A.json " + root + dir + "/B.json") != 0)
      fail("solve exit code");
    if (run_cli("verify " + root + dir + "/certificate.json " + root + dir + "/A.json " + root +
                dir + "/B.json") != 0)
      fail("verify exit code");
  }
  for (const char* f : {"/meta.json", "/A.json", "/B.json", "/frame.json",
                        "/certificate.json", "/trace.jsonl"}) {
    if (slurp(root + "/r1" + f) != slurp(root + "/r2" + f) || slurp(root + "/r1" + f).empty())
      fail(std::string("rerun not byte-identical: ") + f);
  }
  if (run_cli("generate --spec su:1 --seed 0 --out " + root + "/bad") != 2)
    fail("bad spec should exit 2");
  if (run_cli("solve --spec su:3 --seed 1 --out " + root + "/r1 " + root + "/r1/A.json " + root +
              "/r1/B.json") != 3)
    fail("dimension mismatch should exit 3");
  report(9, "CLI determinism and exit-code contract", ok, why);
}

}  // namespace

int main() {
  Suite s;
  for (const char* sp : kSpecs) {
    s.algebras.push_back(build_algebra(AlgebraSpec::parse(sp)));
    s.frames.push_back(root_decomposition(s.algebras.back(), find_csa(s.algebras.back(), 97), 98));
  }

  criterion1(s);
  criterion2(s);
  criterion3(s);
  criteria45(s);
  criterion6(s);
  criterion7(s);
  criterion8(s);
  criterion9();

  if (g_failures > 0) {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("acceptance: all criteria passed\n");
  return 0;
}
