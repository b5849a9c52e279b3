#include "liecomm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "liecomm/errors.hpp"

namespace liecomm::linalg {

namespace {
// Below these sizes the OpenMP runtime overhead exceeds the work; the
// kernels branch to plain loops so small problems never touch the runtime.
constexpr int kParallelDim = 96;
constexpr int kParallelEigDim = 128;
}  // namespace

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::col(int j) const {
  Vec v(rows);
  for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

void Mat::set_col(int j, const Vec& v) {
  for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(const Vec& x) { return std::sqrt(dot(x, x)); }

void axpy(double a, const Vec& x, Vec& y) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

void scale(Vec& x, double a) {
  for (double& v : x) v *= a;
}

Vec add(const Vec& x, const Vec& y) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
  return z;
}

Vec sub(const Vec& x, const Vec& y) {
  Vec z(x.size());
  for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] - y[i];
  return z;
}

namespace {

inline void matmul_row(const Mat& A, const Mat& B, Mat& C, int i) {
  const int m = B.cols, k = A.cols;
  double* ci = &C.a[static_cast<size_t>(i) * m];
  for (int p = 0; p < k; ++p) {
    const double aip = A(i, p);
    if (aip == 0.0) continue;
    const double* bp = &B.a[static_cast<size_t>(p) * m];
    for (int j = 0; j < m; ++j) ci[j] += aip * bp[j];
  }
}

inline double matvec_row(const Mat& A, const Vec& x, int i) {
  const double* ai = &A.a[static_cast<size_t>(i) * A.cols];
  double s = 0.0;
  for (int j = 0; j < A.cols; ++j) s += ai[j] * x[j];
  return s;
}

}  // namespace

Mat matmul(const Mat& A, const Mat& B) {
  if (A.cols != B.rows) throw Error(ErrorCode::generic, "matmul: shape mismatch");
  Mat C(A.rows, B.cols);
  const int n = A.rows;
  if (n < kParallelDim) {
    for (int i = 0; i < n; ++i) matmul_row(A, B, C, i);
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) matmul_row(A, B, C, i);
  }
  return C;
}

Vec matvec(const Mat& A, const Vec& x) {
  if (A.cols != static_cast<int>(x.size()))
    throw Error(ErrorCode::generic, "matvec: shape mismatch");
  Vec y(A.rows, 0.0);
  if (A.rows < kParallelDim) {
    for (int i = 0; i < A.rows; ++i) y[i] = matvec_row(A, x, i);
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < A.rows; ++i) y[i] = matvec_row(A, x, i);
  }
  return y;
}

Mat transpose(const Mat& A) {
  Mat T(A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) T(j, i) = A(i, j);
  return T;
}

double trace_product(const Mat& A, const Mat& B) {
  if (A.cols != B.rows || A.rows != B.cols)
    throw Error(ErrorCode::generic, "trace_product: shape mismatch");
  const int n = A.rows;
  double s = 0.0;
  if (n < kParallelDim) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < A.cols; ++j) s += A(i, j) * B(j, i);
  } else {
#pragma omp parallel for schedule(static) reduction(+ : s)
    for (int i = 0; i < n; ++i) {
      double si = 0.0;
      for (int j = 0; j < A.cols; ++j) si += A(i, j) * B(j, i);
      s += si;
    }
  }
  return s;
}

double frob_norm(const Mat& A) {
  double s = 0.0;
  for (double v : A.a) s += v * v;
  return std::sqrt(s);
}

double offdiag_norm(const Mat& A) {
  double s = 0.0;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (i != j) s += A(i, j) * A(i, j);
  return std::sqrt(s);
}

double max_abs(const Mat& A) {
  double m = 0.0;
  for (double v : A.a) m = std::max(m, std::abs(v));
  return m;
}

double inf_norm(const Mat& M) {
  double m = 0.0;
  for (int i = 0; i < M.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < M.cols; ++j) s += std::abs(M(i, j));
    m = std::max(m, s);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Symmetric Jacobi eigensolvers
// ---------------------------------------------------------------------------

namespace {

void jacobi_params(double app, double aqq, double apq, double& c, double& s) {
  const double tau = (aqq - app) / (2.0 * apq);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  c = 1.0 / std::sqrt(1.0 + t * t);
  s = t * c;
}

SymEig sort_ascending(const Mat& A, const Mat& V) {
  const int n = A.rows;
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return A(i, i) < A(j, j); });
  SymEig out;
  out.values.resize(n);
  out.vectors = Mat(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = A(idx[j], idx[j]);
    for (int i = 0; i < n; ++i) out.vectors(i, j) = V(i, idx[j]);
  }
  return out;
}

// Plain cyclic Jacobi; no OpenMP anywhere on this path.
SymEig sym_eig_cyclic_serial(Mat A, double tol, int max_sweeps) {
  if (A.rows != A.cols) throw Error(ErrorCode::generic, "sym_eig: not square");
  const int n = A.rows;
  Mat V = Mat::identity(n);
  const double fnorm = frob_norm(A);
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(A) <= tol * fnorm) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        double c, s;
        jacobi_params(A(p, p), A(q, q), apq, c, s);
        for (int k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = V(k, p), vkq = V(k, q);
          V(k, p) = c * vkp - s * vkq;
          V(k, q) = s * vkp + c * vkq;
        }
        A(p, q) = A(q, p) = 0.0;
      }
    }
  }
  SymEig out = sort_ascending(A, V);
  out.sweeps = sweep;
  return out;
}

// Round-robin tournament Jacobi: each round rotates n/2 disjoint pivot pairs.
// Disjoint rotations touch no shared pivot entries, so the angles computed
// from the pre-round matrix equal the sequential ones, and the two-phase
// row/column update gives every entry a fixed formula regardless of thread
// count. The rotation order differs from the cyclic reference; eigenpairs
// agree to solver accuracy.
SymEig sym_eig_tournament(Mat A, double tol, int max_sweeps) {
  if (A.rows != A.cols) throw Error(ErrorCode::generic, "sym_eig: not square");
  const int n = A.rows;
  const int m = (n % 2 == 0) ? n : n + 1;  // pad with a bye when odd
  Mat V = Mat::identity(n);
  const double fnorm = frob_norm(A);

  std::vector<int> pr(m / 2), qr(m / 2);
  std::vector<double> cs(m / 2), sn(m / 2);

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(A) <= tol * fnorm) break;
    for (int round = 0; round < m - 1; ++round) {
      auto seat = [&](int i) {
        return i == 0 ? 0 : 1 + (i - 1 + round) % (m - 1);
      };
      int active = 0;
      for (int k = 0; k < m / 2; ++k) {
        int p = seat(k), q = seat(m - 1 - k);
        if (p >= n || q >= n) continue;  // bye
        if (p > q) std::swap(p, q);
        if (A(p, q) == 0.0) continue;
        pr[active] = p;
        qr[active] = q;
        ++active;
      }
      if (active == 0) continue;
      for (int k = 0; k < active; ++k)
        jacobi_params(A(pr[k], pr[k]), A(qr[k], qr[k]), A(pr[k], qr[k]), cs[k], sn[k]);
      // Row phase, then column phase, then the eigenvector columns. Threads
      // own contiguous j-ranges (not pairs), so writes never share cache
      // lines and every entry keeps the same formula for any thread count.
#pragma omp parallel
      {
        int j0 = 0, j1 = n;
#ifdef _OPENMP
        const int tid = omp_get_thread_num();
        const int nt = omp_get_num_threads();
        j0 = static_cast<int>(static_cast<long>(n) * tid / nt);
        j1 = static_cast<int>(static_cast<long>(n) * (tid + 1) / nt);
#endif
        for (int k = 0; k < active; ++k) {
          const int p = pr[k], q = qr[k];
          const double c = cs[k], s = sn[k];
          for (int j = j0; j < j1; ++j) {
            const double apj = A(p, j), aqj = A(q, j);
            A(p, j) = c * apj - s * aqj;
            A(q, j) = s * apj + c * aqj;
          }
        }
#pragma omp barrier
        for (int k = 0; k < active; ++k) {
          const int p = pr[k], q = qr[k];
          const double c = cs[k], s = sn[k];
          for (int j = j0; j < j1; ++j) {
            const double ajp = A(j, p), ajq = A(j, q);
            A(j, p) = c * ajp - s * ajq;
            A(j, q) = s * ajp + c * ajq;
          }
        }
        for (int k = 0; k < active; ++k) {
          const int p = pr[k], q = qr[k];
          const double c = cs[k], s = sn[k];
          for (int j = j0; j < j1; ++j) {
            const double vjp = V(j, p), vjq = V(j, q);
            V(j, p) = c * vjp - s * vjq;
            V(j, q) = s * vjp + c * vjq;
          }
        }
      }
      for (int k = 0; k < active; ++k) A(pr[k], qr[k]) = A(qr[k], pr[k]) = 0.0;
    }
  }
  SymEig out = sort_ascending(A, V);
  out.sweeps = sweep;
  return out;
}

}  // namespace

SymEig sym_eig_jacobi(Mat A, double tol, int max_sweeps) {
  if (A.rows < kParallelEigDim) return sym_eig_cyclic_serial(std::move(A), tol, max_sweeps);
  return sym_eig_tournament(std::move(A), tol, max_sweeps);
}

Mat cholesky(const Mat& G) {
  if (G.rows != G.cols) throw Error(ErrorCode::generic, "cholesky: not square");
  const int n = G.rows;
  Mat L(n, n);
  for (int j = 0; j < n; ++j) {
    double d = G(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (d <= 0.0) throw Error(ErrorCode::generic, "cholesky: matrix not positive definite");
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = G(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return L;
}

Vec solve_lower(const Mat& L, Vec b) {
  const int n = L.rows;
  for (int i = 0; i < n; ++i) {
    double s = b[i];
    for (int k = 0; k < i; ++k) s -= L(i, k) * b[k];
    b[i] = s / L(i, i);
  }
  return b;
}

Vec solve_upper_t(const Mat& L, Vec b) {
  const int n = L.rows;
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int k = i + 1; k < n; ++k) s -= L(k, i) * b[k];
    b[i] = s / L(i, i);
  }
  return b;
}

Vec expm_apply(const Mat& M, Vec v) {
  if (M.rows != M.cols || M.rows != static_cast<int>(v.size()))
    throw Error(ErrorCode::generic, "expm_apply: shape mismatch");
  const double nrm = inf_norm(M);
  int s = 0;
  double scale_factor = 1.0;
  while (nrm * scale_factor > 0.5) {
    scale_factor *= 0.5;
    ++s;
  }
  Mat Ms = M;
  for (double& x : Ms.a) x *= scale_factor;
  const long reps = 1L << s;
  for (long r = 0; r < reps; ++r) {
    Vec acc = v;
    Vec term = v;
    for (int k = 1; k <= 25; ++k) {
      term = matvec(Ms, term);
      scale(term, 1.0 / k);
      for (size_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
      if (norm2(term) <= 1e-18 * norm2(acc)) break;
    }
    v = std::move(acc);
  }
  return v;
}

Vec singular_values(const Mat& A) {
  const Mat At = transpose(A);
  const Mat AtA = matmul(At, A);
  SymEig e = sym_eig_jacobi(AtA);
  Vec sv(e.values.size());
  for (size_t i = 0; i < e.values.size(); ++i) {
    const double lam = e.values[e.values.size() - 1 - i];
    sv[i] = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  return sv;
}

namespace serial {

Mat matmul(const Mat& A, const Mat& B) {
  Mat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < B.cols; ++j) {
      double s = 0.0;
      for (int p = 0; p < A.cols; ++p) s += A(i, p) * B(p, j);
      C(i, j) = s;
    }
  return C;
}

Vec matvec(const Mat& A, const Vec& x) {
  Vec y(A.rows, 0.0);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) y[i] += A(i, j) * x[j];
  return y;
}

double trace_product(const Mat& A, const Mat& B) {
  double s = 0.0;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) s += A(i, j) * B(j, i);
  return s;
}

SymEig sym_eig_jacobi(Mat A, double tol, int max_sweeps) {
  return sym_eig_cyclic_serial(std::move(A), tol, max_sweeps);
}

}  // namespace serial

}  // namespace liecomm::linalg
