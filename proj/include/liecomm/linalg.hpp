#ifndef LIECOMM_LINALG_HPP
#define LIECOMM_LINALG_HPP

#include <cstddef>
#include <vector>

namespace liecomm::linalg {

using Vec = std::vector<double>;

/// Dense row-major matrix of doubles.
struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n);
  Vec col(int j) const;
  void set_col(int j, const Vec& v);
};

// Vector helpers.
double dot(const Vec& x, const Vec& y);
double norm2(const Vec& x);
void axpy(double a, const Vec& x, Vec& y);  // y += a*x
void scale(Vec& x, double a);
Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);

// Parallel kernels. The OpenMP loops partition independent output entries
// with static scheduling, so results are bitwise identical for any thread
// count (and to the serial reference for kernels sharing the summation
// order). Small sizes stay serial via `if` clauses.
Mat matmul(const Mat& A, const Mat& B);
Vec matvec(const Mat& A, const Vec& x);
Mat transpose(const Mat& A);
double trace_product(const Mat& A, const Mat& B);  // tr(A*B)
double frob_norm(const Mat& A);
double offdiag_norm(const Mat& A);
double max_abs(const Mat& A);

/// Symmetric eigendecomposition A = V diag(values) Vᵀ, eigenvalues ascending.
struct SymEig {
  Vec values;
  Mat vectors;  // column j pairs with values[j]
  int sweeps = 0;
};

/// Cyclic Jacobi rotations; row/column updates run under OpenMP.
/// Converges when the off-diagonal Frobenius norm drops below
/// tol * ||A||_F.
SymEig sym_eig_jacobi(Mat A, double tol = 1e-14, int max_sweeps = 60);

/// Cholesky factor L (lower) with L Lᵀ = G; throws on non-SPD input.
Mat cholesky(const Mat& G);
Vec solve_lower(const Mat& L, Vec b);     // L y = b
Vec solve_upper_t(const Mat& L, Vec b);   // Lᵀ x = b

/// e^M v by scaling and squaring on the vector: M is halved until
/// ||M||_inf <= 0.5, then the Taylor series (order <= 25, terms added
/// until below 1e-18 relative) is applied 2^s times. Relative error is
/// well under 1e-12 for ||M|| <= 10.
Vec expm_apply(const Mat& M, Vec v);

double inf_norm(const Mat& M);

/// Singular values of A (descending), via the eigenvalues of AᵀA.
Vec singular_values(const Mat& A);

/// Plain single-threaded reference implementations, kept for tests and the
/// kernel benchmark.
namespace serial {
Mat matmul(const Mat& A, const Mat& B);
Vec matvec(const Mat& A, const Vec& x);
double trace_product(const Mat& A, const Mat& B);
SymEig sym_eig_jacobi(Mat A, double tol = 1e-14, int max_sweeps = 60);
}  // namespace serial

}  // namespace liecomm::linalg

#endif
