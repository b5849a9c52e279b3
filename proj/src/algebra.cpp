#include "liecomm/algebra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

#include "liecomm/errors.hpp"

namespace liecomm {

using linalg::Mat;
using linalg::Vec;
using cd = std::complex<double>;

// ---------------------------------------------------------------------------
// AlgebraSpec
// ---------------------------------------------------------------------------

AlgebraSpec AlgebraSpec::su(int n) {
  AlgebraSpec s;
  s.kind = Kind::special_unitary;
  s.n = n;
  s.label = "su(" + std::to_string(n) + ")";
  s.validate();
  return s;
}

AlgebraSpec AlgebraSpec::so(int n) {
  AlgebraSpec s;
  s.kind = Kind::special_orthogonal;
  s.n = n;
  s.label = "so(" + std::to_string(n) + ")";
  s.validate();
  return s;
}

AlgebraSpec AlgebraSpec::sum(std::vector<AlgebraSpec> parts) {
  AlgebraSpec s;
  s.kind = Kind::direct_sum;
  // Flatten any nested sums so invariants hold by construction.
  for (auto& p : parts) {
    if (p.kind == Kind::direct_sum) {
      for (auto& q : p.summands) s.summands.push_back(q);
    } else {
      s.summands.push_back(p);
    }
  }
  std::string lab;
  for (size_t i = 0; i < s.summands.size(); ++i) {
    if (i) lab += " + ";
    lab += s.summands[i].label;
  }
  s.label = lab;
  s.validate();
  return s;
}

void AlgebraSpec::validate() const {
  switch (kind) {
    case Kind::special_unitary:
      if (n < 2) throw InvalidSpec("su(n) requires n >= 2, got n=" + std::to_string(n));
      break;
    case Kind::special_orthogonal:
      if (n < 3) throw InvalidSpec("so(n) requires n >= 3, got n=" + std::to_string(n));
      break;
    case Kind::direct_sum:
      if (summands.empty()) throw InvalidSpec("direct_sum requires at least one summand");
      for (const auto& s : summands) {
        if (s.kind == Kind::direct_sum)
          throw InvalidSpec("direct_sum must be flat after normalization");
        s.validate();
      }
      break;
  }
}

namespace {

AlgebraSpec parse_simple(const std::string& text) {
  auto bad = [&]() -> AlgebraSpec {
    throw InvalidSpec("cannot parse algebra spec '" + text +
                      "' (expected su:N, so:N or sum:<spec>+<spec>)");
  };
  if (text.size() < 4 || text[2] != ':') return bad();
  const std::string head = text.substr(0, 2);
  int n = 0;
  try {
    size_t pos = 0;
    n = std::stoi(text.substr(3), &pos);
    if (pos != text.size() - 3) return bad();
  } catch (const std::exception&) {
    return bad();
  }
  if (head == "su") return AlgebraSpec::su(n);
  if (head == "so") return AlgebraSpec::so(n);
  return bad();
}

}  // namespace

AlgebraSpec AlgebraSpec::parse(const std::string& text) {
  if (text.rfind("sum:", 0) == 0) {
    const std::string rest = text.substr(4);
    std::vector<AlgebraSpec> parts;
    size_t start = 0;
    while (start <= rest.size()) {
      const size_t plus = rest.find('+', start);
      const std::string piece =
          rest.substr(start, plus == std::string::npos ? std::string::npos : plus - start);
      if (piece.empty()) throw InvalidSpec("empty summand in '" + text + "'");
      parts.push_back(parse_simple(piece));
      if (plus == std::string::npos) break;
      start = plus + 1;
    }
    if (parts.size() < 2) throw InvalidSpec("sum needs at least two summands: '" + text + "'");
    return sum(std::move(parts));
  }
  return parse_simple(text);
}

std::string AlgebraSpec::to_string() const {
  switch (kind) {
    case Kind::special_unitary:
      return "su:" + std::to_string(n);
    case Kind::special_orthogonal:
      return "so:" + std::to_string(n);
    case Kind::direct_sum: {
      std::string out = "sum:";
      for (size_t i = 0; i < summands.size(); ++i) {
        if (i) out += "+";
        out += summands[i].to_string();
      }
      return out;
    }
  }
  return {};
}

namespace {

int simple_dim(const AlgebraSpec& s) {
  if (s.kind == AlgebraSpec::Kind::special_unitary) return s.n * s.n - 1;
  return s.n * (s.n - 1) / 2;
}

int simple_rank(const AlgebraSpec& s) {
  if (s.kind == AlgebraSpec::Kind::special_unitary) return s.n - 1;
  return s.n / 2;
}

int simple_roots(const AlgebraSpec& s) {
  if (s.kind == AlgebraSpec::Kind::special_unitary) return s.n * (s.n - 1) / 2;
  const int k = s.n / 2;
  return (s.n % 2 == 1) ? k * k : k * (k - 1);
}

}  // namespace

int AlgebraSpec::dim() const {
  if (kind != Kind::direct_sum) return simple_dim(*this);
  int d = 0;
  for (const auto& s : summands) d += simple_dim(s);
  return d;
}

int AlgebraSpec::rank() const {
  if (kind != Kind::direct_sum) return simple_rank(*this);
  int r = 0;
  for (const auto& s : summands) r += simple_rank(s);
  return r;
}

int AlgebraSpec::positive_root_count() const {
  if (kind != Kind::direct_sum) return simple_roots(*this);
  int p = 0;
  for (const auto& s : summands) p += simple_roots(s);
  return p;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace {

struct Block {
  AlgebraSpec::Kind kind;
  int n = 0;         // matrix size of the block
  int mat_off = 0;   // offset into the full rep matrix
  int coord_off = 0; // offset into the coordinate vector
  int count = 0;     // basis elements in this block
  std::string prefix;
};

std::vector<Block> block_layout(const AlgebraSpec& spec) {
  std::vector<const AlgebraSpec*> simples;
  if (spec.kind == AlgebraSpec::Kind::direct_sum) {
    for (const auto& s : spec.summands) simples.push_back(&s);
  } else {
    simples.push_back(&spec);
  }
  std::vector<Block> blocks;
  int mat_off = 0, coord_off = 0;
  for (size_t b = 0; b < simples.size(); ++b) {
    Block blk;
    blk.kind = simples[b]->kind;
    blk.n = simples[b]->n;
    blk.mat_off = mat_off;
    blk.coord_off = coord_off;
    blk.count = simple_dim(*simples[b]);
    blk.prefix = simples.size() > 1 ? "s" + std::to_string(b) + ":" : "";
    blocks.push_back(blk);
    mat_off += blk.n;
    coord_off += blk.count;
  }
  return blocks;
}

// Local (n x n) complex matrix helpers for one block.
using BlockMat = std::vector<cd>;

BlockMat block_commutator(const BlockMat& x, const BlockMat& y, int n) {
  BlockMat z(static_cast<size_t>(n) * n, cd(0.0, 0.0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const cd xik = x[static_cast<size_t>(i) * n + k];
      const cd yik = y[static_cast<size_t>(i) * n + k];
      if (xik == cd(0.0, 0.0) && yik == cd(0.0, 0.0)) continue;
      for (int j = 0; j < n; ++j) {
        z[static_cast<size_t>(i) * n + j] +=
            xik * y[static_cast<size_t>(k) * n + j] - yik * x[static_cast<size_t>(k) * n + j];
      }
    }
  return z;
}

// Basis matrices of one block in its local n x n space, in coordinate order.
std::vector<BlockMat> block_basis(const Block& blk, std::vector<std::string>* labels) {
  const int n = blk.n;
  std::vector<BlockMat> mats;
  auto zero = [&]() { return BlockMat(static_cast<size_t>(n) * n, cd(0.0, 0.0)); };
  if (blk.kind == AlgebraSpec::Kind::special_unitary) {
    for (int k = 0; k + 1 < n; ++k) {
      BlockMat m = zero();
      m[static_cast<size_t>(k) * n + k] = cd(0.0, 1.0);
      m[static_cast<size_t>(k + 1) * n + k + 1] = cd(0.0, -1.0);
      mats.push_back(std::move(m));
      if (labels) labels->push_back(blk.prefix + "h" + std::to_string(k + 1));
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        BlockMat a = zero();
        a[static_cast<size_t>(i) * n + j] = cd(1.0, 0.0);
        a[static_cast<size_t>(j) * n + i] = cd(-1.0, 0.0);
        mats.push_back(std::move(a));
        BlockMat b = zero();
        b[static_cast<size_t>(i) * n + j] = cd(0.0, 1.0);
        b[static_cast<size_t>(j) * n + i] = cd(0.0, 1.0);
        mats.push_back(std::move(b));
        if (labels) {
          labels->push_back(blk.prefix + "x" + std::to_string(i + 1) + std::to_string(j + 1));
          labels->push_back(blk.prefix + "y" + std::to_string(i + 1) + std::to_string(j + 1));
        }
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        BlockMat m = zero();
        m[static_cast<size_t>(i) * n + j] = cd(1.0, 0.0);
        m[static_cast<size_t>(j) * n + i] = cd(-1.0, 0.0);
        mats.push_back(std::move(m));
        if (labels)
          labels->push_back(blk.prefix + "r" + std::to_string(i + 1) + std::to_string(j + 1));
      }
  }
  return mats;
}

// Expands a block matrix in the block's basis. Exact read-off: off-diagonal
// coefficients come straight from entries; su diagonal coefficients are
// prefix sums of the imaginary diagonal.
Vec block_coords(const BlockMat& m, const Block& blk) {
  const int n = blk.n;
  Vec coords(blk.count, 0.0);
  int idx = 0;
  if (blk.kind == AlgebraSpec::Kind::special_unitary) {
    double prefix = 0.0;
    for (int k = 0; k + 1 < n; ++k) {
      prefix += m[static_cast<size_t>(k) * n + k].imag();
      coords[idx++] = prefix;
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const cd z = m[static_cast<size_t>(i) * n + j];
        coords[idx++] = z.real();
        coords[idx++] = z.imag();
      }
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        coords[idx++] = m[static_cast<size_t>(i) * n + j].real();
  }
  return coords;
}

std::atomic<uint64_t> g_next_algebra_id{1};

}  // namespace

LieAlgebra build_algebra_value(const AlgebraSpec& spec) {
  spec.validate();
  LieAlgebra g;
  g.spec = spec;
  g.dim = spec.dim();
  g.id = g_next_algebra_id.fetch_add(1);
  const int d = g.dim;

  const std::vector<Block> blocks = block_layout(spec);
  int n_total = 0;
  for (const auto& b : blocks) n_total += b.n;
  g.rep.n = n_total;
  g.rep.mats.assign(d, std::vector<cd>(static_cast<size_t>(n_total) * n_total, cd(0.0, 0.0)));

  std::vector<std::vector<BlockMat>> local(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b) {
    local[b] = block_basis(blocks[b], &g.basis_labels);
    for (int t = 0; t < blocks[b].count; ++t) {
      auto& full = g.rep.mats[blocks[b].coord_off + t];
      for (int i = 0; i < blocks[b].n; ++i)
        for (int j = 0; j < blocks[b].n; ++j)
          full[static_cast<size_t>(blocks[b].mat_off + i) * n_total + blocks[b].mat_off + j] =
              local[b][t][static_cast<size_t>(i) * blocks[b].n + j];
    }
  }

  // Structure tensor from commutators in the defining representation.
  // Cross-block brackets vanish; pairs inside one block are independent.
  g.structure.assign(static_cast<size_t>(d) * d * d, 0.0);
  for (size_t b = 0; b < blocks.size(); ++b) {
    const Block& blk = blocks[b];
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < blk.count; ++i)
      for (int j = i + 1; j < blk.count; ++j) pairs.emplace_back(i, j);
#pragma omp parallel for schedule(static) if (blk.count >= 24)
    for (size_t p = 0; p < pairs.size(); ++p) {
      const auto [li, lj] = pairs[p];
      const BlockMat com = block_commutator(local[b][li], local[b][lj], blk.n);
      const Vec coords = block_coords(com, blk);
      const int gi = blk.coord_off + li;
      const int gj = blk.coord_off + lj;
      for (int t = 0; t < blk.count; ++t) {
        const double v = coords[t];
        const int gk = blk.coord_off + t;
        g.structure[(static_cast<size_t>(gi) * d + gj) * d + gk] = v;
        g.structure[(static_cast<size_t>(gj) * d + gi) * d + gk] = -v;
      }
    }
  }

  // Killing Gram from ad-traces: K[i][j] = tr(ad e_i ad e_j).
  std::vector<Mat> ads(d);
  for (int i = 0; i < d; ++i) {
    Mat m(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) m(k, j) = g.c(i, j, k);
    ads[i] = std::move(m);
  }
  g.killing = Mat(d, d);
#pragma omp parallel for schedule(static) if (d >= 24)
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q) s += ads[i](p, q) * ads[j](q, p);
      g.killing(i, j) = s;
    }
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) g.killing(i, j) = g.killing(j, i);

  g.metric = Mat(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g.metric(i, j) = -g.killing(i, j);
  g.metric_chol = linalg::cholesky(g.metric);  // throws unless -K is SPD
  return g;
}

AlgebraPtr build_algebra(const AlgebraSpec& spec) {
  return std::make_shared<const LieAlgebra>(build_algebra_value(spec));
}

// ---------------------------------------------------------------------------
// Element operations
// ---------------------------------------------------------------------------

namespace detail {
void require_same_algebra(const Element& x, const Element& y) {
  if (!x.algebra || !y.algebra || x.algebra->id != y.algebra->id)
    throw AlgebraMismatch("elements belong to different algebras");
}
}  // namespace detail

Element zero_element(AlgebraPtr g) {
  return Element{g, Vec(g->dim, 0.0)};
}

Element basis_element(AlgebraPtr g, int i) {
  Element e = zero_element(g);
  e.coords[i] = 1.0;
  return e;
}

Element make_element(AlgebraPtr g, Vec coords) {
  if (static_cast<int>(coords.size()) != g->dim)
    throw DimensionMismatch("element has " + std::to_string(coords.size()) +
                            " coordinates, algebra dimension is " + std::to_string(g->dim));
  return Element{std::move(g), std::move(coords)};
}

Element bracket(const Element& x, const Element& y) {
  detail::require_same_algebra(x, y);
  const LieAlgebra& g = *x.algebra;
  const int d = g.dim;
  Vec z(d, 0.0);
  for (int i = 0; i < d; ++i) {
    const double xi = x.coords[i];
    if (xi == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = xi * y.coords[j];
      if (w == 0.0) continue;
      const double* row = &g.structure[(static_cast<size_t>(i) * d + j) * d];
      for (int k = 0; k < d; ++k) z[k] += w * row[k];
    }
  }
  return Element{x.algebra, std::move(z)};
}

Mat ad_matrix(const Element& x) {
  const LieAlgebra& g = *x.algebra;
  const int d = g.dim;
  Mat m(d, d);
  for (int i = 0; i < d; ++i) {
    const double xi = x.coords[i];
    if (xi == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double* row = &g.structure[(static_cast<size_t>(i) * d + j) * d];
      for (int k = 0; k < d; ++k) m(k, j) += xi * row[k];
    }
  }
  return m;
}

double killing_form(const Element& x, const Element& y) {
  detail::require_same_algebra(x, y);
  const Mat& K = x.algebra->killing;
  const int d = x.algebra->dim;
  double s = 0.0;
  for (int i = 0; i < d; ++i) {
    if (x.coords[i] == 0.0) continue;
    double si = 0.0;
    for (int j = 0; j < d; ++j) si += K(i, j) * y.coords[j];
    s += x.coords[i] * si;
  }
  return s;
}

double inner(const Element& x, const Element& y) { return -killing_form(x, y); }

double norm(const Element& x) {
  const double q = inner(x, x);
  return q > 0.0 ? std::sqrt(q) : 0.0;
}

Element add(const Element& x, const Element& y) {
  detail::require_same_algebra(x, y);
  return Element{x.algebra, linalg::add(x.coords, y.coords)};
}

Element sub(const Element& x, const Element& y) {
  detail::require_same_algebra(x, y);
  return Element{x.algebra, linalg::sub(x.coords, y.coords)};
}

Element scaled(const Element& x, double a) {
  Element z = x;
  linalg::scale(z.coords, a);
  return z;
}

Element exp_ad_apply(const Element& z, const Element& x) {
  detail::require_same_algebra(z, x);
  return Element{x.algebra, linalg::expm_apply(ad_matrix(z), x.coords)};
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

ValidationReport validate_algebra(const LieAlgebra& g) {
  ValidationReport rep;
  const int d = g.dim;

  double anti = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        anti = std::max(anti, std::abs(g.c(i, j, k) + g.c(j, i, k)));
  rep.antisymmetry_residual = anti;

  double jac = 0.0;
#pragma omp parallel for schedule(dynamic) reduction(max : jac) if (d >= 16)
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += g.c(j, k, m) * g.c(i, m, l) + g.c(k, i, m) * g.c(j, m, l) +
                 g.c(i, j, m) * g.c(k, m, l);
          jac = std::max(jac, std::abs(s));
        }
  rep.jacobi_residual = jac;

  double inv = 0.0;
#pragma omp parallel for schedule(static) reduction(max : inv) if (d >= 16)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m)
          s += g.c(i, j, m) * g.killing(m, k) + g.c(i, k, m) * g.killing(j, m);
        inv = std::max(inv, std::abs(s));
      }
  rep.invariance_residual = inv;

  double ks = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      ks = std::max(ks, std::abs(g.killing(i, j) - g.killing(j, i)));
  rep.killing_symmetry_residual = ks;

  const linalg::SymEig eig = linalg::sym_eig_jacobi(g.killing);
  rep.killing_max_eigenvalue = eig.values.back();

  rep.antisymmetry_ok = anti <= 1e-12;
  rep.jacobi_ok = jac <= 1e-10;
  rep.invariance_ok = inv <= 1e-10;
  rep.killing_negative_definite = rep.killing_max_eigenvalue < 0.0 && ks <= 1e-10;
  return rep;
}

std::vector<KillingFit> killing_trace_fit(const LieAlgebra& g) {
  const std::vector<Block> blocks = block_layout(g.spec);
  const int n_total = g.rep.n;
  std::vector<KillingFit> fits;
  for (const auto& blk : blocks) {
    double num = 0.0, den = 0.0;
    for (int a = 0; a < blk.count; ++a)
      for (int b = 0; b < blk.count; ++b) {
        const int i = blk.coord_off + a;
        const int j = blk.coord_off + b;
        // Re tr(m_i m_j) over the defining representation.
        cd tr(0.0, 0.0);
        for (int p = 0; p < n_total; ++p)
          for (int q = 0; q < n_total; ++q)
            tr += g.rep.mats[i][static_cast<size_t>(p) * n_total + q] *
                  g.rep.mats[j][static_cast<size_t>(q) * n_total + p];
        const double t = tr.real();
        num += g.killing(i, j) * t;
        den += t * t;
      }
    KillingFit fit;
    fit.label = blk.kind == AlgebraSpec::Kind::special_unitary
                    ? "su(" + std::to_string(blk.n) + ")"
                    : "so(" + std::to_string(blk.n) + ")";
    fit.fitted = den > 0.0 ? num / den : 0.0;
    fit.expected = blk.kind == AlgebraSpec::Kind::special_unitary
                       ? 2.0 * blk.n
                       : static_cast<double>(blk.n - 2);
    fits.push_back(fit);
  }
  return fits;
}

}  // namespace liecomm
