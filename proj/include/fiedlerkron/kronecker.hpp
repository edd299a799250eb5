// Wing pencils, the antidiagonal-sum condition, extended block Kronecker
// views of a block pencil, and the structural recognizer that finds the
// block permutations exposing such a view.
#pragma once

#include "fiedlerkron/core.hpp"
#include "fiedlerkron/pencils.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

namespace fk {

// tol == 0 selects exact comparison; otherwise a scaled infinity-norm bound.
template <class S>
bool matrices_match(const DenseMatrix<S>& a, const DenseMatrix<S>& b, double tol) {
  if (tol == 0.0) return exactly_equal(a, b);
  return approx_equal(a, b, tol);
}

// L_s(lambda) (x) I_n, the s x (s+1) bidiagonal pencil with -I_n / lambda I_n.
template <class S>
BlockPencil<S> l_pencil(Index s, Index n) {
  require(s >= 0 && n >= 1, "l_pencil: need s >= 0, n >= 1");
  DenseMatrix<S> b1 = DenseMatrix<S>::Zero(s * n, (s + 1) * n);
  DenseMatrix<S> b0 = DenseMatrix<S>::Zero(s * n, (s + 1) * n);
  for (Index i = 0; i < s; ++i) {
    b0.block(i * n, i * n, n, n) = -DenseMatrix<S>::Identity(n, n);
    b1.block(i * n, (i + 1) * n, n, n) = DenseMatrix<S>::Identity(n, n);
  }
  return BlockPencil<S>(std::move(b1), std::move(b0), n);
}

// Lambda_s(lambda) (x) I_n = [lambda^s I_n ... lambda I_n I_n], grade s.
template <class S>
MatrixPolynomial<S> lambda_row(Index s, Index n) {
  std::vector<DenseMatrix<S>> coeffs(s + 1, DenseMatrix<S>::Zero(n, (s + 1) * n));
  for (Index d = 0; d <= s; ++d)
    coeffs[d].block(0, (s - d) * n, n, n) = DenseMatrix<S>::Identity(n, n);
  return MatrixPolynomial<S>(std::move(coeffs));
}

// K(lambda) (Lambda_s(lambda)^T (x) I_n) = 0, checked through the equivalent
// block-structure equations: K1 col 1 = 0, K1 col j = -K0 col j-1, K0 col
// s+1 = 0.
template <class S>
bool is_wing(const BlockPencil<S>& kp, double tol = 0.0) {
  const Index n = kp.block_size, s = kp.grid_rows();
  if (kp.grid_cols() != s + 1) return false;
  auto near_zero = [&](const DenseMatrix<S>& m) {
    return m.template lpNorm<Eigen::Infinity>() <= tol;
  };
  if (s == 0) return true;
  if (!near_zero(kp.b1.block(0, 0, s * n, n))) return false;
  if (!near_zero(kp.b0.block(0, s * n, s * n, n))) return false;
  for (Index j = 2; j <= s + 1; ++j)
    if (!near_zero(DenseMatrix<S>(kp.b1.block(0, (j - 1) * n, s * n, n) +
                                  kp.b0.block(0, (j - 2) * n, s * n, n))))
      return false;
  return true;
}

// B with K = B (L_s (x) I_n); read off as -[K0 first s block-columns].
template <class S>
DenseMatrix<S> wing_factor(const BlockPencil<S>& kp) {
  const Index n = kp.block_size, s = kp.grid_rows();
  require(kp.grid_cols() == s + 1, "wing_factor: grid must be s x (s+1)");
  return -kp.b0.block(0, 0, s * n, s * n);
}

template <class S>
double rank_tolerance(const Eigen::JacobiSVD<DenseMatrix<S>>& svd, Index rows, Index cols) {
  const double eps = std::numeric_limits<double>::epsilon();
  return static_cast<double>(std::max(rows, cols)) * eps *
         (svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
}

template <class S>
Index numeric_rank(const DenseMatrix<S>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<DenseMatrix<S>> svd(m);
  const double tol = rank_tolerance<S>(svd, m.rows(), m.cols());
  Index r = 0;
  for (Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

template <class S>
bool is_nonsingular(const DenseMatrix<S>& m) {
  return m.rows() == m.cols() && numeric_rank(m) == m.rows();
}

// Exact minimal-basis criterion for wing pencils: the factor is nonsingular.
template <class S>
bool is_minimal_basis_wing(const BlockPencil<S>& kp, double tol = 0.0) {
  return is_wing(kp, tol) && is_nonsingular(wing_factor(kp));
}

// Highest row degree coefficient matrix Q_h.
template <class S>
DenseMatrix<S> highest_row_degree_coefficient(const MatrixPolynomial<S>& q) {
  DenseMatrix<S> out = DenseMatrix<S>::Zero(q.rows(), q.cols());
  for (Index i = 0; i < q.rows(); ++i) {
    Index d = 0;
    for (Index g = q.grade(); g >= 0; --g)
      if (!q.coeff(g).row(i).isZero(0.0)) {
        d = g;
        break;
      }
    out.row(i) = q.coeff(d).row(i);
  }
  return out;
}

// Probabilistic minimal-basis test: full row rank at sample points on an
// annulus plus full rank of Q_h.  Wing pencils should use the exact factor
// criterion instead.
template <class S>
bool is_minimal_basis_numeric(const MatrixPolynomial<S>& q, unsigned seed = 0x5eedu,
                              int samples = 8) {
  if (q.rows() > q.cols()) return false;
  if (numeric_rank(highest_row_degree_coefficient(q)) != q.rows()) return false;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 2 * M_PI);
  for (int t = 0; t < samples; ++t) {
    const double r = radius(rng), a = angle(rng);
    const Cplx z(r * std::cos(a), r * std::sin(a));
    MatrixPolynomial<Cplx> qc = [&] {
      std::vector<DenseMatrix<Cplx>> c;
      for (const auto& m : q.coeffs) c.push_back(m.template cast<Cplx>());
      return MatrixPolynomial<Cplx>(std::move(c));
    }();
    if (numeric_rank(DenseMatrix<Cplx>(eval(qc, z))) != q.rows()) return false;
  }
  return true;
}

// --- antidiagonal sums ---------------------------------------------------------

// AS(M, s) = sum_{i+j=k+2-s} [M1]_ij + sum_{i+j=k+1-s} [M0]_ij for a pencil on
// a (q+1) x (p+1) block grid with k = p + q + 1.
template <class S>
DenseMatrix<S> antidiagonal_sum(const BlockPencil<S>& m, Index s, Index k) {
  const Index n = m.block_size;
  require(m.grid_rows() + m.grid_cols() - 1 == k,
          "antidiagonal_sum: grid incompatible with grade");
  require(s >= 0 && s <= k, "antidiagonal_sum: s out of {0:k}");
  DenseMatrix<S> acc = DenseMatrix<S>::Zero(n, n);
  for (Index i = 1; i <= m.grid_rows(); ++i)
    for (Index j = 1; j <= m.grid_cols(); ++j) {
      if (i + j == k + 2 - s) acc += m.b1_block(i, j);
      if (i + j == k + 1 - s) acc += m.b0_block(i, j);
    }
  return acc;
}

template <class S>
bool check_as(const BlockPencil<S>& m, const MatrixPolynomial<S>& p, double tol = 0.0) {
  const Index k = p.grade();
  if (m.grid_rows() + m.grid_cols() - 1 != k || m.block_size != p.rows()) return false;
  for (Index s = 0; s <= k; ++s)
    if (!matrices_match<S>(antidiagonal_sum(m, s, k), p.coeff(s), tol)) return false;
  return true;
}

// Q(lambda) = (Lambda_q (x) I_n) M(lambda) (Lambda_p^T (x) I_n), grade p+q+1.
template <class S>
MatrixPolynomial<S> body_polynomial(const BlockPencil<S>& m) {
  const Index k = m.grid_rows() + m.grid_cols() - 1;
  std::vector<DenseMatrix<S>> coeffs(k + 1,
                                     DenseMatrix<S>::Zero(m.block_size, m.block_size));
  for (Index s = 0; s <= k; ++s) coeffs[s] = antidiagonal_sum(m, s, k);
  return MatrixPolynomial<S>(std::move(coeffs));
}

// --- extended block Kronecker views --------------------------------------------

// A certified partition (Pi_l)^B L Pi_r = [[M, K2^T],[K1, 0]] with p wing
// block-rows and q wing block-columns.  Orders are 1-based source block
// indices; slot i of the permuted pencil reads source block order[i-1].
template <class S>
struct EbkView {
  BlockPencil<S> source;
  std::vector<Index> row_order, col_order;
  Index p = 0, q = 0;
  BlockPencil<S> permuted;

  Index k() const { return source.grid_rows(); }
  Index n() const { return source.block_size; }

  BlockPencil<S> body() const {
    const Index n_ = n();
    return BlockPencil<S>(permuted.b1.block(0, 0, (q + 1) * n_, (p + 1) * n_),
                          permuted.b0.block(0, 0, (q + 1) * n_, (p + 1) * n_), n_);
  }
  BlockPencil<S> k1() const {
    const Index n_ = n();
    return BlockPencil<S>(permuted.b1.block((q + 1) * n_, 0, p * n_, (p + 1) * n_),
                          permuted.b0.block((q + 1) * n_, 0, p * n_, (p + 1) * n_), n_);
  }
  BlockPencil<S> k2t() const {
    const Index n_ = n();
    return BlockPencil<S>(permuted.b1.block(0, (p + 1) * n_, (q + 1) * n_, q * n_),
                          permuted.b0.block(0, (p + 1) * n_, (q + 1) * n_, q * n_), n_);
  }
  BlockPencil<S> k2() const {
    auto t = k2t();
    return BlockPencil<S>(t.b1.transpose(), t.b0.transpose(), t.block_size);
  }
  BlockPencil<S> corner() const {
    const Index n_ = n();
    return BlockPencil<S>(permuted.b1.block((q + 1) * n_, (p + 1) * n_, p * n_, q * n_),
                          permuted.b0.block((q + 1) * n_, (p + 1) * n_, p * n_, q * n_), n_);
  }

  BlockPermutation perm_l() const { return BlockPermutation(row_order, n()); }
  BlockPermutation perm_r() const { return BlockPermutation(col_order, n()); }

  // K1 = k1_factor() (L_p (x) I_n);  K2^T = (L_q(lambda)^T (x) I_n) k2_factor().
  DenseMatrix<S> k1_factor() const { return wing_factor(k1()); }
  DenseMatrix<S> k2_factor() const { return wing_factor(k2()).transpose(); }

  std::vector<Index> wing_row_positions() const {
    std::vector<Index> v(row_order.begin() + (q + 1), row_order.end());
    std::sort(v.begin(), v.end());
    return v;
  }
  std::vector<Index> wing_col_positions() const {
    std::vector<Index> v(col_order.begin() + (p + 1), col_order.end());
    std::sort(v.begin(), v.end());
    return v;
  }

  bool wings_minimal_bases() const {
    return is_minimal_basis_wing(k1()) && is_minimal_basis_wing(k2());
  }
};

template <class S>
EbkView<S> make_view(const BlockPencil<S>& source, std::vector<Index> row_order,
                     std::vector<Index> col_order, Index p, Index q) {
  EbkView<S> v;
  v.source = source;
  v.row_order = std::move(row_order);
  v.col_order = std::move(col_order);
  v.p = p;
  v.q = q;
  v.permuted = permute_blocks(source, v.row_order, v.col_order);
  return v;
}

// Structural validity: zero corner and both wing identities.
template <class S>
bool view_structure_ok(const EbkView<S>& v, double tol = 0.0) {
  const auto corner = v.corner();
  if (corner.b1.template lpNorm<Eigen::Infinity>() > tol ||
      corner.b0.template lpNorm<Eigen::Infinity>() > tol)
    return false;
  return is_wing(v.k1(), tol) && is_wing(v.k2(), tol);
}

template <class S>
void validate_view(const EbkView<S>& v, const MatrixPolynomial<S>& p, double tol = 0.0) {
  ensure(v.p + v.q + 1 == v.k(), "ebk view: p + q + 1 != k");
  ensure(view_structure_ok(v, tol), "ebk view: structure equations violated");
  ensure(check_as(v.body(), p, tol), "ebk view: body fails the AS condition");
}

// Reversed extended block Kronecker view, partitioned [[0, L1],[L2^T, N]]
// with h1 body block-columns and h2 body block-rows (at the right/bottom).
template <class S>
struct ReversedEbkView {
  BlockPencil<S> source;
  std::vector<Index> row_order, col_order;
  Index h1 = 1, h2 = 1;
  BlockPencil<S> permuted;

  Index k() const { return source.grid_rows(); }
  Index n() const { return source.block_size; }

  BlockPencil<S> body() const {  // N, h2 x h1 blocks
    const Index n_ = n();
    return BlockPencil<S>(
        permuted.b1.block((h1 - 1) * n_, (h2 - 1) * n_, h2 * n_, h1 * n_),
        permuted.b0.block((h1 - 1) * n_, (h2 - 1) * n_, h2 * n_, h1 * n_), n_);
  }
  BlockPencil<S> l1() const {  // (h1-1) x h1 blocks, top-right
    const Index n_ = n();
    return BlockPencil<S>(permuted.b1.block(0, (h2 - 1) * n_, (h1 - 1) * n_, h1 * n_),
                          permuted.b0.block(0, (h2 - 1) * n_, (h1 - 1) * n_, h1 * n_), n_);
  }
  BlockPencil<S> l2() const {  // (h2-1) x h2 wing pencil (transpose of bottom-left)
    const Index n_ = n();
    DenseMatrix<S> b1 = permuted.b1.block((h1 - 1) * n_, 0, h2 * n_, (h2 - 1) * n_);
    DenseMatrix<S> b0 = permuted.b0.block((h1 - 1) * n_, 0, h2 * n_, (h2 - 1) * n_);
    return BlockPencil<S>(b1.transpose(), b0.transpose(), n_);
  }
  BlockPencil<S> zero_corner() const {
    const Index n_ = n();
    return BlockPencil<S>(permuted.b1.block(0, 0, (h1 - 1) * n_, (h2 - 1) * n_),
                          permuted.b0.block(0, 0, (h1 - 1) * n_, (h2 - 1) * n_), n_);
  }
};

template <class S>
void validate_reversed_view(const ReversedEbkView<S>& v, const MatrixPolynomial<S>& p,
                            double tol = 0.0) {
  ensure(v.h1 + v.h2 - 1 == v.k(), "reversed view: h1 + h2 - 1 != k");
  const auto z = v.zero_corner();
  ensure(z.b1.template lpNorm<Eigen::Infinity>() <= tol &&
             z.b0.template lpNorm<Eigen::Infinity>() <= tol,
         "reversed view: corner not zero");
  ensure(is_wing(v.l1(), tol) && is_wing(v.l2(), tol), "reversed view: wings invalid");
  ensure(check_as(v.body(), p, tol), "reversed view: body fails the AS condition");
  const auto body = v.body();
  ensure(matrices_match<S>(DenseMatrix<S>(body.b1_block(v.h2, v.h1)), p.coeff(1), tol) &&
             matrices_match<S>(DenseMatrix<S>(body.b0_block(v.h2, v.h1)), p.coeff(0), tol),
         "reversed view: trailing body block != lambda A_1 + A_0");
}

// recognize_ebk: check the identity partition of C at the given (p, q).
template <class S>
std::optional<EbkView<S>> recognize_ebk(const BlockPencil<S>& c, Index p, Index q,
                                        double tol = 0.0) {
  const Index k = c.grid_rows();
  if (c.grid_cols() != k || p < 0 || q < 0 || p + q + 1 != k) return std::nullopt;
  std::vector<Index> id(k);
  std::iota(id.begin(), id.end(), Index{1});
  EbkView<S> v = make_view(c, id, id, p, q);
  if (!view_structure_ok(v, tol)) return std::nullopt;
  return v;
}

// All (p, q) identity partitions of C that are valid extended block
// Kronecker pencils.
template <class S>
std::vector<EbkView<S>> enumerate_ebk(const BlockPencil<S>& c, double tol = 0.0) {
  std::vector<EbkView<S>> out;
  const Index k = c.grid_rows();
  for (Index p = 0; p <= k - 1; ++p)
    if (auto v = recognize_ebk(c, p, k - 1 - p, tol)) out.push_back(*v);
  return out;
}

namespace detail {

// Chain-orders the body columns of L against a fixed wing-row set: the body
// columns form the unique path col_1 -> ... -> col_{p+1} with
// lambda-part(col_{j+1}) = -const-part(col_j) over the wing rows, starting at
// the column with zero lambda-part.  Wing rows are then sorted by the ordinal
// of their first nonzero block over the ordered body columns (the order that
// makes the wing factor block-lower-triangular when possible).
struct ChainOrder {
  std::vector<Index> body, wing;
};

template <class S>
std::optional<std::vector<Index>> order_by_chain(
    const std::vector<DenseMatrix<S>>& u, const std::vector<DenseMatrix<S>>& v,
    const std::vector<Index>& cols, double tol) {
  auto near = [&](const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
    if (tol == 0.0) return a == b;
    return (a - b).template lpNorm<Eigen::Infinity>() <=
           tol * std::max(1.0, a.template lpNorm<Eigen::Infinity>());
  };
  auto zero = [&](const DenseMatrix<S>& a) {
    return a.template lpNorm<Eigen::Infinity>() <= tol;
  };
  const size_t m = cols.size();
  if (m <= 1) return std::vector<Index>(cols);
  std::vector<char> used(m, 0);
  std::vector<Index> order;
  // depth-first over start candidates and successors; generically unique
  std::function<bool()> extend = [&]() -> bool {
    if (order.size() == m) {
      return zero(u[order.back()]);
    }
    for (size_t c = 0; c < m; ++c) {
      if (used[c]) continue;
      const bool ok = order.empty() ? zero(v[c]) : near(v[c], DenseMatrix<S>(-u[order.back()]));
      if (!ok) continue;
      used[c] = 1;
      order.push_back(static_cast<Index>(c));
      if (extend()) return true;
      order.pop_back();
      used[c] = 0;
    }
    return false;
  };
  if (!extend()) return std::nullopt;
  std::vector<Index> out;
  for (Index idx : order) out.push_back(cols[idx]);
  return out;
}

}  // namespace detail

// Builds an EBK view of L from known wing-row and wing-column position sets,
// ordering body and wing blocks by the chain relations.
template <class S>
std::optional<EbkView<S>> chain_view(const BlockPencil<S>& l,
                                     std::vector<Index> wing_rows,
                                     std::vector<Index> wing_cols, double tol = 0.0) {
  const Index k = l.grid_rows(), n = l.block_size;
  std::sort(wing_rows.begin(), wing_rows.end());
  std::sort(wing_cols.begin(), wing_cols.end());
  const Index p = static_cast<Index>(wing_rows.size());
  const Index q = static_cast<Index>(wing_cols.size());
  if (p + q + 1 != k) return std::nullopt;
  std::vector<Index> body_rows, body_cols;
  for (Index i = 1; i <= k; ++i) {
    if (!std::binary_search(wing_rows.begin(), wing_rows.end(), i)) body_rows.push_back(i);
    if (!std::binary_search(wing_cols.begin(), wing_cols.end(), i)) body_cols.push_back(i);
  }
  auto stack_rows = [&](const DenseMatrix<S>& m, const std::vector<Index>& rows, Index col) {
    DenseMatrix<S> out(static_cast<Index>(rows.size()) * n, n);
    for (size_t i = 0; i < rows.size(); ++i)
      out.block(static_cast<Index>(i) * n, 0, n, n) =
          m.block((rows[i] - 1) * n, (col - 1) * n, n, n);
    return out;
  };
  // Order body columns by the K1 chain over wing rows.
  std::vector<Index> body_col_order = body_cols;
  if (p >= 1) {
    std::vector<DenseMatrix<S>> u, v;
    for (Index c : body_cols) {
      u.push_back(stack_rows(l.b0, wing_rows, c));
      v.push_back(stack_rows(l.b1, wing_rows, c));
    }
    auto ord = detail::order_by_chain<S>(u, v, body_cols, tol);
    if (!ord) return std::nullopt;
    body_col_order = *ord;
  }
  // Order body rows by the K2 chain over wing columns.
  std::vector<Index> body_row_order = body_rows;
  if (q >= 1) {
    std::vector<DenseMatrix<S>> u, v;
    auto stack_cols = [&](const DenseMatrix<S>& m, Index row) {
      DenseMatrix<S> out(n, q * n);
      for (size_t j = 0; j < wing_cols.size(); ++j)
        out.block(0, static_cast<Index>(j) * n, n, n) =
            m.block((row - 1) * n, (wing_cols[j] - 1) * n, n, n);
      return out;
    };
    for (Index r : body_rows) {
      u.push_back(stack_cols(l.b0, r));
      v.push_back(stack_cols(l.b1, r));
    }
    auto ord = detail::order_by_chain<S>(u, v, body_rows, tol);
    if (!ord) return std::nullopt;
    body_row_order = *ord;
  }
  // Wing rows sorted by first nonzero block over the ordered body columns.
  auto first_nonzero = [&](Index wr) {
    for (size_t j = 0; j < body_col_order.size(); ++j) {
      const Index c = body_col_order[j];
      if (l.b0.block((wr - 1) * n, (c - 1) * n, n, n).template lpNorm<Eigen::Infinity>() > tol ||
          l.b1.block((wr - 1) * n, (c - 1) * n, n, n).template lpNorm<Eigen::Infinity>() > tol)
        return static_cast<Index>(j);
    }
    return static_cast<Index>(body_col_order.size());
  };
  std::vector<Index> wing_row_order = wing_rows;
  std::stable_sort(wing_row_order.begin(), wing_row_order.end(),
                   [&](Index a, Index b) { return first_nonzero(a) < first_nonzero(b); });
  auto first_nonzero_col = [&](Index wc) {
    for (size_t i = 0; i < body_row_order.size(); ++i) {
      const Index r = body_row_order[i];
      if (l.b0.block((r - 1) * n, (wc - 1) * n, n, n).template lpNorm<Eigen::Infinity>() > tol ||
          l.b1.block((r - 1) * n, (wc - 1) * n, n, n).template lpNorm<Eigen::Infinity>() > tol)
        return static_cast<Index>(i);
    }
    return static_cast<Index>(body_row_order.size());
  };
  std::vector<Index> wing_col_order = wing_cols;
  std::stable_sort(wing_col_order.begin(), wing_col_order.end(),
                   [&](Index a, Index b) { return first_nonzero_col(a) < first_nonzero_col(b); });

  std::vector<Index> row_order = body_row_order, col_order = body_col_order;
  row_order.insert(row_order.end(), wing_row_order.begin(), wing_row_order.end());
  col_order.insert(col_order.end(), wing_col_order.begin(), wing_col_order.end());
  EbkView<S> view = make_view(l, row_order, col_order, p, q);
  if (!view_structure_ok(view, tol)) return std::nullopt;
  return view;
}

// Reorders the wing rows and wing columns of a view by the first-nonzero
// tie-break (the order that makes the wing factors block-lower-triangular
// where possible); body orders are untouched.  All wing reorderings of a
// valid view stay valid, so this only canonicalizes the output.
template <class S>
EbkView<S> canonicalize_wing_order(const EbkView<S>& v, double tol = 0.0) {
  const Index n = v.n();
  const auto& l = v.source;
  auto block_nonzero = [&](Index r, Index c) {
    return l.b0.block((r - 1) * n, (c - 1) * n, n, n).template lpNorm<Eigen::Infinity>() > tol ||
           l.b1.block((r - 1) * n, (c - 1) * n, n, n).template lpNorm<Eigen::Infinity>() > tol;
  };
  std::vector<Index> rows = v.row_order, cols = v.col_order;
  auto first_nz_row = [&](Index wr) {
    for (Index j = 0; j <= v.p; ++j)
      if (block_nonzero(wr, v.col_order[j])) return j;
    return v.p + 1;
  };
  auto first_nz_col = [&](Index wc) {
    for (Index i = 0; i <= v.q; ++i)
      if (block_nonzero(v.row_order[i], wc)) return i;
    return v.q + 1;
  };
  std::stable_sort(rows.begin() + (v.q + 1), rows.end(),
                   [&](Index a, Index b) { return first_nz_row(a) < first_nz_row(b); });
  std::stable_sort(cols.begin() + (v.p + 1), cols.end(),
                   [&](Index a, Index b) { return first_nz_col(a) < first_nz_col(b); });
  return make_view(l, rows, cols, v.p, v.q);
}

// permute_to_ebk: find block permutations exposing L as an extended
// (p, n, q, n)-block Kronecker pencil.  Tries the identity partition first,
// then searches wing-row/column subsets with a zero crossing block.
template <class S>
std::optional<EbkView<S>> permute_to_ebk(const BlockPencil<S>& l, Index p, Index q,
                                         double tol = 0.0) {
  const Index k = l.grid_rows();
  if (l.grid_cols() != k || p < 0 || q < 0 || p + q + 1 != k) return std::nullopt;
  if (auto v = recognize_ebk(l, p, q, tol)) return v;
  const Index n = l.block_size;
  auto block_zero = [&](Index i, Index j) {
    return l.b1.block((i - 1) * n, (j - 1) * n, n, n).template lpNorm<Eigen::Infinity>() <= tol &&
           l.b0.block((i - 1) * n, (j - 1) * n, n, n).template lpNorm<Eigen::Infinity>() <= tol;
  };
  // zero_cols[i]: columns j with block (i, j) = 0
  std::vector<std::vector<Index>> zero_cols(k + 1);
  for (Index i = 1; i <= k; ++i)
    for (Index j = 1; j <= k; ++j)
      if (block_zero(i, j)) zero_cols[i].push_back(j);
  std::vector<Index> rows;
  std::optional<EbkView<S>> found;
  std::function<void(Index)> choose_rows = [&](Index next) {
    if (found) return;
    if (static_cast<Index>(rows.size()) == p) {
      std::vector<Index> common;
      if (p == 0) {
        common.resize(k);
        std::iota(common.begin(), common.end(), Index{1});
      } else {
        common = zero_cols[rows[0]];
        for (size_t i = 1; i < rows.size(); ++i) {
          std::vector<Index> tmp;
          std::set_intersection(common.begin(), common.end(), zero_cols[rows[i]].begin(),
                                zero_cols[rows[i]].end(), std::back_inserter(tmp));
          common = std::move(tmp);
        }
      }
      if (static_cast<Index>(common.size()) < q) return;
      // choose q wing columns among the common zero columns
      std::vector<Index> cols;
      std::function<void(size_t)> choose_cols = [&](size_t start) {
        if (found) return;
        if (static_cast<Index>(cols.size()) == q) {
          if (auto v = chain_view(l, rows, cols, tol)) found = v;
          return;
        }
        for (size_t t = start; t < common.size(); ++t) {
          cols.push_back(common[t]);
          choose_cols(t + 1);
          cols.pop_back();
        }
      };
      choose_cols(0);
      return;
    }
    for (Index r = next; r <= k; ++r) {
      if (static_cast<Index>(zero_cols[r].size()) < q) continue;
      rows.push_back(r);
      choose_rows(r + 1);
      rows.pop_back();
      if (found) return;
    }
  };
  choose_rows(1);
  return found;
}

}  // namespace fk
