// Core substrate: dense matrices over real/complex doubles, matrix
// polynomials, block pencils, block permutations and block transposition.
// All block positions in this library are 1-based, matching the usual
// block-matrix conventions for these pencils.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fk {

using Index = Eigen::Index;
using Real = double;
using Cplx = std::complex<double>;

template <class S>
using DenseMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
struct ScalarTraits {
  static constexpr bool is_complex = false;
};
template <>
struct ScalarTraits<Cplx> {
  static constexpr bool is_complex = true;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Internal consistency failures (a theorem-backed assertion not holding).
inline void ensure(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error(msg);
}

// --- matrix comparison policy ------------------------------------------------

constexpr double kStructuralTol = 1e-12;

template <class S>
bool exactly_equal(const DenseMatrix<S>& a, const DenseMatrix<S>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

template <class S>
bool approx_equal(const DenseMatrix<S>& a, const DenseMatrix<S>& b,
                  double tol = kStructuralTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  double scale = std::max<double>(1.0, a.template lpNorm<Eigen::Infinity>());
  return (a - b).template lpNorm<Eigen::Infinity>() <= tol * scale;
}

// --- matrix polynomials ------------------------------------------------------

// P(lambda) = sum A_i lambda^i, coefficients stored from A_0 up to A_k.
// The grade is the declared top index; trailing coefficients may be zero.
template <class S>
struct MatrixPolynomial {
  std::vector<DenseMatrix<S>> coeffs;

  MatrixPolynomial() = default;
  explicit MatrixPolynomial(std::vector<DenseMatrix<S>> c) : coeffs(std::move(c)) {
    require(!coeffs.empty(), "polynomial needs at least one coefficient");
    for (const auto& a : coeffs)
      require(a.rows() == coeffs[0].rows() && a.cols() == coeffs[0].cols(),
              "all coefficients must share dimensions");
  }

  static MatrixPolynomial zero(Index rows, Index cols, Index grade) {
    std::vector<DenseMatrix<S>> c(grade + 1, DenseMatrix<S>::Zero(rows, cols));
    return MatrixPolynomial(std::move(c));
  }

  Index grade() const { return static_cast<Index>(coeffs.size()) - 1; }
  Index rows() const { return coeffs[0].rows(); }
  Index cols() const { return coeffs[0].cols(); }

  // Largest i with A_i != 0; -1 for the zero polynomial.
  Index degree() const {
    for (Index i = grade(); i >= 0; --i)
      if (!coeffs[i].isZero(0.0)) return i;
    return -1;
  }

  const DenseMatrix<S>& coeff(Index i) const { return coeffs[static_cast<size_t>(i)]; }
};

template <class S>
DenseMatrix<S> eval(const MatrixPolynomial<S>& p, S lambda0) {
  DenseMatrix<S> acc = p.coeffs.back();
  for (Index i = p.grade() - 1; i >= 0; --i) acc = (acc * lambda0 + p.coeff(i)).eval();
  return acc;
}

// rev_k P(lambda) = lambda^k P(1/lambda): coefficient list reversed at grade k.
template <class S>
MatrixPolynomial<S> reversal(const MatrixPolynomial<S>& p, Index k) {
  require(k >= p.degree(), "reversal grade below degree");
  std::vector<DenseMatrix<S>> c(k + 1, DenseMatrix<S>::Zero(p.rows(), p.cols()));
  for (Index i = 0; i <= std::min(k, p.grade()); ++i) c[k - i] = p.coeff(i);
  return MatrixPolynomial<S>(std::move(c));
}

template <class S>
MatrixPolynomial<S> operator-(const MatrixPolynomial<S>& p) {
  auto c = p.coeffs;
  for (auto& a : c) a = -a;
  return MatrixPolynomial<S>(std::move(c));
}

// --- block pencils -----------------------------------------------------------

// lambda*B1 + B0 with a uniform n x n block grid.
template <class S>
struct BlockPencil {
  DenseMatrix<S> b1, b0;
  Index block_size = 1;

  BlockPencil() = default;
  BlockPencil(DenseMatrix<S> b1_, DenseMatrix<S> b0_, Index n)
      : b1(std::move(b1_)), b0(std::move(b0_)), block_size(n) {
    require(b1.rows() == b0.rows() && b1.cols() == b0.cols(),
            "pencil coefficients must share dimensions");
    require(n >= 1 && b1.rows() % n == 0 && b1.cols() % n == 0,
            "pencil dimensions must be divisible by the block size");
  }

  Index grid_rows() const { return b1.rows() / block_size; }
  Index grid_cols() const { return b1.cols() / block_size; }

  // 1-based block accessors.
  auto b1_block(Index i, Index j) const {
    return b1.block((i - 1) * block_size, (j - 1) * block_size, block_size, block_size);
  }
  auto b0_block(Index i, Index j) const {
    return b0.block((i - 1) * block_size, (j - 1) * block_size, block_size, block_size);
  }

  DenseMatrix<S> eval(S lambda0) const { return lambda0 * b1 + b0; }

  MatrixPolynomial<S> as_polynomial() const {
    return MatrixPolynomial<S>({b0, b1});
  }

  // rev_1: swap the two coefficients.
  BlockPencil reversed() const { return BlockPencil(b0, b1, block_size); }

  BlockPencil operator-() const { return BlockPencil(-b1, -b0, block_size); }
};

template <class S>
BlockPencil<S> operator*(const DenseMatrix<S>& m, const BlockPencil<S>& p) {
  return BlockPencil<S>(m * p.b1, m * p.b0, p.block_size);
}

template <class S>
BlockPencil<S> operator*(const BlockPencil<S>& p, const DenseMatrix<S>& m) {
  return BlockPencil<S>(p.b1 * m, p.b0 * m, p.block_size);
}

template <class S>
bool exactly_equal(const BlockPencil<S>& a, const BlockPencil<S>& b) {
  return a.block_size == b.block_size && exactly_equal(a.b1, b.b1) && exactly_equal(a.b0, b.b0);
}

template <class S>
bool approx_equal(const BlockPencil<S>& a, const BlockPencil<S>& b,
                  double tol = kStructuralTol) {
  return a.block_size == b.block_size && approx_equal(a.b1, b.b1, tol) &&
         approx_equal(a.b0, b.b0, tol);
}

// --- block permutations ------------------------------------------------------

// order[i] (1-based values) is the source block selected into slot i+1, so
// the permutation matrix Pi has block I_n at (order[i], i+1).  Applying
// Pi^B * M * Pi_r reorders block rows by the left order and block columns by
// the right order.
struct BlockPermutation {
  std::vector<Index> order;
  Index block_size = 1;

  BlockPermutation() = default;
  BlockPermutation(std::vector<Index> ord, Index n) : order(std::move(ord)), block_size(n) {
    std::vector<bool> seen(order.size(), false);
    for (Index v : order) {
      require(v >= 1 && v <= static_cast<Index>(order.size()) && !seen[v - 1],
              "block permutation must be a bijection on 1..k");
      seen[v - 1] = true;
    }
  }

  static BlockPermutation identity(Index k, Index n) {
    std::vector<Index> ord(k);
    std::iota(ord.begin(), ord.end(), Index{1});
    return BlockPermutation(std::move(ord), n);
  }

  Index size() const { return static_cast<Index>(order.size()); }
};

template <class S>
DenseMatrix<S> to_matrix(const BlockPermutation& c) {
  const Index k = c.size(), n = c.block_size;
  DenseMatrix<S> pi = DenseMatrix<S>::Zero(k * n, k * n);
  for (Index i = 0; i < k; ++i)
    pi.block((c.order[i] - 1) * n, i * n, n, n) = DenseMatrix<S>::Identity(n, n);
  return pi;
}

inline BlockPermutation compose(const BlockPermutation& a, const BlockPermutation& b) {
  require(a.size() == b.size() && a.block_size == b.block_size,
          "composing incompatible block permutations");
  std::vector<Index> ord(a.order.size());
  for (size_t i = 0; i < ord.size(); ++i) ord[i] = a.order[b.order[i] - 1];
  return BlockPermutation(std::move(ord), a.block_size);
}

inline BlockPermutation inverse(const BlockPermutation& c) {
  std::vector<Index> ord(c.order.size());
  for (size_t i = 0; i < ord.size(); ++i) ord[c.order[i] - 1] = static_cast<Index>(i) + 1;
  return BlockPermutation(std::move(ord), c.block_size);
}

// conjugation R_k . R_k: slot i picks what the reversed permutation picked.
inline BlockPermutation sip_conjugate(const BlockPermutation& c) {
  const Index k = c.size();
  std::vector<Index> ord(c.order.size());
  for (Index i = 1; i <= k; ++i) ord[i - 1] = k + 1 - c.order[k - i];
  return BlockPermutation(std::move(ord), c.block_size);
}

// --- block sip matrix and block transpose ------------------------------------

template <class S>
DenseMatrix<S> block_sip(Index s, Index n) {
  require(s >= 0 && n >= 1, "block_sip needs s >= 0, n >= 1");
  DenseMatrix<S> r = DenseMatrix<S>::Zero(s * n, s * n);
  for (Index i = 0; i < s; ++i)
    r.block(i * n, (s - 1 - i) * n, n, n) = DenseMatrix<S>::Identity(n, n);
  return r;
}

// Block (i,j) of the result is block (j,i) of the input; blocks are not
// internally transposed.
template <class S>
DenseMatrix<S> block_transpose(const DenseMatrix<S>& m, Index n) {
  require(m.rows() % n == 0 && m.cols() % n == 0,
          "block_transpose: dimensions not divisible by block size");
  const Index p = m.rows() / n, q = m.cols() / n;
  DenseMatrix<S> out(q * n, p * n);
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < p; ++j)
      out.block(i * n, j * n, n, n) = m.block(j * n, i * n, n, n);
  return out;
}

template <class S>
BlockPencil<S> block_transpose(const BlockPencil<S>& p) {
  return BlockPencil<S>(block_transpose(p.b1, p.block_size),
                        block_transpose(p.b0, p.block_size), p.block_size);
}

// Reorder block rows/columns of M: slot i of the result takes source block
// row_order[i] (all 1-based).  Equivalent to Pi_l^B * M * Pi_r.
template <class S>
DenseMatrix<S> permute_blocks(const DenseMatrix<S>& m, Index n,
                              const std::vector<Index>& row_order,
                              const std::vector<Index>& col_order) {
  const Index r = m.rows() / n, c = m.cols() / n;
  require(static_cast<Index>(row_order.size()) == r &&
              static_cast<Index>(col_order.size()) == c,
          "permute_blocks: order length mismatch");
  DenseMatrix<S> out(m.rows(), m.cols());
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j)
      out.block(i * n, j * n, n, n) =
          m.block((row_order[i] - 1) * n, (col_order[j] - 1) * n, n, n);
  return out;
}

template <class S>
BlockPencil<S> permute_blocks(const BlockPencil<S>& p,
                              const std::vector<Index>& row_order,
                              const std::vector<Index>& col_order) {
  return BlockPencil<S>(permute_blocks(p.b1, p.block_size, row_order, col_order),
                        permute_blocks(p.b0, p.block_size, row_order, col_order),
                        p.block_size);
}

}  // namespace fk
