// Elementary matrices M_i(B), M_{-i}(B) on a k x k block grid, products over
// index tuples with matrix assignments, and the fast string-product form.
#pragma once

#include "fiedlerkron/core.hpp"
#include "fiedlerkron/tuples.hpp"

#include <set>

namespace fk {

// M_{-0}(B) = M_0(B)^{-1} and M_k(B) = M_{-k}(B)^{-1} are encoded with the
// inverse flag; index tuples cannot hold -0 as a plain integer.
struct ElementaryFactor {
  int index = 0;
  bool inverse = false;  // true selects M_{-0} (index 0) or M_k (index k)
};

template <class S>
using MatrixAssignment = std::vector<DenseMatrix<S>>;

template <class S>
DenseMatrix<S> invert_or_throw(const DenseMatrix<S>& b, const char* what) {
  Eigen::FullPivLU<DenseMatrix<S>> lu(b);
  require(lu.isInvertible(), std::string("singular payload for ") + what);
  return lu.inverse();
}

template <class S>
DenseMatrix<S> elementary(Index k, Index n, const ElementaryFactor& f,
                          const DenseMatrix<S>& payload) {
  require(k >= 1 && n >= 1, "elementary: need k >= 1, n >= 1");
  require(payload.rows() == n && payload.cols() == n, "elementary: payload must be n x n");
  const int i = f.index;
  require(std::abs(i) <= k, "elementary: |index| exceeds k");
  if (f.inverse) {
    require(i == 0 || i == k, "elementary: inverse flag only applies to -0 and k");
    const DenseMatrix<S> binv = invert_or_throw(payload, i == 0 ? "M_{-0}" : "M_k");
    return elementary(k, n, ElementaryFactor{i == 0 ? 0 : -static_cast<int>(k), false},
                      binv);
  }
  require(i != static_cast<int>(k), "elementary: M_k requires the inverse flag");
  DenseMatrix<S> m = DenseMatrix<S>::Identity(k * n, k * n);
  if (k == 1) {
    m = payload;  // both M_0 and M_{-1} degenerate to the single block
    return m;
  }
  if (i == 0) {
    m.block((k - 1) * n, (k - 1) * n, n, n) = payload;
  } else if (i == -static_cast<int>(k)) {
    m.block(0, 0, n, n) = payload;
  } else {
    const Index a = std::abs(i);
    const Index r = (k - a - 1) * n;  // top-left corner of the 2x2 window
    auto window = m.block(r, r, 2 * n, 2 * n);
    window.setZero();
    if (i > 0) {
      window.block(0, 0, n, n) = payload;
      window.block(0, n, n, n) = DenseMatrix<S>::Identity(n, n);
      window.block(n, 0, n, n) = DenseMatrix<S>::Identity(n, n);
    } else {
      window.block(0, n, n, n) = DenseMatrix<S>::Identity(n, n);
      window.block(n, 0, n, n) = DenseMatrix<S>::Identity(n, n);
      window.block(n, n, n, n) = payload;
    }
  }
  return m;
}

// M_t(X) = M_{t_1}(X_1) ... M_{t_r}(X_r); the empty tuple gives I_{kn}.
template <class S>
DenseMatrix<S> elementary_product(const IndexTuple& t, const MatrixAssignment<S>& x,
                                  Index k, Index n) {
  require(t.size() == x.size(), "product: assignment length mismatch");
  DenseMatrix<S> acc = DenseMatrix<S>::Identity(k * n, k * n);
  for (size_t j = 0; j < t.size(); ++j) {
    require(!is_neg_zero(t[j]) && t[j] >= -static_cast<int>(k) && t[j] <= static_cast<int>(k) - 1,
            "product: index out of {-k : k-1}");
    acc = acc * elementary(k, n, ElementaryFactor{t[j], false}, x[j]);
  }
  return acc;
}

// Trivial assignment: index i >= 0 gets -A_i, index -i < 0 gets A_i.
template <class S>
MatrixAssignment<S> trivial_assignment(const MatrixPolynomial<S>& p, const IndexTuple& t) {
  MatrixAssignment<S> out;
  out.reserve(t.size());
  for (int v : t) {
    require(!is_neg_zero(v), "trivial_assignment: -0 not allowed in tuples");
    require(std::abs(v) <= p.grade(), "trivial_assignment: index exceeds grade");
    out.push_back(v >= 0 ? DenseMatrix<S>(-p.coeff(v)) : DenseMatrix<S>(p.coeff(-v)));
  }
  return out;
}

template <class S>
DenseMatrix<S> trivial_factor(const MatrixPolynomial<S>& p, const IndexTuple& t) {
  return elementary_product(t, trivial_assignment(p, t), p.grade(), p.rows());
}

template <class S>
MatrixAssignment<S> rev_assignment(const MatrixAssignment<S>& x) {
  return MatrixAssignment<S>(x.rbegin(), x.rend());
}

// M_{(a:b)}(X) assembled directly from its block pattern; X is ordered
// (X_a, ..., X_b) to match the string.
template <class S>
DenseMatrix<S> string_product_fast(int a, int b, const MatrixAssignment<S>& x,
                                   Index k, Index n) {
  require(0 <= a && a <= b && b <= static_cast<int>(k) - 1, "string_product_fast: bad string");
  require(static_cast<int>(x.size()) == b - a + 1, "string_product_fast: assignment mismatch");
  DenseMatrix<S> m = DenseMatrix<S>::Identity(k * n, k * n);
  const Index w = (a != 0) ? (b - a + 2) : (b + 1);  // window size in blocks
  const Index r0 = (k - b - 1);                      // first window block (0-based)
  auto window = m.block(r0 * n, r0 * n, w * n, w * n);
  window.setZero();
  for (Index row = 0; row < w; ++row) {
    const int val = b - static_cast<int>(row);  // X_b down the first column
    if (val >= a)
      window.block(row * n, 0, n, n) = x[val - a];
    else
      window.block(row * n, 0, n, n) = DenseMatrix<S>::Identity(n, n);  // a != 0 tail row
    if (row + 1 < w && (a != 0 || val >= 1))
      window.block(row * n, (row + 1) * n, n, n) = DenseMatrix<S>::Identity(n, n);
  }
  return m;
}

// Lemma "column locations": all block-columns of M_t(X) are e_i (x) I_n except
// those in positions k - h for h in heads(t); block-rows likewise with
// heads(rev(t)).  Returns the two nontrivial position sets (1-based).
struct ColumnStructure {
  std::set<Index> nontrivial_cols;
  std::set<Index> nontrivial_rows;
};

template <class S>
ColumnStructure column_structure(const IndexTuple& t, const MatrixAssignment<S>& x,
                                 Index k, Index n) {
  ColumnStructure cs;
  for (int h : heads(t)) cs.nontrivial_cols.insert(k - h);
  for (int h : heads(rev_tuple(t))) cs.nontrivial_rows.insert(k - h);
  // Verify the trivial ones against the materialized product.
  const DenseMatrix<S> m = elementary_product(t, x, k, n);
  for (Index j = 1; j <= k; ++j) {
    if (cs.nontrivial_cols.count(j)) continue;
    bool ok = false;
    for (Index i = 1; i <= k && !ok; ++i) {
      DenseMatrix<S> col = DenseMatrix<S>::Zero(k * n, n);
      col.block((i - 1) * n, 0, n, n) = DenseMatrix<S>::Identity(n, n);
      ok = (m.block(0, (j - 1) * n, k * n, n) == col);
    }
    ensure(ok, "column_structure: a predicted trivial block-column is not e_i (x) I_n");
  }
  for (Index i = 1; i <= k; ++i) {
    if (cs.nontrivial_rows.count(i)) continue;
    bool ok = false;
    for (Index j = 1; j <= k && !ok; ++j) {
      DenseMatrix<S> row = DenseMatrix<S>::Zero(n, k * n);
      row.block(0, (j - 1) * n, n, n) = DenseMatrix<S>::Identity(n, n);
      ok = (m.block((i - 1) * n, 0, n, k * n) == row);
    }
    ensure(ok, "column_structure: a predicted trivial block-row is not e_i^T (x) I_n");
  }
  return cs;
}

// Lemma revB as a runtime self-check.
template <class S>
bool block_transpose_law_check(const IndexTuple& t, const MatrixAssignment<S>& x,
                               Index k, Index n) {
  const DenseMatrix<S> lhs = block_transpose(elementary_product(t, x, k, n), n);
  const DenseMatrix<S> rhs = elementary_product(rev_tuple(t), rev_assignment(x), k, n);
  return lhs == rhs;
}

}  // namespace fk
