// Constructive derivations of extended block Kronecker views for the four
// Fiedler-like families: the Fiedler base case, the update steps for left
// multiplication by M_{-x} and right multiplication by M_x, the q-sided and
// z-sided GFPR reductions, the full GFPR assembly, the proper-GFP induction
// over its simple pair, and the normalization of nonproper GFPs.
#pragma once

#include "fiedlerkron/kronecker.hpp"

namespace fk {

// --- Fiedler base case ---------------------------------------------------------

// Wing columns sit at positions k-j for j in {0:k-2} \ heads(q); wing rows at
// k-j for j not in heads(rev(q)).  The chain recognizer then fixes all four
// block orders uniquely.
template <class S>
EbkView<S> fiedler_ebk(const MatrixPolynomial<S>& p, const IndexTuple& q) {
  const Index k = p.grade(), n = p.rows();
  const BlockPencil<S> l = fiedler(p, q);
  if (k == 1) {
    EbkView<S> v = make_view(l, {1}, {1}, Index{0}, Index{0});
    validate_view(v, p);
    return v;
  }
  auto hq = heads(q);
  auto hrq = heads(rev_tuple(q));
  std::vector<Index> wing_cols, wing_rows;
  for (int j = 0; j <= static_cast<int>(k) - 2; ++j) {
    if (!hq.count(j)) wing_cols.push_back(k - j);
    if (!hrq.count(j)) wing_rows.push_back(k - j);
  }
  auto view = chain_view(l, wing_rows, wing_cols);
  ensure(view.has_value(), "fiedler_ebk: chain recognition failed");
  ensure(view->p == h_count(q) - 1 && view->q == h_count(rev_tuple(q)) - 1,
         "fiedler_ebk: partition disagrees with the head counts");
  // The permuted form of a Fiedler pencil is a plain block Kronecker pencil
  // with first body row/column fixed and lambda A_k + A_{k-1} leading.
  const auto k1 = view->k1(), k2 = view->k2();
  const auto lp = l_pencil<S>(view->p, n), lq = l_pencil<S>(view->q, n);
  ensure(exactly_equal(k1, lp) && exactly_equal(k2, lq),
         "fiedler_ebk: wings are not plain L_s blocks");
  ensure(view->row_order[0] == 1 && view->col_order[0] == 1,
         "fiedler_ebk: first body block-row/column moved");
  const auto body = view->body();
  ensure(exactly_equal(DenseMatrix<S>(body.b1_block(1, 1)), p.coeff(k)) &&
             exactly_equal(DenseMatrix<S>(body.b0_block(1, 1)), p.coeff(k - 1)),
         "fiedler_ebk: body (1,1) block != lambda A_k + A_{k-1}");
  validate_view(*view, p);
  return *view;
}

// --- multiplication step tracking ------------------------------------------------

// L~ = L * M_x(X).  Requires block-column k-x of L to be a wing column (for
// x = 0, column k).  When column k-x+1 is a body column the two column slots
// swap; otherwise the wing content absorbs X.
template <class S>
EbkView<S> right_mult_step(const EbkView<S>& view, int x, const DenseMatrix<S>& payload,
                           const MatrixPolynomial<S>& p) {
  const Index k = view.k(), n = view.n();
  require(x >= 0 && x <= static_cast<int>(k) - 1, "right_mult_step: x out of range");
  const BlockPencil<S> lt =
      view.source * elementary(k, n, ElementaryFactor{x, false}, payload);
  auto slot_of_col = [&](Index src) {
    auto it = std::find(view.col_order.begin(), view.col_order.end(), src);
    return static_cast<Index>(it - view.col_order.begin()) + 1;
  };
  auto is_wing_col_slot = [&](Index slot) { return slot > view.p + 1; };
  ensure(is_wing_col_slot(slot_of_col(k - x)),
         "right_mult_step: block-column k-x is not a wing column");
  std::vector<Index> col_order = view.col_order;
  if (x != 0 && !is_wing_col_slot(slot_of_col(k - x + 1))) {
    for (Index& c : col_order) {
      if (c == k - x) c = k - x + 1;
      else if (c == k - x + 1) c = k - x;
    }
  }
  EbkView<S> out = make_view(lt, view.row_order, col_order, view.p, view.q);
  validate_view(out, p);
  return out;
}

// L~ = M_{-x}(X) * L.  Requires block-row k-x of L to be a body row and
// block-row k-x+1 a wing row; the two row slots swap.
template <class S>
EbkView<S> left_mult_step(const EbkView<S>& view, int x, const DenseMatrix<S>& payload,
                          const MatrixPolynomial<S>& p) {
  const Index k = view.k(), n = view.n();
  require(x >= 1 && x <= static_cast<int>(k) - 1, "left_mult_step: x out of range");
  const BlockPencil<S> lt =
      elementary(k, n, ElementaryFactor{-x, false}, payload) * view.source;
  auto slot_of_row = [&](Index src) {
    auto it = std::find(view.row_order.begin(), view.row_order.end(), src);
    return static_cast<Index>(it - view.row_order.begin()) + 1;
  };
  auto is_wing_row_slot = [&](Index slot) { return slot > view.q + 1; };
  ensure(!is_wing_row_slot(slot_of_row(k - x)), "left_mult_step: row k-x must be a body row");
  ensure(is_wing_row_slot(slot_of_row(k - x + 1)),
         "left_mult_step: row k-x+1 must be a wing row");
  std::vector<Index> row_order = view.row_order;
  for (Index& r : row_order) {
    if (r == k - x) r = k - x + 1;
    else if (r == k - x + 1) r = k - x;
  }
  EbkView<S> out = make_view(lt, row_order, view.col_order, view.p, view.q);
  validate_view(out, p);
  return out;
}

// Block transpose of a view: (Pi_l^B L Pi_r)^B = Pi_r^B L^B Pi_l swaps the
// two wing pencils and transposes the body.
template <class S>
EbkView<S> transpose_view(const EbkView<S>& view, const MatrixPolynomial<S>& p) {
  EbkView<S> out = make_view(block_transpose(view.source), view.col_order, view.row_order,
                             view.q, view.p);
  validate_view(out, p);
  return out;
}

// --- q-sided GFPR: M_{lq}(X) (lambda M_{-k} - M_q) M_{rq}(Y) ---------------------

template <class S>
EbkView<S> q_side_ebk(const MatrixPolynomial<S>& p, const IndexTuple& q,
                      const IndexTuple& lq, const IndexTuple& rq,
                      const MatrixAssignment<S>& x, const MatrixAssignment<S>& y) {
  const Index k = p.grade();
  require(is_permutation_of(q, 0, static_cast<int>(k) - 1),
          "q_side_ebk: q must be a permutation of {0:k-1}");
  require(satisfies_sip(concat({lq, q, rq})), "q_side_ebk: (lq, q, rq) violates the SIP");
  require(lq.size() == x.size() && rq.size() == y.size(),
          "q_side_ebk: assignment length mismatch");
  EbkView<S> view = [&] {
    if (lq.empty()) return fiedler_ebk(p, q);
    // Build the block transpose first: lq acts there as a right tuple.
    auto base = q_side_ebk(p, rev_tuple(q), IndexTuple{}, rev_tuple(lq), {},
                           rev_assignment(x));
    return transpose_view(base, p);
  }();
  for (size_t i = 0; i < rq.size(); ++i) view = right_mult_step(view, rq[i], y[i], p);
  ensure(view.p == h_count(q) - 1 && view.q == h_count(rev_tuple(q)) - 1,
         "q_side_ebk: partition disagrees with the head counts");
  return view;
}

// --- z-sided GFPR: M_{lz}(Z) (lambda M_z - M_0) M_{rz}(W) ------------------------

// Reduced to a q-sided problem for rev(-P) by conjugation with the block sip
// matrix, then mapped back; the result is a reversed extended block
// Kronecker view.
template <class S>
ReversedEbkView<S> z_side_ebk(const MatrixPolynomial<S>& p, const IndexTuple& z,
                              const IndexTuple& lz, const IndexTuple& rz,
                              const MatrixAssignment<S>& zassign,
                              const MatrixAssignment<S>& wassign) {
  const Index k = p.grade(), n = p.rows();
  require(is_permutation_of(z, -static_cast<int>(k), -1),
          "z_side_ebk: z must be a permutation of {-k:-1}");
  const MatrixPolynomial<S> phat = reversal(-p, k);
  const EbkView<S> hat = q_side_ebk(phat, shift(z, static_cast<int>(k)),
                                    shift(lz, static_cast<int>(k)),
                                    shift(rz, static_cast<int>(k)), zassign, wassign);
  ReversedEbkView<S> out;
  const std::vector<Index> rev_order = [&] {
    std::vector<Index> v(k);
    for (Index i = 0; i < k; ++i) v[i] = k - i;
    return v;
  }();
  auto conj = [&](const std::vector<Index>& ord) {
    std::vector<Index> v(k);
    for (Index i = 1; i <= k; ++i) v[i - 1] = k + 1 - ord[k - i];
    return v;
  };
  out.source = -BlockPencil<S>(permute_blocks(hat.source.b0, n, rev_order, rev_order),
                               permute_blocks(hat.source.b1, n, rev_order, rev_order), n);
  out.row_order = conj(hat.row_order);
  out.col_order = conj(hat.col_order);
  out.h1 = hat.p + 1;
  out.h2 = hat.q + 1;
  out.permuted = permute_blocks(out.source, out.row_order, out.col_order);
  const BlockPencil<S> mapped =
      -BlockPencil<S>(permute_blocks(hat.permuted.b0, n, rev_order, rev_order),
                      permute_blocks(hat.permuted.b1, n, rev_order, rev_order), n);
  ensure(exactly_equal(out.permuted, mapped),
         "z_side_ebk: sip-conjugated view disagrees with the reduction");
  validate_reversed_view(out, p);
  return out;
}

// --- full GFPR -------------------------------------------------------------------

// Splits the GFPR, derives views of the two sub-pencils and interleaves
// them: rows (G-middle, c, F-body rest, G-top, F-wings), columns (G-body
// rest, c, F-body rest, G-wings, F-wings).
template <class S>
EbkView<S> gfpr_ebk(const MatrixPolynomial<S>& p, const GfprSpec<S>& s) {
  const Index k = p.grade();
  const int h = s.h;
  const GfprSplit<S> split = gfpr_split(p, s);
  const EbkView<S> f = q_side_ebk(split.q_poly, s.q, s.lq, s.rq,
                                  assignment_or_trivial(p, s.X, s.lq),
                                  assignment_or_trivial(p, s.Y, s.rq));
  const ReversedEbkView<S> g =
      z_side_ebk(split.z_poly, split.g_spec.z, split.g_spec.lz, split.g_spec.rz,
                 assignment_or_trivial(p, s.Z, s.lz), assignment_or_trivial(p, s.W, s.rz));
  const Index kf = h + 1, kg = k - h;
  ensure(f.row_order[0] == 1 && f.col_order[0] == 1,
         "gfpr_ebk: F view does not fix its first block row/column");
  ensure(g.row_order.back() == kg && g.col_order.back() == kg,
         "gfpr_ebk: G view does not fix its last block row/column");
  const Index h1 = g.h1, h2 = g.h2;   // G body columns / rows
  const Index pf = f.p, qf = f.q;     // F wing rows / columns
  auto f_row = [&](Index slot) { return kg - 1 + f.row_order[slot - 1]; };
  auto f_col = [&](Index slot) { return kg - 1 + f.col_order[slot - 1]; };

  std::vector<Index> rows, cols;
  for (Index t = h1; t <= kg - 1; ++t) rows.push_back(g.row_order[t - 1]);  // G middle
  rows.push_back(kg);                                                       // c row
  for (Index t = 2; t <= qf + 1; ++t) rows.push_back(f_row(t));             // F body rest
  for (Index t = 1; t <= h1 - 1; ++t) rows.push_back(g.row_order[t - 1]);   // G top
  for (Index t = qf + 2; t <= kf; ++t) rows.push_back(f_row(t));            // F wings

  for (Index t = h2; t <= kg - 1; ++t) cols.push_back(g.col_order[t - 1]);  // G body rest
  cols.push_back(kg);                                                       // c column
  for (Index t = 2; t <= pf + 1; ++t) cols.push_back(f_col(t));             // F body rest
  for (Index t = 1; t <= h2 - 1; ++t) cols.push_back(g.col_order[t - 1]);   // G wings
  for (Index t = pf + 2; t <= kf; ++t) cols.push_back(f_col(t));            // F wings

  const Index p_total = (h1 - 1) + pf, q_total = (h2 - 1) + qf;
  EbkView<S> view =
      canonicalize_wing_order(make_view(gfpr(p, s), rows, cols, p_total, q_total));
  ensure(view.p == h_count(s.q) + h_count_shifted(s.z, static_cast<int>(k)) - 2 &&
             view.q == h_count(rev_tuple(s.q)) +
                           h_count_shifted(rev_tuple(s.z), static_cast<int>(k)) - 2,
         "gfpr_ebk: partition disagrees with the theorem counts");
  validate_view(view, p);
  return view;
}

// --- proper GFP ------------------------------------------------------------------

// Starts from the simple-pair base pencil lambda M_{-k:-h-1} - M_qhat and
// applies one left multiplication per index of m.
template <class S>
EbkView<S> gfp_ebk(const MatrixPolynomial<S>& p, const IndexTuple& q, const IndexTuple& z) {
  const Index k = p.grade();
  require(gfp_is_proper(q, z, k), "gfp_ebk: pencil is not proper");
  const SimplePair sp = simple_pair(q, z, k);
  GfprSpec<S> base;
  base.h = sp.h;
  base.q = sp.qhat;
  base.z = make_string(-static_cast<int>(k), -sp.h - 1);
  EbkView<S> view = gfpr_ebk(p, base);
  for (auto it = sp.m.rbegin(); it != sp.m.rend(); ++it) {
    const int x = -*it;
    view = left_mult_step(view, x, DenseMatrix<S>(p.coeff(x)), p);
  }
  ensure(exactly_equal(view.source, gfp(p, q, z)),
         "gfp_ebk: derivation did not reproduce the GFP");
  // Wing positions as predicted by the SIP criteria.
  const IndexTuple zk = shift(z, static_cast<int>(k));
  const auto wc = view.wing_col_positions();
  const auto wr = view.wing_row_positions();
  for (Index j = 1; j <= k; ++j) {
    IndexTuple qj = q;
    qj.push_back(static_cast<int>(k - j));
    IndexTuple zj = zk;
    zj.push_back(static_cast<int>(j) - 1);
    const bool wing_col = satisfies_sip(qj) && satisfies_sip(zj);
    IndexTuple jq = concat({IndexTuple{static_cast<int>(k - j)}, q});
    IndexTuple jz = concat({IndexTuple{static_cast<int>(j) - 1}, zk});
    const bool wing_row = satisfies_sip(jq) && satisfies_sip(jz);
    ensure(std::binary_search(wc.begin(), wc.end(), j) == wing_col,
           "gfp_ebk: wing column positions disagree with the SIP criterion");
    ensure(std::binary_search(wr.begin(), wr.end(), j) == wing_row,
           "gfp_ebk: wing row positions disagree with the SIP criterion");
  }
  return view;
}

// --- nonproper GFP ---------------------------------------------------------------

// L K_{q,z} R = K_{qt,zt} exactly, with block-diagonal L and R carrying the
// inverses of the detached M_{-0}^P / M_k^P factors.
template <class S>
struct NonproperNormalization {
  DenseMatrix<S> left, right;
  IndexTuple q_tilde, z_tilde;
};

template <class S>
NonproperNormalization<S> nonproper_normalize(const MatrixPolynomial<S>& p,
                                              const IndexTuple& q, const IndexTuple& z) {
  const Index k = p.grade(), n = p.rows();
  require(gfp_partition_valid(q, z, k), "nonproper_normalize: invalid GFP tuples");
  NonproperNormalization<S> out;
  out.left = DenseMatrix<S>::Identity(k * n, k * n);
  out.right = DenseMatrix<S>::Identity(k * n, k * n);
  out.q_tilde = q;
  out.z_tilde = z;

  auto pos = [](const IndexTuple& t, int v) {
    return std::find(t.begin(), t.end(), v) - t.begin();
  };
  // Index -0 in z: detach M_{-0}^P to the side it commutes toward.
  if (contains(z, kNegZero)) {
    IndexTuple zt;
    for (int v : out.z_tilde)
      if (!is_neg_zero(v)) zt.push_back(v);
    const bool to_left =
        contains(z, -1) && pos(z, kNegZero) < static_cast<std::ptrdiff_t>(pos(z, -1));
    if (to_left) {
      out.left.bottomRightCorner(n, n) = -p.coeff(0);
      out.q_tilde.insert(out.q_tilde.begin(), 0);
    } else {
      out.right.bottomRightCorner(n, n) = -p.coeff(0);
      out.q_tilde.push_back(0);
    }
    out.z_tilde = zt;
  }
  // Index k in q: detach M_k^P likewise.
  if (contains(q, static_cast<int>(k))) {
    IndexTuple qt;
    for (int v : out.q_tilde)
      if (v != static_cast<int>(k)) qt.push_back(v);
    const bool to_left = contains(q, static_cast<int>(k) - 1) &&
                         pos(q, static_cast<int>(k)) <
                             static_cast<std::ptrdiff_t>(pos(q, static_cast<int>(k) - 1));
    if (to_left) {
      out.left.topLeftCorner(n, n) = p.coeff(k);
      out.z_tilde.insert(out.z_tilde.begin(), -static_cast<int>(k));
    } else {
      out.right.topLeftCorner(n, n) = p.coeff(k);
      out.z_tilde.push_back(-static_cast<int>(k));
    }
    out.q_tilde = qt;
  }
  const BlockPencil<S> normalized = out.left * gfp(p, q, z) * out.right;
  ensure(exactly_equal(normalized, gfp(p, out.q_tilde, out.z_tilde)),
         "nonproper_normalize: L K R is not the expected proper GFP");
  return out;
}

}  // namespace fk
