// The Fiedler-like pencil families: Fiedler pencils, generalized Fiedler
// pencils (with the simple-pair normal form of the proper ones), and
// (generalized) Fiedler pencils with repetition, plus the splitting of a
// GFPR into the two sub-pencils it interleaves.
#pragma once

#include "fiedlerkron/core.hpp"
#include "fiedlerkron/elementary.hpp"
#include "fiedlerkron/tuples.hpp"

#include <array>
#include <optional>

namespace fk {

// F_q(lambda) = lambda M_{-k}^P - M_q^P.
template <class S>
BlockPencil<S> fiedler(const MatrixPolynomial<S>& p, const IndexTuple& q) {
  const Index k = p.grade(), n = p.rows();
  require(p.rows() == p.cols(), "fiedler: polynomial must be square");
  require(is_permutation_of(q, 0, static_cast<int>(k) - 1),
          "fiedler: q must be a permutation of {0:k-1}");
  DenseMatrix<S> b1 = trivial_factor(p, IndexTuple{-static_cast<int>(k)});
  DenseMatrix<S> b0 = -trivial_factor(p, q);
  return BlockPencil<S>(std::move(b1), std::move(b0), n);
}

// z entries are negative (with kNegZero standing for -0); q entries are in
// {0:k} (k marks the inverse factor M_k^P).
template <class S>
DenseMatrix<S> gfp_factor(const MatrixPolynomial<S>& p, const IndexTuple& t) {
  const Index k = p.grade(), n = p.rows();
  DenseMatrix<S> acc = DenseMatrix<S>::Identity(k * n, k * n);
  for (int v : t) {
    ElementaryFactor f;
    DenseMatrix<S> payload;
    if (is_neg_zero(v)) {
      f = ElementaryFactor{0, true};  // M_{-0}^P = (M_0^P)^{-1}
      payload = -p.coeff(0);
    } else if (v == static_cast<int>(k)) {
      f = ElementaryFactor{static_cast<int>(k), true};  // M_k^P = (M_{-k}^P)^{-1}
      payload = p.coeff(k);
    } else {
      f = ElementaryFactor{v, false};
      payload = v >= 0 ? DenseMatrix<S>(-p.coeff(v)) : DenseMatrix<S>(p.coeff(-v));
    }
    acc = acc * elementary(k, n, f, payload);
  }
  return acc;
}

inline bool gfp_partition_valid(const IndexTuple& q, const IndexTuple& z, Index k) {
  std::vector<int> seen(k + 1, 0);
  for (int v : q) {
    if (is_neg_zero(v) || v < 0 || v > k) return false;
    seen[v]++;
  }
  for (int v : z) {
    int a = is_neg_zero(v) ? 0 : -v;
    if (a < 0 || a > k || (!is_neg_zero(v) && v > 0)) return false;
    seen[a]++;
  }
  for (int a = 0; a <= k; ++a)
    if (seen[a] != 1) return false;
  return true;
}

inline bool gfp_is_proper(const IndexTuple& q, const IndexTuple& z, Index k) {
  return contains(q, 0) && contains(z, -static_cast<int>(k));
}

// K_{q,z}(lambda) = lambda M_z^P - M_q^P.
template <class S>
BlockPencil<S> gfp(const MatrixPolynomial<S>& p, const IndexTuple& q, const IndexTuple& z) {
  const Index k = p.grade(), n = p.rows();
  require(p.rows() == p.cols(), "gfp: polynomial must be square");
  require(gfp_partition_valid(q, z, k), "gfp: (q, -z) must partition {0:k}");
  return BlockPencil<S>(gfp_factor(p, z), DenseMatrix<S>(-gfp_factor(p, q)), n);
}

// Simple pair (qhat, h) of a proper GFP: z ~ (m, -k:-h-1) with m over
// {-1:-h}, and qhat = (-rev(m), q) a permutation of {0:h}.  Among valid
// decompositions the one with the largest h is returned.
struct SimplePair {
  IndexTuple qhat;
  IndexTuple m;
  int h = 0;
};

inline SimplePair simple_pair(const IndexTuple& q, const IndexTuple& z, Index k) {
  require(gfp_partition_valid(q, z, k), "simple_pair: (q, -z) must partition {0:k}");
  require(gfp_is_proper(q, z, k), "simple_pair: pencil is not proper");
  for (int h = static_cast<int>(k) - 1; h >= 0; --h) {
    bool tail_present = true;
    for (int v = -static_cast<int>(k); v <= -h - 1 && tail_present; ++v)
      tail_present = contains(z, v);
    if (!tail_present) continue;
    IndexTuple m;
    for (int v : z)
      if (v > -h - 1) m.push_back(v);
    if (!m.empty() && *std::min_element(m.begin(), m.end()) < -h) continue;
    IndexTuple candidate = concat({m, make_string(-static_cast<int>(k), -h - 1)});
    if (!distinct_tuple_equivalent(z, candidate)) continue;
    SimplePair sp;
    sp.h = h;
    sp.m = m;
    sp.qhat = concat({negate(rev_tuple(m)), q});
    ensure(is_permutation_of(sp.qhat, 0, h), "simple_pair: qhat is not a permutation of {0:h}");
    return sp;
  }
  throw std::logic_error("simple_pair: no decomposition found for a proper GFP");
}

// --- GFPR --------------------------------------------------------------------

// Assignments left empty select the trivial assignment for the tuple.
template <class S>
struct GfprSpec {
  int h = 0;
  IndexTuple q, z;        // permutations of {0:h} and {-k:-h-1}
  IndexTuple lq, rq;      // over {0:h-1}
  IndexTuple lz, rz;      // over {-k:-h-2}
  std::optional<MatrixAssignment<S>> X, Y, Z, W;  // for lq, rq, lz, rz
};

template <class S>
void validate_gfpr_spec(const MatrixPolynomial<S>& p, const GfprSpec<S>& s) {
  const int k = static_cast<int>(p.grade());
  require(p.rows() == p.cols(), "gfpr: polynomial must be square");
  require(s.h >= 0 && s.h <= k - 1, "gfpr: h out of range");
  require(is_permutation_of(s.q, 0, s.h), "gfpr: q must be a permutation of {0:h}");
  require(is_permutation_of(s.z, -k, -s.h - 1), "gfpr: z must be a permutation of {-k:-h-1}");
  for (int v : s.lq) require(0 <= v && v <= s.h - 1, "gfpr: lq index out of range");
  for (int v : s.rq) require(0 <= v && v <= s.h - 1, "gfpr: rq index out of range");
  for (int v : s.lz) require(-k <= v && v <= -s.h - 2, "gfpr: lz index out of range");
  for (int v : s.rz) require(-k <= v && v <= -s.h - 2, "gfpr: rz index out of range");
  require(satisfies_sip(concat({s.lq, s.q, s.rq})), "gfpr: (lq, q, rq) violates the SIP");
  require(satisfies_sip(concat({s.lz, s.z, s.rz})), "gfpr: (lz, z, rz) violates the SIP");
  auto check_len = [](const std::optional<MatrixAssignment<S>>& a, const IndexTuple& t) {
    require(!a || a->size() == t.size(), "gfpr: assignment length mismatch");
  };
  check_len(s.X, s.lq);
  check_len(s.Y, s.rq);
  check_len(s.Z, s.lz);
  check_len(s.W, s.rz);
}

template <class S>
MatrixAssignment<S> assignment_or_trivial(const MatrixPolynomial<S>& p,
                                          const std::optional<MatrixAssignment<S>>& a,
                                          const IndexTuple& t) {
  return a ? *a : trivial_assignment(p, t);
}

// L_P = M_{(lq,lz)}(X,Z) (lambda M_z^P - M_q^P) M_{(rz,rq)}(W,Y).
template <class S>
BlockPencil<S> gfpr(const MatrixPolynomial<S>& p, const GfprSpec<S>& s) {
  validate_gfpr_spec(p, s);
  const Index k = p.grade(), n = p.rows();
  auto X = assignment_or_trivial(p, s.X, s.lq);
  auto Y = assignment_or_trivial(p, s.Y, s.rq);
  auto Z = assignment_or_trivial(p, s.Z, s.lz);
  auto W = assignment_or_trivial(p, s.W, s.rz);
  MatrixAssignment<S> left = X, right = W;
  left.insert(left.end(), Z.begin(), Z.end());
  right.insert(right.end(), Y.begin(), Y.end());
  const DenseMatrix<S> ml = elementary_product(concat({s.lq, s.lz}), left, k, n);
  const DenseMatrix<S> mr = elementary_product(concat({s.rz, s.rq}), right, k, n);
  const DenseMatrix<S> mz = trivial_factor(p, s.z);
  const DenseMatrix<S> mq = trivial_factor(p, s.q);
  return BlockPencil<S>(ml * mz * mr, DenseMatrix<S>(-(ml * mq * mr)), n);
}

// Lemma "splitting": the 3 x 3 partition of a GFPR at block sizes
// (k-h-1, 1, h) with zero corners, and the sub-GFPRs F (over Q, grade h+1)
// and G (over Z, grade k-h) that tile it.
template <class S>
struct GfprSplit {
  BlockPencil<S> f, g;                    // F over q_poly, G over z_poly
  MatrixPolynomial<S> q_poly, z_poly;     // Q = sum_{i<=h+1} A_i l^i, Z = sum_{i>=h} A_i l^{i-h}
  GfprSpec<S> f_spec, g_spec;             // sub-GFPR parameters (shifted for G)
};

template <class S>
GfprSplit<S> gfpr_split(const MatrixPolynomial<S>& p, const GfprSpec<S>& s) {
  validate_gfpr_spec(p, s);
  const Index k = p.grade(), n = p.rows();
  const int h = s.h;
  GfprSplit<S> out;
  {
    std::vector<DenseMatrix<S>> qc(p.coeffs.begin(), p.coeffs.begin() + h + 2);
    out.q_poly = MatrixPolynomial<S>(std::move(qc));
    std::vector<DenseMatrix<S>> zc(p.coeffs.begin() + h, p.coeffs.end());
    out.z_poly = MatrixPolynomial<S>(std::move(zc));
  }
  // F = M_{lq}(X) (lambda M_{-(h+1)}^Q - M_q^Q) M_{rq}(Y), a q-sided GFPR of
  // grade h+1.
  out.f_spec.h = h;
  out.f_spec.q = s.q;
  out.f_spec.z = IndexTuple{-(h + 1)};
  out.f_spec.lq = s.lq;
  out.f_spec.rq = s.rq;
  out.f_spec.X = s.X ? s.X : std::optional<MatrixAssignment<S>>(trivial_assignment(p, s.lq));
  out.f_spec.Y = s.Y ? s.Y : std::optional<MatrixAssignment<S>>(trivial_assignment(p, s.rq));
  out.f = gfpr(out.q_poly, out.f_spec);
  // G = M_{h+lz}(Z) (lambda M_{h+z}^Z - M_0^Z) M_{h+rz}(W), a z-sided GFPR of
  // grade k-h; the tuples act on the same physical blocks shifted by h.
  out.g_spec.h = 0;
  out.g_spec.q = IndexTuple{0};
  out.g_spec.z = shift(s.z, h);
  out.g_spec.lz = shift(s.lz, h);
  out.g_spec.rz = shift(s.rz, h);
  out.g_spec.Z = s.Z ? s.Z : std::optional<MatrixAssignment<S>>(trivial_assignment(p, s.lz));
  out.g_spec.W = s.W ? s.W : std::optional<MatrixAssignment<S>>(trivial_assignment(p, s.rz));
  out.g = gfpr(out.z_poly, out.g_spec);

  // Consistency: F and G tile L_P with zero corners.
  const BlockPencil<S> l = gfpr(p, s);
  const Index a = (k - h - 1) * n, c = h * n;
  for (const DenseMatrix<S>* coef : {&l.b1, &l.b0}) {
    ensure(coef->block(0, a + n, a, c).isZero(0.0) && coef->block(a + n, 0, c, a).isZero(0.0),
           "gfpr_split: corner blocks are not zero");
  }
  auto embeds = [&](const DenseMatrix<S>& big, const DenseMatrix<S>& fc,
                    const DenseMatrix<S>& gc) {
    return big.block(a, a, c + n, c + n) == fc && big.block(0, 0, a + n, a + n) == gc;
  };
  ensure(embeds(l.b1, out.f.b1, out.g.b1) && embeds(l.b0, out.f.b0, out.g.b0),
         "gfpr_split: sub-pencils do not tile the GFPR");
  return out;
}

// The three standard-basis DL(P) pencils at k = 3, as the GFPR
// factorizations they come from.
template <class S>
std::array<GfprSpec<S>, 3> dl3_specs() {
  GfprSpec<S> d1;  // (lambda M_{-3} - M_{0:2}) M_{0:1,0}
  d1.h = 2;
  d1.q = make_string(0, 2);
  d1.z = IndexTuple{-3};
  d1.rq = IndexTuple{0, 1, 0};

  GfprSpec<S> d2;  // M_{-3} (lambda M_{-2,-3} - M_{0:1}) M_0
  d2.h = 1;
  d2.q = make_string(0, 1);
  d2.z = IndexTuple{-2, -3};
  d2.lz = IndexTuple{-3};
  d2.rq = IndexTuple{0};

  GfprSpec<S> d3;  // (lambda M_{-3:-1} - M_0) M_{-3:-2,-3}
  d3.h = 0;
  d3.q = IndexTuple{0};
  d3.z = make_string(-3, -1);
  d3.rz = IndexTuple{-3, -2, -3};

  return {d1, d2, d3};
}

}  // namespace fk
