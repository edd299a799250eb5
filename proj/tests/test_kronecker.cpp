#include <doctest.h>

#include "fiedlerkron/kronecker.hpp"
#include "fiedlerkron/fixtures.hpp"
#include "golden.hpp"

#include <random>

using namespace fk;

namespace {

DenseMatrix<Real> randmat(std::mt19937_64& rng, Index r, Index c) {
  std::uniform_int_distribution<int> d(-4, 4);
  DenseMatrix<Real> m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

DenseMatrix<Real> rand_nonsingular(std::mt19937_64& rng, Index n) {
  for (;;) {
    auto m = randmat(rng, n, n);
    if (is_nonsingular(m)) return m;
  }
}

// coefficientwise product of a pencil with a polynomial
MatrixPolynomial<Real> pencil_times_poly(const BlockPencil<Real>& l,
                                         const MatrixPolynomial<Real>& r) {
  auto lp = l.as_polynomial();
  std::vector<DenseMatrix<Real>> c(lp.grade() + r.grade() + 1,
                                   DenseMatrix<Real>::Zero(lp.rows(), r.cols()));
  for (Index i = 0; i <= lp.grade(); ++i)
    for (Index j = 0; j <= r.grade(); ++j) c[i + j] += lp.coeff(i) * r.coeff(j);
  return MatrixPolynomial<Real>(std::move(c));
}

MatrixPolynomial<Real> poly_transpose_cols(const MatrixPolynomial<Real>& p) {
  std::vector<DenseMatrix<Real>> c;
  for (const auto& m : p.coeffs) c.push_back(m.transpose());
  return MatrixPolynomial<Real>(std::move(c));
}

}  // namespace

TEST_CASE("L_s and Lambda_s are dual: L_s (Lambda_s^T x I) = 0") {
  for (Index s = 0; s <= 8; ++s) {
    auto l = l_pencil<Real>(s, 2);
    auto lam = poly_transpose_cols(lambda_row<Real>(s, 2));
    auto prod = pencil_times_poly(l, lam);
    for (const auto& c : prod.coeffs) CHECK(c.isZero(0.0));
  }
  // s = 0: L empty, Lambda = I_n
  CHECK(l_pencil<Real>(0, 3).b1.rows() == 0);
  CHECK(lambda_row<Real>(0, 3).coeff(0) == DenseMatrix<Real>::Identity(3, 3));
  // L_1(1) = [-1, lambda]
  auto l1 = l_pencil<Real>(1, 1);
  CHECK(l1.b0(0, 0) == -1.0);
  CHECK(l1.b1(0, 1) == 1.0);
  CHECK(l1.b0(0, 1) == 0.0);
  CHECK(l1.b1(0, 0) == 0.0);
}

TEST_CASE("wing identity and wing factor") {
  std::mt19937_64 rng(61);
  const Index n = 2;
  for (Index s : {1, 2, 4}) {
    auto k = l_pencil<Real>(s, n);
    CHECK(is_wing(k));
    CHECK(wing_factor(k) == DenseMatrix<Real>::Identity(s * n, s * n));
    CHECK(is_minimal_basis_wing(k));
  }
  for (int t = 0; t < 50; ++t) {
    const Index s = 1 + (t % 4);
    auto b = randmat(rng, s * n, s * n);
    auto k = b * l_pencil<Real>(s, n);
    CHECK(is_wing(k));
    CHECK(wing_factor(k) == b);
    CHECK(is_minimal_basis_wing(k) == is_nonsingular(b));
  }
  // the section 3.4 wing: rows [-A6, lA6-A5, lA5; 0, -A6, lA6]
  auto p = example_poly6<Real>();
  DenseMatrix<Real> bexp(2 * n, 2 * n);
  bexp << p.coeff(6), p.coeff(5), DenseMatrix<Real>::Zero(n, n), p.coeff(6);
  auto k1 = bexp * l_pencil<Real>(2, n);
  CHECK(wing_factor(k1) == bexp);
  CHECK(is_minimal_basis_wing(k1));
  // broken trailing block
  auto bad = l_pencil<Real>(2, n);
  bad.b0(0, 2 * n) = 1.0;
  CHECK_FALSE(is_wing(bad));
}

TEST_CASE("corollary: nonsingular M keeps minimal-basis wings") {
  std::mt19937_64 rng(67);
  const Index n = 2, s = 3;
  auto b = rand_nonsingular(rng, s * n);
  auto k = b * l_pencil<Real>(s, n);
  auto m = rand_nonsingular(rng, s * n);
  CHECK(is_minimal_basis_wing(m * k));
}

TEST_CASE("wing concatenation theorem") {
  std::mt19937_64 rng(71);
  const Index n = 2;
  for (int t = 0; t < 100; ++t) {
    const Index s1 = 1 + (t % 3), s2 = 1 + ((t / 3) % 3);
    auto b = rand_nonsingular(rng, s1 * n);
    auto c = rand_nonsingular(rng, s2 * n);
    auto kk = b * l_pencil<Real>(s1, n);
    auto ll = c * l_pencil<Real>(s2, n);
    const Index s = s1 + s2;
    DenseMatrix<Real> s1m = DenseMatrix<Real>::Zero(s * n, (s + 1) * n);
    DenseMatrix<Real> s0m = DenseMatrix<Real>::Zero(s * n, (s + 1) * n);
    s1m.block(0, 0, s1 * n, (s1 + 1) * n) = kk.b1;
    s0m.block(0, 0, s1 * n, (s1 + 1) * n) = kk.b0;
    s1m.block(s1 * n, s1 * n, s2 * n, (s2 + 1) * n) = ll.b1;
    s0m.block(s1 * n, s1 * n, s2 * n, (s2 + 1) * n) = ll.b0;
    BlockPencil<Real> cat(s1m, s0m, n);
    CHECK(is_minimal_basis_wing(cat));
    DenseMatrix<Real> diag = DenseMatrix<Real>::Zero(s * n, s * n);
    diag.topLeftCorner(s1 * n, s1 * n) = b;
    diag.bottomRightCorner(s2 * n, s2 * n) = c;
    CHECK(wing_factor(cat) == diag);
  }
}

TEST_CASE("highest row degree coefficient matrix: paper example") {
  std::vector<DenseMatrix<Real>> c(3, DenseMatrix<Real>::Zero(2, 3));
  c[0] << 0, 3, 0, 1, 2, 0;
  c[1] << -3, -5, 0, 1, 1, 0;
  c[2] << 2, 0, 1, 0, 0, -3;
  MatrixPolynomial<Real> q(std::move(c));
  DenseMatrix<Real> qh(2, 3);
  qh << 2, 0, 1, 0, 0, -3;
  CHECK(highest_row_degree_coefficient(q) == qh);
  std::vector<DenseMatrix<Real>> cp(3, DenseMatrix<Real>::Zero(2, 3));
  cp[0] << 0, 3, 0, 1, 2, 1;
  cp[1] << -3, -5, 0, 1, 1, 0;
  cp[2] << 2, 0, 1, 0, 0, 0;
  MatrixPolynomial<Real> p(std::move(cp));
  DenseMatrix<Real> ph(2, 3);
  ph << 2, 0, 1, 1, 1, 0;
  CHECK(highest_row_degree_coefficient(p) == ph);
  CHECK(is_minimal_basis_numeric(l_pencil<Real>(3, 2).as_polynomial()));
}

TEST_CASE("antidiagonal sums: section 3.4 bodies and perturbation lemma") {
  auto p = example_poly6<Real>();
  auto c = golden::fiedler_grade6_permuted(p);
  const Index n = 2;
  BlockPencil<Real> body(c.b1.block(0, 0, 4 * n, 3 * n), c.b0.block(0, 0, 4 * n, 3 * n), n);
  CHECK(antidiagonal_sum(body, 6, 6) == p.coeff(6));
  CHECK(antidiagonal_sum(body, 0, 6) == p.coeff(0));
  CHECK(check_as(body, p));
  auto cf = golden::fpr_grade6_permuted(p);
  BlockPencil<Real> fbody(cf.b1.block(0, 0, 4 * n, 3 * n), cf.b0.block(0, 0, 4 * n, 3 * n), n);
  CHECK(check_as(fbody, p));
  BlockPencil<Real> zero(DenseMatrix<Real>::Zero(4 * n, 3 * n),
                         DenseMatrix<Real>::Zero(4 * n, 3 * n), n);
  for (Index s = 0; s <= 6; ++s) CHECK(antidiagonal_sum(zero, s, 6).isZero(0.0));
  auto corrupted = body;
  corrupted.b0(0, 0) += 1.0;
  CHECK_FALSE(check_as(corrupted, p));
  // AS invariance under generalized wing perturbations
  std::mt19937_64 rng(73);
  for (int t = 0; t < 100; ++t) {
    const Index q = 3, pp = 2;
    DenseMatrix<Real> w1 = DenseMatrix<Real>::Zero((q + 1) * n, (pp + 1) * n);
    DenseMatrix<Real> w0 = DenseMatrix<Real>::Zero((q + 1) * n, (pp + 1) * n);
    std::vector<DenseMatrix<Real>> bs;
    for (Index j = 0; j < pp; ++j) bs.push_back(randmat(rng, (q + 1) * n, n));
    for (Index j = 0; j <= pp; ++j) {
      if (j > 0) w1.block(0, j * n, (q + 1) * n, n) = -bs[j - 1];
      if (j < pp) w0.block(0, j * n, (q + 1) * n, n) = bs[j];
    }
    BlockPencil<Real> wing(w1, w0, n);
    for (Index s = 0; s <= 6; ++s) CHECK(antidiagonal_sum(wing, s, 6).isZero(0.0));
    BlockPencil<Real> perturbed(body.b1 + w1, body.b0 + w0, n);
    CHECK(check_as(perturbed, p));
  }
}

TEST_CASE("body polynomial equals the antidiagonal sums") {
  std::mt19937_64 rng(79);
  const Index n = 2;
  for (int t = 0; t < 40; ++t) {
    const Index q = 1 + (t % 3), pp = 1 + ((t / 3) % 3);
    BlockPencil<Real> m(randmat(rng, (q + 1) * n, (pp + 1) * n),
                        randmat(rng, (q + 1) * n, (pp + 1) * n), n);
    auto body = body_polynomial(m);
    const Index k = q + pp + 1;
    auto lamq = lambda_row<Real>(q, n);
    auto lampT = poly_transpose_cols(lambda_row<Real>(pp, n));
    auto mid = pencil_times_poly(m, lampT);
    std::vector<DenseMatrix<Real>> full(k + 1, DenseMatrix<Real>::Zero(n, n));
    for (Index i = 0; i <= lamq.grade(); ++i)
      for (Index j = 0; j <= mid.grade(); ++j) full[i + j] += lamq.coeff(i) * mid.coeff(j);
    for (Index s = 0; s <= k; ++s) CHECK(body.coeff(s) == full[s]);
  }
  BlockPencil<Real> single(randmat(rng, n, n), randmat(rng, n, n), n);
  auto bp = body_polynomial(single);
  CHECK(bp.coeff(1) == single.b1);
  CHECK(bp.coeff(0) == single.b0);
}

TEST_CASE("recognize / enumerate on the different-partitions pencil") {
  auto p3 = example_poly3<Real>();
  auto d1 = golden::dl1_grade3(p3);  // the remark's pencil
  auto views = enumerate_ebk(d1);
  REQUIRE(views.size() == 3);
  std::set<std::pair<Index, Index>> pq;
  for (const auto& v : views) pq.insert({v.p, v.q});
  CHECK(pq == std::set<std::pair<Index, Index>>{{0, 2}, {1, 1}, {2, 0}});
  for (const auto& v : views) CHECK(check_as(v.body(), p3));
  // Thm CAS: the whole pencil satisfies the AS condition for l^{k-1} P
  for (const auto& v : views) {
    const Index k = 3;
    for (Index s = 0; s <= 2 * k - 1; ++s) {
      auto as = antidiagonal_sum(v.permuted, s, 2 * k - 1);
      if (s < k - 1)
        CHECK(as.isZero(0.0));
      else
        CHECK(as == p3.coeff(s - k + 1));
    }
  }
  // a plain block Kronecker pencil is recognized with identity factors
  const Index n = 2;
  auto lp = l_pencil<Real>(1, n);
  DenseMatrix<Real> c1 = DenseMatrix<Real>::Zero(3 * n, 3 * n);
  DenseMatrix<Real> c0 = DenseMatrix<Real>::Zero(3 * n, 3 * n);
  std::mt19937_64 rng(83);
  c1.block(0, 0, 2 * n, 2 * n) = randmat(rng, 2 * n, 2 * n);
  c0.block(0, 0, 2 * n, 2 * n) = randmat(rng, 2 * n, 2 * n);
  c1.block(2 * n, 0, n, 2 * n) = lp.b1;
  c0.block(2 * n, 0, n, 2 * n) = lp.b0;
  c1.block(0, 2 * n, 2 * n, n) = lp.b1.transpose();
  c0.block(0, 2 * n, 2 * n, n) = lp.b0.transpose();
  auto v = recognize_ebk(BlockPencil<Real>(c1, c0, n), 1, 1);
  REQUIRE(v.has_value());
  CHECK(wing_factor(v->k1()) == DenseMatrix<Real>::Identity(n, n));
  CHECK(wing_factor(v->k2()) == DenseMatrix<Real>::Identity(n, n));
}

TEST_CASE("permute_to_ebk: identity when already in form") {
  auto p3 = example_poly3<Real>();
  auto d1 = golden::dl1_grade3(p3);
  auto v = permute_to_ebk(d1, 1, 1);
  REQUIRE(v.has_value());
  CHECK(v->row_order == std::vector<Index>{1, 2, 3});
  CHECK(v->col_order == std::vector<Index>{1, 2, 3});
}
