#include <doctest.h>

#include "fiedlerkron/core.hpp"
#include "fiedlerkron/fixtures.hpp"

#include <random>

using namespace fk;

namespace {

DenseMatrix<Real> randmat(std::mt19937_64& rng, Index r, Index c, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> d(lo, hi);
  DenseMatrix<Real> m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

}  // namespace

TEST_CASE("eval: Horner evaluation of matrix polynomials") {
  // constant term and coefficient sum
  auto p = example_poly6<Real>();
  CHECK(exactly_equal(eval(p, 0.0), p.coeff(0)));
  DenseMatrix<Real> sum = DenseMatrix<Real>::Zero(2, 2);
  for (const auto& a : p.coeffs) sum += a;
  CHECK(exactly_equal(eval(p, 1.0), sum));
  // grade-2 scalar P = l^2 + 2l + 3 at 2 -> 11
  MatrixPolynomial<Real> s({DenseMatrix<Real>::Constant(1, 1, 3),
                            DenseMatrix<Real>::Constant(1, 1, 2),
                            DenseMatrix<Real>::Constant(1, 1, 1)});
  CHECK(eval(s, 2.0)(0, 0) == 11.0);
}

TEST_CASE("reversal: list reversal, involution, grade padding") {
  auto p = example_poly3<Real>();
  auto r = reversal(p, 3);
  for (Index i = 0; i <= 3; ++i) CHECK(exactly_equal(r.coeff(i), p.coeff(3 - i)));
  auto rr = reversal(r, 3);
  for (Index i = 0; i <= 3; ++i) CHECK(exactly_equal(rr.coeff(i), p.coeff(i)));
  // grade padding: [A0, A1] at k = 2 -> [0, A1, A0]
  MatrixPolynomial<Real> q({p.coeff(0), p.coeff(1)});
  auto rq = reversal(q, 2);
  CHECK(rq.coeff(0).isZero(0.0));
  CHECK(exactly_equal(rq.coeff(1), p.coeff(1)));
  CHECK(exactly_equal(rq.coeff(2), p.coeff(0)));
  CHECK_THROWS_AS(reversal(p, 2), std::invalid_argument);
}

TEST_CASE("block permutation matrices") {
  const Index n = 3;
  // paper example: c = (2,4,3,1) puts I_n at (2,1),(4,2),(3,3),(1,4)
  BlockPermutation c({2, 4, 3, 1}, n);
  auto pi = to_matrix<Real>(c);
  auto eye = DenseMatrix<Real>::Identity(n, n);
  CHECK(pi.block((2 - 1) * n, 0 * n, n, n) == eye);
  CHECK(pi.block((4 - 1) * n, 1 * n, n, n) == eye);
  CHECK(pi.block((3 - 1) * n, 2 * n, n, n) == eye);
  CHECK(pi.block((1 - 1) * n, 3 * n, n, n) == eye);
  CHECK(to_matrix<Real>(BlockPermutation::identity(4, n)) ==
        DenseMatrix<Real>::Identity(4 * n, 4 * n));

  // composition oracle and orthogonality
  std::mt19937_64 rng(7);
  for (int t = 0; t < 25; ++t) {
    std::vector<Index> o1{1, 2, 3, 4, 5}, o2{1, 2, 3, 4, 5};
    std::shuffle(o1.begin(), o1.end(), rng);
    std::shuffle(o2.begin(), o2.end(), rng);
    BlockPermutation c1(o1, 2), c2(o2, 2);
    CHECK(to_matrix<Real>(c1) * to_matrix<Real>(c2) == to_matrix<Real>(compose(c1, c2)));
    auto m = to_matrix<Real>(c1);
    CHECK(m.transpose() * m == DenseMatrix<Real>::Identity(10, 10));
    CHECK(block_transpose(m, 2) == m.transpose());
    CHECK(to_matrix<Real>(compose(c1, inverse(c1))) == DenseMatrix<Real>::Identity(10, 10));
  }
}

TEST_CASE("block sip matrix") {
  CHECK(block_sip<Real>(1, 3) == DenseMatrix<Real>::Identity(3, 3));
  DenseMatrix<Real> r2(2, 2);
  r2 << 0, 1, 1, 0;
  CHECK(block_sip<Real>(2, 1) == r2);
  for (Index s : {1, 2, 3, 5})
    CHECK(block_sip<Real>(s, 2) * block_sip<Real>(s, 2) ==
          DenseMatrix<Real>::Identity(2 * s, 2 * s));
}

TEST_CASE("block transpose") {
  std::mt19937_64 rng(11);
  auto m = randmat(rng, 6, 6);
  CHECK(block_transpose(m, 1) == m.transpose());
  CHECK(block_transpose(block_transpose(m, 2), 2) == m);
  // block (1,2) of output equals block (2,1) of input unmodified
  auto bt = block_transpose(m, 3);
  CHECK(bt.block(0, 3, 3, 3) == m.block(3, 0, 3, 3));
  CHECK(bt.block(3, 0, 3, 3) == m.block(0, 3, 3, 3));
  CHECK_THROWS_AS(block_transpose(m, 4), std::invalid_argument);
}

TEST_CASE("permute_blocks matches permutation matrices") {
  std::mt19937_64 rng(13);
  const Index n = 2, k = 5;
  auto m = randmat(rng, k * n, k * n);
  std::vector<Index> ro{3, 1, 4, 5, 2}, co{2, 5, 1, 3, 4};
  auto direct = permute_blocks(m, n, ro, co);
  auto pl = to_matrix<Real>(BlockPermutation(ro, n));
  auto pr = to_matrix<Real>(BlockPermutation(co, n));
  CHECK(direct == block_transpose(pl, n) * m * pr);
}
