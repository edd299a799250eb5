#include <doctest.h>

#include "fiedlerkron/elementary.hpp"
#include "fiedlerkron/fixtures.hpp"

#include <random>

using namespace fk;

namespace {

DenseMatrix<Real> randmat(std::mt19937_64& rng, Index n) {
  std::uniform_int_distribution<int> d(-4, 4);
  DenseMatrix<Real> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

IndexTuple random_sip_tuple(std::mt19937_64& rng, int kmax, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len);
  IndexTuple t;
  const int target = len(rng);
  while (static_cast<int>(t.size()) < target) {
    auto h = heads(t);
    IndexTuple candidates;
    for (int x = 0; x < kmax; ++x)
      if (!h.count(x)) candidates.push_back(x);
    if (candidates.empty()) break;
    std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
    t.push_back(candidates[pick(rng)]);
  }
  return t;
}

}  // namespace

TEST_CASE("elementary block forms") {
  const Index k = 4, n = 2;
  std::mt19937_64 rng(5);
  auto b = randmat(rng, n);
  // M_0(B) = I_{(k-1)n} + B in the trailing corner
  auto m0 = elementary(k, n, {0, false}, b);
  DenseMatrix<Real> expect = DenseMatrix<Real>::Identity(k * n, k * n);
  expect.bottomRightCorner(n, n) = b;
  CHECK(m0 == expect);
  // M_{-k}(B)
  auto mk = elementary(k, n, {-4, false}, b);
  expect = DenseMatrix<Real>::Identity(k * n, k * n);
  expect.topLeftCorner(n, n) = b;
  CHECK(mk == expect);
  // inverse law M_i(B) M_{-i}(-B) = I for 1 <= i <= k-1
  for (int i = 1; i <= 3; ++i) {
    auto mi = elementary(k, n, {i, false}, b);
    auto mni = elementary(k, n, {-i, false}, DenseMatrix<Real>(-b));
    CHECK(mi * mni == DenseMatrix<Real>::Identity(k * n, k * n));
  }
  // explicit inverse forms
  DenseMatrix<Real> u(n, n);
  u << 0, 2, -1, 0;  // power-of-two scaled permutation: exact inverse
  CHECK(elementary(k, n, {0, true}, u) * elementary(k, n, {0, false}, u) ==
        DenseMatrix<Real>::Identity(k * n, k * n));
  CHECK(elementary(k, n, {4, true}, u) * elementary(k, n, {-4, false}, u) ==
        DenseMatrix<Real>::Identity(k * n, k * n));
  DenseMatrix<Real> sing = DenseMatrix<Real>::Zero(n, n);
  CHECK_THROWS_AS(elementary(k, n, {0, true}, sing), std::invalid_argument);
}

TEST_CASE("commutation relation for non-adjacent indices") {
  const Index k = 5, n = 2;
  std::mt19937_64 rng(17);
  for (int t = 0; t < 50; ++t) {
    std::uniform_int_distribution<int> pick(-static_cast<int>(k), static_cast<int>(k) - 1);
    const int i = pick(rng), j = pick(rng);
    if (std::abs(std::abs(i) - std::abs(j)) == 1 || std::abs(i) == std::abs(j)) continue;
    auto b1 = randmat(rng, n), b2 = randmat(rng, n);
    auto mi = elementary(k, n, {i, false}, b1);
    auto mj = elementary(k, n, {j, false}, b2);
    CHECK(mi * mj == mj * mi);
  }
}

TEST_CASE("products over tuples") {
  const Index k = 4, n = 2;
  auto p = example_poly4<Real>();
  CHECK(elementary_product<Real>({}, {}, k, n) == DenseMatrix<Real>::Identity(k * n, k * n));
  // trivial assignment payloads
  auto a0 = trivial_assignment(p, IndexTuple{0});
  CHECK(a0[0] == DenseMatrix<Real>(-p.coeff(0)));
  auto ak = trivial_assignment(p, IndexTuple{-4});
  CHECK(ak[0] == p.coeff(4));
  CHECK(trivial_assignment(p, IndexTuple{}).empty());
}

TEST_CASE("string product fast form agrees with the product") {
  std::mt19937_64 rng(23);
  for (Index k = 1; k <= 6; ++k) {
    for (int a = 0; a <= static_cast<int>(k) - 1; ++a)
      for (int b = a; b <= static_cast<int>(k) - 1; ++b) {
        const Index n = 2;
        MatrixAssignment<Real> x;
        for (int v = a; v <= b; ++v) x.push_back(randmat(rng, n));
        CHECK(string_product_fast(a, b, x, k, n) ==
              elementary_product(make_string(a, b), x, k, n));
      }
  }
}

TEST_CASE("equivalence invariance of products, with assignment permutation") {
  std::mt19937_64 rng(29);
  const Index k = 6, n = 2;
  for (int t = 0; t < 200; ++t) {
    auto tup = random_sip_tuple(rng, static_cast<int>(k), 10);
    MatrixAssignment<Real> x;
    for (size_t i = 0; i < tup.size(); ++i) x.push_back(randmat(rng, n));
    auto c = csf(tup);
    MatrixAssignment<Real> xp;
    for (int pos : c.positions) xp.push_back(x[pos]);
    CHECK(elementary_product(tup, x, k, n) == elementary_product(c.flatten(), xp, k, n));
  }
}

TEST_CASE("operation-free property via sentinel payloads") {
  std::mt19937_64 rng(31);
  const Index k = 6, n = 2;
  for (int t = 0; t < 60; ++t) {
    auto tup = random_sip_tuple(rng, static_cast<int>(k), 8);
    MatrixAssignment<Real> x;
    double sentinel = 1000.0;
    std::set<double> allowed{0.0, 1.0};
    for (size_t i = 0; i < tup.size(); ++i) {
      DenseMatrix<Real> m(n, n);
      for (Index r = 0; r < n; ++r)
        for (Index c = 0; c < n; ++c) {
          m(r, c) = sentinel;
          allowed.insert(sentinel);
          sentinel += 1.0;
        }
      x.push_back(m);
    }
    auto prod = elementary_product(tup, x, k, n);
    for (Index i = 0; i < prod.rows(); ++i)
      for (Index j = 0; j < prod.cols(); ++j) CHECK(allowed.count(prod(i, j)) == 1);
  }
}

TEST_CASE("block transpose law M_t(X)^B = M_rev(t)(rev(X))") {
  std::mt19937_64 rng(37);
  {
    const Index k = 4, n = 2;
    MatrixAssignment<Real> x;
    for (int i = 0; i < 3; ++i) x.push_back(randmat(rng, n));
    CHECK(block_transpose_law_check(make_string(0, 2), x, k, n));
    CHECK(block_transpose_law_check<Real>({}, {}, k, n));
  }
  {
    const Index k = 5, n = 2;
    IndexTuple t = concat({make_string(1, 3), make_string(0, 2)});
    MatrixAssignment<Real> x;
    for (size_t i = 0; i < t.size(); ++i) x.push_back(randmat(rng, n));
    CHECK(block_transpose_law_check(t, x, k, n));
  }
  std::mt19937_64 rng2(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Index k = 6, n = 2;
    auto t = random_sip_tuple(rng2, static_cast<int>(k), 9);
    MatrixAssignment<Real> x;
    for (size_t i = 0; i < t.size(); ++i) x.push_back(randmat(rng2, n));
    CHECK(block_transpose_law_check(t, x, k, n));
  }
}

TEST_CASE("column structure: nontrivial block-columns sit at k - heads") {
  std::mt19937_64 rng(43);
  const Index k = 6, n = 2;
  {
    IndexTuple t = concat({make_string(3, 4), make_string(0, 2)});
    MatrixAssignment<Real> x;
    for (size_t i = 0; i < t.size(); ++i) x.push_back(randmat(rng, n));
    auto cs = column_structure(t, x, k, n);
    CHECK(cs.nontrivial_cols == std::set<Index>{2, 4});
  }
  {
    auto cs = column_structure<Real>({}, {}, k, n);
    CHECK(cs.nontrivial_cols.empty());
    CHECK(cs.nontrivial_rows.empty());
  }
  {
    IndexTuple t = make_string(1, 4);
    MatrixAssignment<Real> x;
    for (size_t i = 0; i < t.size(); ++i) x.push_back(randmat(rng, n));
    auto cs = column_structure(t, x, k, n);
    CHECK(cs.nontrivial_cols == std::set<Index>{k - 4});
  }
}
