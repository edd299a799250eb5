// Deterministic example polynomials with small integer coefficients, used
// for exact golden comparisons by the CLI and the test suites.  Every
// leading/trailing coefficient that an eligibility condition touches is
// nonsingular; the grade-4 fixture uses signed power-of-two A_0 and A_4 so
// that the inverse factors of nonproper pencils stay exactly representable.
#pragma once

#include "fiedlerkron/core.hpp"

namespace fk {

template <class S>
DenseMatrix<S> mat2(double a, double b, double c, double d) {
  DenseMatrix<S> m(2, 2);
  m << S(a), S(b), S(c), S(d);
  return m;
}

// Grade 6, n = 2.
template <class S>
MatrixPolynomial<S> example_poly6() {
  std::vector<DenseMatrix<S>> c;
  c.push_back(mat2<S>(2, 1, 1, 1));    // A0
  c.push_back(mat2<S>(1, 2, 3, 1));    // A1
  c.push_back(mat2<S>(0, 1, 2, 1));    // A2
  c.push_back(mat2<S>(3, 1, 1, 2));    // A3
  c.push_back(mat2<S>(1, 0, 2, 3));    // A4
  c.push_back(mat2<S>(2, 3, 1, 2));    // A5
  c.push_back(mat2<S>(1, 1, 1, 2));    // A6
  return MatrixPolynomial<S>(std::move(c));
}

// Grade 3, n = 2 (DL standard-basis examples); A0 and A3 nonsingular.
template <class S>
MatrixPolynomial<S> example_poly3() {
  std::vector<DenseMatrix<S>> c;
  c.push_back(mat2<S>(1, 1, 0, 1));    // A0
  c.push_back(mat2<S>(2, 1, 1, 3));    // A1
  c.push_back(mat2<S>(1, 0, 2, 1));    // A2
  c.push_back(mat2<S>(2, 1, 1, 1));    // A3
  return MatrixPolynomial<S>(std::move(c));
}

// Grade 4, n = 2, for the nonproper normalizations: A0 and A4 are signed
// power-of-two scaled permutations, so their inverses are exact.
template <class S>
MatrixPolynomial<S> example_poly4() {
  std::vector<DenseMatrix<S>> c;
  c.push_back(mat2<S>(0, 2, -1, 0));   // A0
  c.push_back(mat2<S>(1, 2, 0, 1));    // A1
  c.push_back(mat2<S>(2, 1, 1, 1));    // A2
  c.push_back(mat2<S>(1, 0, 1, 2));    // A3
  c.push_back(mat2<S>(2, 0, 0, -4));   // A4
  return MatrixPolynomial<S>(std::move(c));
}

}  // namespace fk
