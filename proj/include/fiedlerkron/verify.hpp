// Numerical certification: generalized eigenvalues of pencils, the Frobenius
// companion reference, strong-linearization spectral comparison, and the
// convolution-matrix oracle for minimal indices.
#pragma once

#include "fiedlerkron/kronecker.hpp"

#include <tuple>

namespace fk {

// QZ kernel (LAPACK zggev behind this boundary): right eigenvalues of
// A x = (alpha/beta) B x.
struct GeneralizedEigenvalues {
  std::vector<Cplx> alpha, beta;
};
GeneralizedEigenvalues generalized_eigs(const DenseMatrix<Cplx>& a,
                                        const DenseMatrix<Cplx>& b);

struct SpectrumReport {
  std::vector<Cplx> finite;  // sorted by (Re, Im) on a 1e-10 grid
  Index inf_count = 0;
};

constexpr double kInfinityTol = 1e-10;

namespace detail {

inline void sort_spectrum(std::vector<Cplx>& v) {
  auto snap = [](double x) { return std::round(x * 1e10); };
  std::sort(v.begin(), v.end(), [&](const Cplx& a, const Cplx& b) {
    const double ra = snap(a.real()), rb = snap(b.real());
    if (ra != rb) return ra < rb;
    const double ia = snap(a.imag()), ib = snap(b.imag());
    if (ia != ib) return ia < ib;
    return std::make_pair(a.real(), a.imag()) < std::make_pair(b.real(), b.imag());
  });
}

template <class S>
DenseMatrix<Cplx> to_complex(const DenseMatrix<S>& m) {
  return m.template cast<Cplx>();
}

}  // namespace detail

// Eigenvalues of lambda B1 + B0 = 0, i.e. of the problem -B0 x = lambda B1 x.
template <class S>
SpectrumReport pencil_eigs(const BlockPencil<S>& l, double inf_tol = kInfinityTol) {
  const auto ge = generalized_eigs(detail::to_complex<S>(DenseMatrix<S>(-l.b0)),
                                   detail::to_complex<S>(l.b1));
  SpectrumReport rep;
  for (size_t i = 0; i < ge.alpha.size(); ++i) {
    const double scale = std::max(std::abs(ge.alpha[i]), std::abs(ge.beta[i]));
    if (std::abs(ge.beta[i]) <= inf_tol * std::max(1.0, scale))
      ++rep.inf_count;
    else
      rep.finite.push_back(ge.alpha[i] / ge.beta[i]);
  }
  detail::sort_spectrum(rep.finite);
  return rep;
}

// First Frobenius companion pencil of P at its grade.
template <class S>
BlockPencil<S> companion_pencil(const MatrixPolynomial<S>& p) {
  const Index k = p.grade(), n = p.rows();
  require(p.rows() == p.cols() && k >= 1, "companion_pencil: square polynomial, k >= 1");
  DenseMatrix<S> b1 = DenseMatrix<S>::Identity(k * n, k * n);
  b1.block(0, 0, n, n) = p.coeff(k);
  DenseMatrix<S> b0 = DenseMatrix<S>::Zero(k * n, k * n);
  for (Index j = 0; j < k; ++j) b0.block(0, j * n, n, n) = p.coeff(k - 1 - j);
  for (Index i = 1; i < k; ++i)
    b0.block(i * n, (i - 1) * n, n, n) = -DenseMatrix<S>::Identity(n, n);
  return BlockPencil<S>(std::move(b1), std::move(b0), n);
}

// Numerical regularity probe: det P(lambda_0) != 0 at a few random points.
template <class S>
bool is_regular_numeric(const MatrixPolynomial<S>& p, unsigned seed = 0xf1edu,
                        int samples = 6) {
  if (p.rows() != p.cols()) return false;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.5, 2.0), angle(0.0, 2 * M_PI);
  MatrixPolynomial<Cplx> pc = [&] {
    std::vector<DenseMatrix<Cplx>> c;
    for (const auto& m : p.coeffs) c.push_back(detail::to_complex<S>(m));
    return MatrixPolynomial<Cplx>(std::move(c));
  }();
  for (int t = 0; t < samples; ++t) {
    const double r = radius(rng), a = angle(rng);
    const Cplx z(r * std::cos(a), r * std::sin(a));
    if (numeric_rank(DenseMatrix<Cplx>(eval(pc, z))) == p.rows()) return true;
  }
  return false;
}

template <class S>
SpectrumReport polyeig_reference(const MatrixPolynomial<S>& p,
                                 double inf_tol = kInfinityTol) {
  require(is_regular_numeric(p), "polyeig_reference: polynomial is numerically singular");
  return pencil_eigs(companion_pencil(p), inf_tol);
}

// Multiset comparison after canonical sorting; relative error denominators
// use max(1, |lambda_ref|).
struct SpectralComparison {
  bool pass = false;
  double max_rel_error = 0.0;
  Cplx worst_reference{0, 0};
  Index finite_count_lhs = 0, finite_count_rhs = 0;
  Index inf_count_lhs = 0, inf_count_rhs = 0;
};

inline SpectralComparison compare_spectra(const SpectrumReport& lhs,
                                          const SpectrumReport& rhs, double tol) {
  SpectralComparison c;
  c.finite_count_lhs = static_cast<Index>(lhs.finite.size());
  c.finite_count_rhs = static_cast<Index>(rhs.finite.size());
  c.inf_count_lhs = lhs.inf_count;
  c.inf_count_rhs = rhs.inf_count;
  if (lhs.finite.size() != rhs.finite.size() || lhs.inf_count != rhs.inf_count) return c;
  for (size_t i = 0; i < lhs.finite.size(); ++i) {
    const double denom = std::max(1.0, std::abs(rhs.finite[i]));
    const double err = std::abs(lhs.finite[i] - rhs.finite[i]) / denom;
    if (err > c.max_rel_error) {
      c.max_rel_error = err;
      c.worst_reference = rhs.finite[i];
    }
  }
  c.pass = c.max_rel_error <= tol;
  return c;
}

// Strong-linearization spectral check: finite eigenvalues and infinite
// counts of L match the companion reference of P, and the reversed pencil
// matches the companion of rev_k P.
template <class S>
SpectralComparison strong_linearization_check(const BlockPencil<S>& l,
                                              const MatrixPolynomial<S>& p, double tol) {
  const SpectrumReport ref = polyeig_reference(p);
  SpectralComparison c = compare_spectra(pencil_eigs(l), ref, tol);
  if (!c.pass) return c;
  const SpectrumReport rev_ref = pencil_eigs(companion_pencil(reversal(p, p.grade())));
  SpectralComparison cr = compare_spectra(pencil_eigs(l.reversed()), rev_ref, tol);
  cr.max_rel_error = std::max(c.max_rel_error, cr.max_rel_error);
  return cr;
}

// --- minimal indices -----------------------------------------------------------

struct MinimalIndexReport {
  std::vector<Index> right, left;  // nondecreasing
};

// Block convolution matrix T_d mapping coefficients of a degree-<=d vector
// polynomial x to those of P x; block (i, j) = A_{i-j}.
template <class S>
DenseMatrix<S> convolution_matrix(const MatrixPolynomial<S>& p, Index d) {
  const Index k = p.grade(), m = p.rows(), n = p.cols();
  DenseMatrix<S> t = DenseMatrix<S>::Zero((k + d + 1) * m, (d + 1) * n);
  for (Index j = 0; j <= d; ++j)
    for (Index i = 0; i <= k; ++i) t.block((i + j) * m, j * n, m, n) = p.coeff(i);
  return t;
}

template <class S>
Index nullity(const DenseMatrix<S>& m) {
  return m.cols() - numeric_rank(m);
}

// Right minimal indices recovered from nu(d) = nullity(T_d) =
// sum_{eps_i <= d} (d - eps_i + 1): first differences count indices <= d and
// second differences isolate each value.  Throws if nu has not turned affine
// by d_max.
template <class S>
std::vector<Index> right_minimal_indices(const MatrixPolynomial<S>& p, Index d_max) {
  require(d_max >= 1, "right_minimal_indices: d_max >= 1");
  std::vector<Index> nu;
  for (Index d = 0; d <= d_max; ++d)
    nu.push_back(nullity(DenseMatrix<S>(convolution_matrix(p, d))));
  std::vector<Index> counts;  // counts[d] = #{eps_i <= d}
  for (Index d = 0; d <= d_max; ++d)
    counts.push_back(nu[d] - (d ? nu[d - 1] : 0));
  require(d_max >= 2 && counts[d_max] == counts[d_max - 1] &&
              nu[d_max] - nu[d_max - 1] == nu[d_max - 1] - nu[d_max - 2],
          "right_minimal_indices: d_max too small (nullity growth not yet affine)");
  std::vector<Index> eps;
  for (Index d = 0; d <= d_max; ++d) {
    const Index fresh = counts[d] - (d ? counts[d - 1] : 0);
    for (Index t = 0; t < fresh; ++t) eps.push_back(d);
  }
  return eps;
}

template <class S>
MatrixPolynomial<S> transpose_poly(const MatrixPolynomial<S>& p) {
  std::vector<DenseMatrix<S>> c;
  for (const auto& m : p.coeffs) c.push_back(m.transpose());
  return MatrixPolynomial<S>(std::move(c));
}

template <class S>
MinimalIndexReport minimal_indices(const MatrixPolynomial<S>& p, Index d_max) {
  MinimalIndexReport rep;
  rep.right = right_minimal_indices(p, d_max);
  rep.left = right_minimal_indices(transpose_poly(p), d_max);
  return rep;
}

// Theorem check: right indices of the pencil are those of P shifted by p,
// left ones shifted by q; both sides computed with the convolution oracle.
template <class S>
bool minimal_index_shift_check(const EbkView<S>& view, const MatrixPolynomial<S>& p,
                               Index d_max) {
  const MinimalIndexReport of_p = minimal_indices(p, d_max);
  const MinimalIndexReport of_l =
      minimal_indices(view.source.as_polynomial(), d_max + std::max(view.p, view.q));
  if (of_p.right.size() != of_l.right.size() || of_p.left.size() != of_l.left.size())
    return false;
  for (size_t i = 0; i < of_p.right.size(); ++i)
    if (of_l.right[i] != of_p.right[i] + view.p) return false;
  for (size_t i = 0; i < of_p.left.size(); ++i)
    if (of_l.left[i] != of_p.left[i] + view.q) return false;
  return true;
}

}  // namespace fk
