// Generalized eigenvalue kernel: LAPACK zggev (QZ) behind the adapter
// declared in verify.hpp.
#include "fiedlerkron/verify.hpp"

#include <lapacke.h>

namespace fk {

GeneralizedEigenvalues generalized_eigs(const DenseMatrix<Cplx>& a,
                                        const DenseMatrix<Cplx>& b) {
  require(a.rows() == a.cols() && b.rows() == b.cols() && a.rows() == b.rows(),
          "generalized_eigs: matrices must be square and compatible");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  GeneralizedEigenvalues out;
  out.alpha.resize(n);
  out.beta.resize(n);
  if (n == 0) return out;
  DenseMatrix<Cplx> aw = a, bw = b;  // zggev overwrites its inputs
  const lapack_int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, 'N', 'N', n,
      reinterpret_cast<lapack_complex_double*>(aw.data()), n,
      reinterpret_cast<lapack_complex_double*>(bw.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.alpha.data()),
      reinterpret_cast<lapack_complex_double*>(out.beta.data()), nullptr, 1, nullptr, 1);
  ensure(info == 0, "generalized_eigs: zggev failed to converge");
  return out;
}

}  // namespace fk
