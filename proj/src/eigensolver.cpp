#include "qfi/eigensolver.hpp"

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "qfi/errors.hpp"

namespace qfi {
namespace {

lapack_int checked_dim(Eigen::Index n) {
  if (n < 1) throw ValidationError("eigh: empty matrix");
  if (n > std::numeric_limits<lapack_int>::max()) throw ResourceError("eigh: matrix too large for LAPACK");
  return static_cast<lapack_int>(n);
}

}  // namespace

RealEigensystem eigh(Eigen::MatrixXd matrix) {
  const lapack_int n = checked_dim(matrix.rows());
  Eigen::VectorXd values(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, matrix.data(), n, values.data());
  if (info != 0) throw std::runtime_error("LAPACKE_dsyevd failed, info = " + std::to_string(info));
  return {std::move(values), std::move(matrix)};
}

ComplexEigensystem eigh(Eigen::MatrixXcd matrix) {
  const lapack_int n = checked_dim(matrix.rows());
  Eigen::VectorXd values(n);
  const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         matrix.data(), n,
                                         values.data());
  if (info != 0) throw std::runtime_error("LAPACKE_zheevd failed, info = " + std::to_string(info));
  return {std::move(values), std::move(matrix)};
}

}  // namespace qfi
