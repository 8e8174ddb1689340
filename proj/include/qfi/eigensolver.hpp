#pragma once

#include <Eigen/Dense>

namespace qfi {

struct RealEigensystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // orthonormal columns
};

struct ComplexEigensystem {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

// Full dense symmetric / Hermitian eigensolves (LAPACK divide and conquer).
// The input is taken by value and overwritten by the eigenvectors.
RealEigensystem eigh(Eigen::MatrixXd matrix);
ComplexEigensystem eigh(Eigen::MatrixXcd matrix);

}  // namespace qfi
