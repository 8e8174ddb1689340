#include "qfi/hermitian_operator.hpp"

#include <utility>

#include "qfi/errors.hpp"

namespace qfi {

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw ValidationError("HermitianOperator '" + label_ + "': matrix must be square with dim >= 1");
  }
  if (!entries_.allFinite()) {
    throw ValidationError("HermitianOperator '" + label_ + "': non-finite entry");
  }
  const double scale = entries_.cwiseAbs().maxCoeff();
  const double asymmetry = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-12 * scale) {
    throw ValidationError("HermitianOperator '" + label_ + "': not Hermitian (max |A - A^+| = " +
                          std::to_string(asymmetry) + ")");
  }
  entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
}

HermitianOperator HermitianOperator::from_real(const Eigen::MatrixXd& entries, std::string label) {
  return HermitianOperator(entries.cast<std::complex<double>>(), std::move(label));
}

HermitianOperator HermitianOperator::identity(Eigen::Index dim, std::string label) {
  return HermitianOperator(Eigen::MatrixXcd::Identity(dim, dim), std::move(label));
}

bool HermitianOperator::is_real() const { return (entries_.imag().array() == 0.0).all(); }

double HermitianOperator::max_abs() const { return entries_.cwiseAbs().maxCoeff(); }

HermitianOperator HermitianOperator::shifted(double c) const {
  Eigen::MatrixXcd m = entries_;
  m.diagonal().array() += c;
  return HermitianOperator(std::move(m), label_);
}

}  // namespace qfi
