#pragma once

#include <string>

#include <Eigen/Dense>

namespace qfi {

/// Dense complex Hermitian matrix (a Hamiltonian or a generator).
///
/// Construction checks Hermiticity to 1e-12 of the largest-magnitude entry
/// and stores the exactly symmetrised matrix (A + A^dagger) / 2.
class HermitianOperator {
 public:
  explicit HermitianOperator(Eigen::MatrixXcd entries, std::string label = {});

  static HermitianOperator from_real(const Eigen::MatrixXd& entries, std::string label = {});
  static HermitianOperator identity(Eigen::Index dim, std::string label = "identity");

  Eigen::Index dim() const noexcept { return entries_.rows(); }
  const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
  const std::string& label() const noexcept { return label_; }

  /// True when every imaginary part is exactly zero.
  bool is_real() const;

  /// Largest-magnitude entry.
  double max_abs() const;

  /// this + c * identity
  HermitianOperator shifted(double c) const;

 private:
  Eigen::MatrixXcd entries_;
  std::string label_;
};

}  // namespace qfi
