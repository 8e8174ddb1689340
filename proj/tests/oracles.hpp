#pragma once

// Reference implementations used only by the tests. They share no code with
// the library: Kronecker-product operators, Eigen's own eigensolver and the
// QFI double sum written out literally.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

inline Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
inline Matrix pauli_y() { return (Matrix(2, 2) << 0, cd(0, -1), cd(0, 1), 0).finished(); }
inline Matrix pauli_z() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }

/// single-site operator at `site` of `n`; site 0 is the least significant bit
/// of the basis index, matching the library's bit convention.
inline Matrix site_operator(const Matrix& op, int site, int n) {
  Matrix out = Matrix::Identity(1, 1);
  for (int l = n - 1; l >= 0; --l) out = kron(out, l == site ? op : Matrix::Identity(2, 2));
  return out;
}

/// Open nearest-neighbour TFIM and O = sum sx / 2.
inline std::pair<Matrix, Matrix> ising_chain(int n, double theta) {
  const int dim = 1 << n;
  Matrix h = Matrix::Zero(dim, dim);
  Matrix o = Matrix::Zero(dim, dim);
  for (int l = 0; l < n; ++l) {
    h += std::sin(theta) * site_operator(pauli_z(), l, n);
    o += 0.5 * site_operator(pauli_x(), l, n);
    if (l + 1 < n) h -= std::cos(theta) * site_operator(pauli_x(), l, n) * site_operator(pauli_x(), l + 1, n);
  }
  return {h, o};
}

/// Infinite-range model on the full 2^N space: -(cos/N) sum_{l != j} s^x s^x + sin sum s^z,
/// with s = sigma / 2. Returns (H, S^x, S^2).
struct FullInfiniteRange {
  Matrix h, sx, s2;
};

inline FullInfiniteRange infinite_range_full(int n, double theta) {
  const int dim = 1 << n;
  Matrix sx = Matrix::Zero(dim, dim), sy = sx, sz = sx;
  for (int l = 0; l < n; ++l) {
    sx += 0.5 * site_operator(pauli_x(), l, n);
    sy += 0.5 * site_operator(pauli_y(), l, n);
    sz += 0.5 * site_operator(pauli_z(), l, n);
  }
  Matrix pair = Matrix::Zero(dim, dim);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      if (l != j) pair += 0.25 * site_operator(pauli_x(), l, n) * site_operator(pauli_x(), j, n);
    }
  }
  FullInfiniteRange out;
  out.h = -(std::cos(theta) / n) * pair + std::sin(theta) * sz;
  out.sx = sx;
  out.s2 = sx * sx + sy * sy + sz * sz;
  return out;
}

/// Orthonormal basis (columns) of the S = N/2 eigenspace of S^2.
inline Matrix symmetric_subspace(const Matrix& s2, int n) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(s2);
  const double target = 0.5 * n * (0.5 * n + 1.0);
  const Eigen::Index count = n + 1;
  // The maximal eigenvalue is non-degenerate in spin; it sits at the top.
  const Eigen::Index dim = s2.rows();
  if (std::abs(solver.eigenvalues()[dim - count] - target) > 1e-9) return Matrix();
  return solver.eigenvectors().rightCols(count);
}

/// F_Q = 2 sum_{l,l'} (p - p')^2 / (p + p') |O_ll'|^2 over all ordered pairs.
inline double qfi_double_sum(const Matrix& h, const Matrix& o, double temperature) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::VectorXd& e = solver.eigenvalues();
  const Matrix m = solver.eigenvectors().adjoint() * o * solver.eigenvectors();
  const Eigen::Index d = e.size();
  Eigen::VectorXd p(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    p[i] = std::exp(-(e[i] - e.minCoeff()) / temperature);
  }
  p /= p.sum();
  double f = 0.0;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      if (p[i] + p[j] > 0.0) f += (p[i] - p[j]) * (p[i] - p[j]) / (p[i] + p[j]) * std::norm(m(i, j));
    }
  }
  return 2.0 * f;
}

/// <O> in the Gibbs state of H via Eigen's eigensolver.
inline double thermal_expectation(const Matrix& h, const Matrix& o, double temperature) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const Eigen::VectorXd& e = solver.eigenvalues();
  Eigen::VectorXd p = (-(e.array() - e.minCoeff()) / temperature).exp();
  p /= p.sum();
  const Matrix m = solver.eigenvectors().adjoint() * o * solver.eigenvectors();
  double mean = 0.0;
  for (Eigen::Index i = 0; i < e.size(); ++i) mean += p[i] * m(i, i).real();
  return mean;
}

/// Spinless fermions on an N-site ring in the full Fock space (Jordan-Wigner),
/// H = -J sum (c_l^dag c_{l+1} + h.c.) - 2 mu sum n_l with c_{N} = -c_0 (antiperiodic
/// for the fermions), and O = sum (-1)^l n_l.
inline std::pair<Matrix, Matrix> free_fermion_ring(int n, double hopping, double mu) {
  const int dim = 1 << n;
  const Matrix lower = (Matrix(2, 2) << 0, 1, 0, 0).finished();  // |0><1| on the site's bit
  std::vector<Matrix> c;
  for (int l = 0; l < n; ++l) {
    Matrix op = site_operator(lower, l, n);
    for (int j = 0; j < l; ++j) op = site_operator(pauli_z(), j, n) * op;
    c.push_back(op);
  }
  Matrix h = Matrix::Zero(dim, dim);
  Matrix o = Matrix::Zero(dim, dim);
  for (int l = 0; l < n; ++l) {
    const Matrix number = c[l].adjoint() * c[l];
    h -= 2.0 * mu * number;
    o += (l % 2 == 0 ? 1.0 : -1.0) * number;
    const int next = (l + 1) % n;
    const double sign = next == 0 ? -1.0 : 1.0;
    const Matrix hop = sign * c[l].adjoint() * c[next];
    h -= hopping * (hop + hop.adjoint());
  }
  return {h, o};
}

}  // namespace oracle
