#include "bgc/linalg.hpp"

#include <cmath>

namespace bgc {

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

Eigensystem eigh(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(hermitian));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(hermitian),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Matrix spectral_map(const Matrix& hermitian, const std::function<double(double)>& fn,
                    double clamp_floor) {
  Eigensystem es = eigh(hermitian);
  RealVector mapped(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    mapped[i] = fn(std::max(es.values[i], clamp_floor));
  }
  return es.vectors * mapped.asDiagonal() * es.vectors.adjoint();
}

Matrix sqrt_psd(const Matrix& a) {
  return spectral_map(a, [](double x) { return std::sqrt(x); }, 0.0);
}

Matrix pinv_psd(const Matrix& a, double sigma_cut) {
  Eigensystem es = eigh(a);
  const double cutoff = sigma_cut * std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  RealVector inv(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    inv[i] = es.values[i] > cutoff ? 1.0 / es.values[i] : 0.0;
  }
  return es.vectors * inv.asDiagonal() * es.vectors.adjoint();
}

Matrix pinv_sqrt_psd(const Matrix& a, double sigma_cut) {
  Eigensystem es = eigh(a);
  const double cutoff = sigma_cut * std::max(es.values.cwiseAbs().maxCoeff(), 0.0);
  RealVector inv(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    inv[i] = es.values[i] > cutoff ? 1.0 / std::sqrt(es.values[i]) : 0.0;
  }
  return es.vectors * inv.asDiagonal() * es.vectors.adjoint();
}

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
  return (a.adjoint() * b).trace().real();
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

}  // namespace bgc
