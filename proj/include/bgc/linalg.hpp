#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "bgc/tolerances.hpp"

namespace bgc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Result of a Hermitian eigendecomposition, eigenvalues ascending.
struct Eigensystem {
  RealVector values;
  Matrix vectors;
};

bool is_hermitian(const Matrix& a, double tol);

/// (A + A*)/2; cheap symmetrization before eigensolves.
Matrix hermitian_part(const Matrix& a);

Eigensystem eigh(const Matrix& hermitian);

double min_eigenvalue(const Matrix& hermitian);

/// Applies a scalar function to the spectrum of a Hermitian matrix.
/// Eigenvalues below `clamp_floor` are clamped to it before applying fn.
Matrix spectral_map(const Matrix& hermitian, const std::function<double(double)>& fn,
                    double clamp_floor);

/// Principal square root of a Hermitian PSD matrix; tiny negative
/// eigenvalues are clamped to zero.
Matrix sqrt_psd(const Matrix& a);

/// Moore-Penrose inverse of a Hermitian PSD matrix with a relative
/// eigenvalue cutoff.
Matrix pinv_psd(const Matrix& a, double sigma_cut);

/// Pseudo-inverse square root: eigenvalues above the cutoff map to
/// 1/sqrt(lambda), the rest to zero.
Matrix pinv_sqrt_psd(const Matrix& a, double sigma_cut);

double max_abs(const Matrix& a);

/// Frobenius inner product Re tr(A* B) of two Hermitian matrices.
double frobenius_inner(const Matrix& a, const Matrix& b);

Matrix identity(Eigen::Index n);

}  // namespace bgc
