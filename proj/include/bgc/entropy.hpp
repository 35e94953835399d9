#pragma once

#include "bgc/gaussian.hpp"
#include "bgc/linalg.hpp"

namespace bgc {

/// Entropy of a thermal state with mean photon number x, in nats:
/// g(x) = (x+1) log(x+1) - x log x, continuously extended by g(0) = 0.
/// Throws NegativeArgument for x < 0.
double g(double x);

/// g'(x) = log((x+1)/x). The argument is floored at 1e-30.
double g_prime(double x);

/// Sum of g over the (clamped) spectrum of a Hermitian PSD matrix.
double trace_g(const Matrix& hermitian_psd);

/// g' applied as a matrix function, eigenvalues floored at 1e-30.
Matrix g_prime_matrix(const Matrix& hermitian_psd);

/// Entropy of a Gaussian gauge-invariant state: tr g(alpha - I/2), nats.
double gaussian_entropy(const GaussianState& state);

/// Minimal output entropy per channel use, attained on the vacuum:
/// tr g(mu + (K K* - I)/2). Valid for both channel kinds (the vacuum output
/// covariance is K K*/2 + mu either way); n parallel uses give n times this.
double min_output_entropy(const GaussianChannel& channel);

}  // namespace bgc
