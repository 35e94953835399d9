#include "bgc/entropy.hpp"

#include <cmath>

#include "bgc/errors.hpp"

namespace bgc {

namespace {
constexpr double kTinyArgument = 1e-30;
}

double g(double x) {
  if (x < 0.0) {
    throw NegativeArgument("g is defined for x >= 0, got " + std::to_string(x));
  }
  if (x < kTinyArgument) return 0.0;
  // x log(1 + 1/x) + log(1 + x) is stable for both tiny and large x.
  return x * std::log1p(1.0 / x) + std::log1p(x);
}

double g_prime(double x) {
  const double floored = std::max(x, kTinyArgument);
  return std::log1p(1.0 / floored);
}

double trace_g(const Matrix& hermitian_psd) {
  const Eigensystem es = eigh(hermitian_psd);
  double total = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    total += g(std::max(es.values[i], 0.0));
  }
  return total;
}

Matrix g_prime_matrix(const Matrix& hermitian_psd) {
  return spectral_map(hermitian_psd, [](double x) { return g_prime(x); }, 0.0);
}

double gaussian_entropy(const GaussianState& state) {
  return trace_g(state.alpha() - 0.5 * identity(state.modes()));
}

double min_output_entropy(const GaussianChannel& channel) {
  const Matrix kkstar = channel.K() * channel.K().adjoint();
  return trace_g(channel.mu() + 0.5 * (kkstar - identity(kkstar.rows())));
}

}  // namespace bgc
