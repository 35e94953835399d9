#include "bgc/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bgc/entropy.hpp"
#include "bgc/errors.hpp"

namespace bgc {

double from_nats(double value_nats, LogBase base) {
  return base == LogBase::nats ? value_nats : value_nats / M_LN2;
}

EnergyConstraint::EnergyConstraint(Matrix epsilon_in, double budget, const Tolerances& tol)
    : epsilon(std::move(epsilon_in)), E(budget) {
  if (epsilon.rows() == 0 || epsilon.rows() != epsilon.cols()) {
    throw ShapeMismatch("epsilon must be a nonempty square matrix");
  }
  if (!is_hermitian(epsilon, tol.herm)) {
    throw NotHermitian("energy weight matrix epsilon is not Hermitian");
  }
  epsilon = hermitian_part(epsilon);
  if (min_eigenvalue(epsilon) <= tol.psd) {
    throw ParameterOutOfRange("epsilon must be positive definite");
  }
  if (E < 0.0) {
    throw ParameterOutOfRange("energy budget E must be nonnegative");
  }
}

namespace {

/// Euclidean projection onto {X Hermitian, X >= 0, tr X <= E}.
Matrix project_psd_trace(const Matrix& x, double budget) {
  const Eigensystem es = eigh(x);
  const Eigen::Index n = es.values.size();

  double clamped_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) clamped_sum += std::max(es.values[i], 0.0);

  RealVector lam(n);
  if (clamped_sum <= budget) {
    for (Eigen::Index i = 0; i < n; ++i) lam[i] = std::max(es.values[i], 0.0);
  } else {
    // Water-line shift: lam_i = max(v_i - theta, 0) with sum lam = budget.
    std::vector<double> sorted(es.values.data(), es.values.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double prefix = 0.0;
    double theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      prefix += sorted[k];
      const double candidate = (prefix - budget) / static_cast<double>(k + 1);
      if (k + 1 == n || sorted[k + 1] <= candidate) {
        theta = candidate;
        break;
      }
    }
    for (Eigen::Index i = 0; i < n; ++i) lam[i] = std::max(es.values[i] - theta, 0.0);
  }
  return es.vectors * lam.asDiagonal() * es.vectors.adjoint();
}

struct WhitenedProblem {
  Matrix M;        // K eps^{-1/2}
  Matrix c;        // mu + (K K* - I)/2
  Matrix w_inv;    // eps^{-1/2}
  double E = 0.0;

  double objective(const Matrix& omega) const {
    return trace_g(M * omega * M.adjoint() + c);
  }
  Matrix gradient(const Matrix& omega) const {
    return hermitian_part(M.adjoint() * g_prime_matrix(M * omega * M.adjoint() + c) * M);
  }
};

}  // namespace

CapacityResult constrained_capacity(const GaussianChannel& channel,
                                    const EnergyConstraint& constraint,
                                    const OptimizerOptions& options,
                                    const Tolerances& tol) {
  const int s_in = channel.input_modes();
  if (constraint.epsilon.rows() != s_in) {
    throw ShapeMismatch("epsilon dimension does not match the channel input modes");
  }

  const Matrix kkstar = channel.K() * channel.K().adjoint();
  WhitenedProblem prob;
  prob.c = hermitian_part(channel.mu() + 0.5 * (kkstar - identity(kkstar.rows())));
  prob.w_inv = pinv_sqrt_psd(constraint.epsilon, 0.0);
  prob.M = channel.K() * prob.w_inv;
  prob.E = constraint.E;

  const double base_entropy = trace_g(prob.c);

  CapacityResult result;
  result.optimal_nu = Matrix::Zero(s_in, s_in);
  if (constraint.E <= 0.0) {
    result.converged = true;
    return result;
  }

  // Strictly interior start nu0 = (E / (s tr eps)) I, i.e. omega0 scaled eps.
  const double eps_trace = constraint.epsilon.trace().real();
  Matrix omega = (constraint.E / (s_in * eps_trace)) * constraint.epsilon;

  double f_curr = prob.objective(omega);
  Matrix grad = prob.gradient(omega);

  double step = 1.0;
  Matrix prev_omega, prev_grad;
  bool have_prev = false;
  double residual_norm = 0.0;

  int it = 0;
  for (; it < options.max_iter; ++it) {
    // Stationarity residual with unit reference step.
    const Matrix projected = project_psd_trace(omega + grad, prob.E);
    residual_norm = (projected - omega).norm();

    // Frank-Wolfe gap bounds the remaining suboptimality from above.
    const Eigensystem grad_es = eigh(grad);
    const double gap =
        prob.E * std::max(grad_es.values.maxCoeff(), 0.0) - frobenius_inner(grad, omega);

    if (residual_norm <= options.grad_tol || gap <= options.gap_tol) {
      result.converged = true;
      break;
    }

    // Barzilai-Borwein step length, safeguarded by Armijo backtracking along
    // the projection arc.
    if (have_prev) {
      const Matrix d_omega = omega - prev_omega;
      const Matrix d_grad = grad - prev_grad;
      const double denom = -frobenius_inner(d_omega, d_grad);
      const double numer = frobenius_inner(d_omega, d_omega);
      if (denom > 1e-300 && numer > 0.0) {
        step = std::clamp(numer / denom, 1e-10, 1e10);
      }
    }

    double eta = step;
    Matrix candidate;
    double f_cand = f_curr;
    bool improved = false;
    for (int bt = 0; bt < 70; ++bt) {
      candidate = project_psd_trace(omega + eta * grad, prob.E);
      f_cand = prob.objective(candidate);
      const double along = frobenius_inner(grad, candidate - omega);
      if (f_cand >= f_curr + 1e-4 * along && f_cand > f_curr - 1e-18) {
        improved = along > 0.0 || f_cand > f_curr;
        break;
      }
      eta *= 0.5;
    }
    if (!improved && f_cand <= f_curr) {
      // Line search exhausted: treat as converged to working precision.
      result.converged = residual_norm <= 1e4 * options.grad_tol;
      break;
    }

    prev_omega = omega;
    prev_grad = grad;
    have_prev = true;
    omega = candidate;
    f_curr = f_cand;
    grad = prob.gradient(omega);
  }

  result.value = std::max(f_curr - base_entropy, 0.0);
  result.optimal_nu = hermitian_part(prob.w_inv * omega * prob.w_inv);
  result.iterations = it;
  result.gradient_norm = residual_norm;
  return result;
}

namespace {

bool commutes(const Matrix& a, const Matrix& b, double tol_eq) {
  const double scale = std::max(1.0, max_abs(a) * max_abs(b)) * a.rows();
  return max_abs(a * b - b * a) <= tol_eq * scale;
}

struct ModeData {
  double k2;  // |k_j|^2
  double c;   // per-mode noise photon number
  double e;   // per-mode energy weight
};

double water_level(const ModeData& m, double lambda) {
  if (m.k2 <= 0.0) return 0.0;
  const double x = lambda * m.e / m.k2;
  if (x > 700.0) return 0.0;
  const double target = 1.0 / std::expm1(x);  // solves g'(arg) = x
  return std::max(0.0, (target - m.c) / m.k2);
}

}  // namespace

CapacityResult waterfilling_commuting(const GaussianChannel& channel,
                                      const EnergyConstraint& constraint,
                                      const Tolerances& tol) {
  const Matrix& K = channel.K();
  if (K.rows() != K.cols()) {
    throw NotCommuting("water filling needs equal input and output mode counts");
  }
  if (constraint.epsilon.rows() != K.rows()) {
    throw ShapeMismatch("epsilon dimension does not match the channel input modes");
  }
  const Matrix& mu = channel.mu();
  const Matrix& eps = constraint.epsilon;
  if (!commutes(K, Matrix(K.adjoint()), tol.eq) || !commutes(K, mu, tol.eq) ||
      !commutes(K, eps, tol.eq) || !commutes(mu, eps, tol.eq)) {
    throw NotCommuting("K, mu and epsilon do not commute");
  }

  // Shared eigenbasis from a generic Hermitian combination; a couple of
  // coefficient sets guard against accidental degeneracies.
  const Matrix re_k = hermitian_part(K);
  const Matrix im_k = hermitian_part(Complex(0, -1) * (K - K.adjoint()) * 0.5);
  const double basis_tol =
      1e-8 * std::max({1.0, max_abs(K), max_abs(mu), max_abs(eps)});
  Matrix basis;
  bool found = false;
  const double coeffs[3][4] = {{1.0, 0.61803398874989484, 1.4142135623730951, 2.2360679774997896},
                               {0.3331, 1.7712, 0.9273, 1.2599},
                               {2.7182, 0.1618, 1.0472, 0.5772}};
  for (const auto& a : coeffs) {
    const Matrix h = a[0] * re_k + a[1] * im_k + a[2] * mu + a[3] * eps;
    const Matrix u = eigh(h).vectors;
    auto off_diag = [&](const Matrix& m) {
      Matrix d = u.adjoint() * m * u;
      d.diagonal().setZero();
      return max_abs(d);
    };
    if (off_diag(K) <= basis_tol && off_diag(mu) <= basis_tol && off_diag(eps) <= basis_tol) {
      basis = u;
      found = true;
      break;
    }
  }
  if (!found) {
    throw NotCommuting("no common eigenbasis found within tolerance");
  }

  const Eigen::Index n = K.rows();
  const Matrix kd = basis.adjoint() * K * basis;
  const Matrix md = basis.adjoint() * mu * basis;
  const Matrix ed = basis.adjoint() * eps * basis;
  std::vector<ModeData> modes(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double k2 = std::norm(kd(j, j));
    modes[j] = {k2, std::max(0.0, md(j, j).real() + 0.5 * (k2 - 1.0)), ed(j, j).real()};
  }

  CapacityResult result;
  result.converged = true;
  RealVector nu = RealVector::Zero(n);

  const bool any_gain =
      std::any_of(modes.begin(), modes.end(), [](const ModeData& m) { return m.k2 > 0.0; });
  int iterations = 0;
  double lambda = 0.0;
  if (constraint.E > 0.0 && any_gain) {
    auto spent = [&](double lam) {
      double total = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) total += modes[j].e * water_level(modes[j], lam);
      return total;
    };
    double hi = 1.0;
    while (spent(hi) > constraint.E && hi < 1e300) hi *= 2.0;
    double lo = hi;
    while (spent(lo) < constraint.E && lo > 1e-300) lo *= 0.5;
    for (int it = 0; it < 200; ++it) {
      ++iterations;
      const double mid = 0.5 * (lo + hi);
      if (spent(mid) > constraint.E) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo <= 1e-16 * hi) break;
    }
    lambda = 0.5 * (lo + hi);
    for (Eigen::Index j = 0; j < n; ++j) nu[j] = water_level(modes[j], lambda);
  }

  double value = 0.0;
  double kkt = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const ModeData& m = modes[j];
    value += g(m.k2 * nu[j] + m.c) - g(m.c);
    if (m.k2 > 0.0 && constraint.E > 0.0) {
      const double marginal = m.k2 * g_prime(m.k2 * nu[j] + m.c);
      kkt = std::max(kkt, nu[j] > 0.0 ? std::abs(marginal - lambda * m.e)
                                      : std::max(0.0, marginal - lambda * m.e));
    }
  }

  result.value = value;
  result.optimal_nu = basis * nu.cast<Complex>().asDiagonal() * basis.adjoint();
  result.iterations = iterations;
  result.gradient_norm = kkt;
  return result;
}

double thermal_capacity(double eta, double N, double E) {
  if (eta < 0.0 || eta > 1.0 || N < 0.0 || E < 0.0) {
    throw ParameterOutOfRange("thermal_capacity requires eta in [0,1], N >= 0, E >= 0");
  }
  return g(eta * E + (1.0 - eta) * N) - g((1.0 - eta) * N);
}

double additive_capacity(double N, double E) {
  if (N < 0.0 || E < 0.0) {
    throw ParameterOutOfRange("additive_capacity requires N >= 0 and E >= 0");
  }
  return g(E + N) - g(N);
}

double amplifier_capacity(double kappa, double N, double E) {
  if (kappa < 1.0 || N < 0.0 || E < 0.0) {
    throw ParameterOutOfRange("amplifier_capacity requires kappa >= 1, N >= 0, E >= 0");
  }
  return g(kappa * E + (kappa - 1.0) * (N + 1.0)) - g((kappa - 1.0) * (N + 1.0));
}

double shannon_capacity(double E, double N, LogBase base) {
  if (N <= 0.0) throw ZeroNoise("shannon_capacity requires N > 0");
  if (E < 0.0) throw ParameterOutOfRange("shannon_capacity requires E >= 0");
  // Evaluate directly in the requested base so that E = N gives exactly 0.5
  // bits.
  return base == LogBase::bits ? 0.5 * std::log2(1.0 + E / N)
                               : 0.5 * std::log1p(E / N);
}

}  // namespace bgc
