#pragma once

#include "bgc/gaussian.hpp"
#include "bgc/linalg.hpp"
#include "bgc/tolerances.hpp"

namespace bgc {

enum class LogBase { nats, bits };

/// Converts a value from nats to the requested base.
double from_nats(double value_nats, LogBase base);

/// Energy constraint tr(nu epsilon) <= E on ensemble covariances, with a
/// positive-definite weight matrix epsilon (energy per photon, per mode).
struct EnergyConstraint {
  EnergyConstraint(Matrix epsilon_in, double budget, const Tolerances& tol = {});

  Matrix epsilon;
  double E;
};

struct CapacityResult {
  double value = 0.0;           // nats
  Matrix optimal_nu;            // ensemble covariance attaining the value
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;   // stationarity residual at the final iterate
};

struct OptimizerOptions {
  double grad_tol = 1e-8;   // projected-gradient norm target
  double gap_tol = 1e-9;    // duality-gap certificate target, nats
  int max_iter = 10000;
};

/// Constrained classical capacity
///   max over {nu >= 0, tr(nu epsilon) <= E} of
///     tr g(K nu K* + c) - tr g(c),   c = mu + (K K* - I)/2,
/// a concave water-filling problem over the PSD cone, solved by projected
/// gradient ascent in epsilon-whitened coordinates. The returned value is
/// certified by a Frank-Wolfe duality gap or projected-gradient
/// stationarity (whichever triggers), and matches waterfilling_commuting on
/// commuting instances.
CapacityResult constrained_capacity(const GaussianChannel& channel,
                                    const EnergyConstraint& constraint,
                                    const OptimizerOptions& options = {},
                                    const Tolerances& tol = {});

/// Closed-form water filling for simultaneously diagonalizable (K, mu,
/// epsilon): bisection on the Lagrange multiplier of the per-mode
/// stationarity condition k^2 g'(k^2 nu + c) = lambda epsilon.
/// Throws NotCommuting when no common eigenbasis exists.
CapacityResult waterfilling_commuting(const GaussianChannel& channel,
                                      const EnergyConstraint& constraint,
                                      const Tolerances& tol = {});

/// One-mode closed forms, in nats.
double thermal_capacity(double eta, double N, double E);
double additive_capacity(double N, double E);
double amplifier_capacity(double kappa, double N, double E);

/// Classical baseline C = (1/2) log(1 + E/N). Throws ZeroNoise for N <= 0.
double shannon_capacity(double E, double N, LogBase base = LogBase::nats);

}  // namespace bgc
