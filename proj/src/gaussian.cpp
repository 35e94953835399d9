#include "bgc/gaussian.hpp"

#include <cmath>
#include <utility>

#include "bgc/errors.hpp"

namespace bgc {
namespace {

void check_square_nonempty(const Matrix& a, const char* name) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw ShapeMismatch(std::string(name) + " must be a nonempty square matrix");
  }
}

/// Minimal noise matrix for a quantum-limited channel of the given tag/kind.
Matrix minimal_noise(ChannelKind kind, ChannelClass::Tag tag, const Matrix& kkstar) {
  const Matrix eye = identity(kkstar.rows());
  if (kind == ChannelKind::contravariant) return 0.5 * (eye + kkstar);
  if (tag == ChannelClass::Tag::attenuator) return 0.5 * (eye - kkstar);
  return 0.5 * (kkstar - eye);
}

}  // namespace

std::string to_string(ChannelKind kind) {
  return kind == ChannelKind::covariant ? "covariant" : "contravariant";
}

std::string to_string(ChannelClass::Tag tag) {
  switch (tag) {
    case ChannelClass::Tag::attenuator: return "attenuator";
    case ChannelClass::Tag::amplifier: return "amplifier";
    default: return "neither";
  }
}

GaussianState::GaussianState(Matrix alpha, const Tolerances& tol) : alpha_(std::move(alpha)) {
  check_square_nonempty(alpha_, "alpha");
  if (!is_hermitian(alpha_, tol.herm)) {
    throw NotHermitian("state covariance alpha is not Hermitian");
  }
  alpha_ = hermitian_part(alpha_);
  const double lowest = min_eigenvalue(alpha_ - 0.5 * identity(alpha_.rows()));
  if (lowest < -tol.psd) {
    throw BelowVacuum("alpha - I/2 has eigenvalue " + std::to_string(lowest) +
                      " below the vacuum floor");
  }
}

GaussianState GaussianState::vacuum(int modes) {
  return GaussianState(0.5 * identity(modes));
}

GaussianChannel::GaussianChannel(ChannelKind kind, Matrix K, Matrix mu, const Tolerances& tol)
    : kind_(kind), K_(std::move(K)), mu_(std::move(mu)) {
  if (K_.rows() == 0 || K_.cols() == 0) {
    throw ShapeMismatch("K must have at least one input and output mode");
  }
  check_square_nonempty(mu_, "mu");
  if (mu_.rows() != K_.rows()) {
    throw ShapeMismatch("mu must be square with the output dimension of K");
  }
  if (!is_hermitian(mu_, tol.herm)) {
    throw NotHermitian("channel noise matrix mu is not Hermitian");
  }
  mu_ = hermitian_part(mu_);

  const Matrix kkstar = K_ * K_.adjoint();
  const Matrix eye = bgc::identity(K_.rows());
  if (kind_ == ChannelKind::covariant) {
    const double m1 = min_eigenvalue(mu_ - 0.5 * (eye - kkstar));
    const double m2 = min_eigenvalue(mu_ + 0.5 * (eye - kkstar));
    const double worst = std::min(m1, m2);
    if (worst < -tol.psd) {
      throw InequalityViolated("mu violates mu >= +-(I - K K*)/2", worst);
    }
  } else {
    const double worst = min_eigenvalue(mu_ - 0.5 * (eye + kkstar));
    if (worst < -tol.psd) {
      throw InequalityViolated("mu violates mu >= (I + K K*)/2", worst);
    }
  }
}

GaussianChannel GaussianChannel::identity(int modes) {
  return GaussianChannel(ChannelKind::covariant, bgc::identity(modes),
                         Matrix::Zero(modes, modes));
}

GaussianChannel GaussianChannel::quantum_limited_attenuator(const Matrix& K) {
  const Matrix kkstar = K * K.adjoint();
  return GaussianChannel(ChannelKind::covariant, K,
                         0.5 * (bgc::identity(K.rows()) - kkstar));
}

GaussianChannel GaussianChannel::quantum_limited_amplifier(const Matrix& K) {
  const Matrix kkstar = K * K.adjoint();
  return GaussianChannel(ChannelKind::covariant, K,
                         0.5 * (kkstar - bgc::identity(K.rows())));
}

GaussianChannel GaussianChannel::quantum_limited_contravariant(const Matrix& K) {
  const Matrix kkstar = K * K.adjoint();
  return GaussianChannel(ChannelKind::contravariant, K,
                         0.5 * (bgc::identity(K.rows()) + kkstar));
}

GaussianChannel GaussianChannel::thermal(double eta, double N) {
  if (eta < 0.0 || eta > 1.0 || N < 0.0) {
    throw ParameterOutOfRange("thermal channel requires eta in [0,1] and N >= 0");
  }
  Matrix K(1, 1), mu(1, 1);
  K(0, 0) = std::sqrt(eta);
  mu(0, 0) = (1.0 - eta) * (N + 0.5);
  return GaussianChannel(ChannelKind::covariant, K, mu);
}

GaussianChannel GaussianChannel::additive_noise(double N) {
  if (N < 0.0) throw ParameterOutOfRange("additive noise channel requires N >= 0");
  Matrix K(1, 1), mu(1, 1);
  K(0, 0) = 1.0;
  mu(0, 0) = N;
  return GaussianChannel(ChannelKind::covariant, K, mu);
}

GaussianChannel GaussianChannel::noisy_amplifier(double kappa, double N) {
  if (kappa < 1.0 || N < 0.0) {
    throw ParameterOutOfRange("noisy amplifier requires kappa >= 1 and N >= 0");
  }
  Matrix K(1, 1), mu(1, 1);
  K(0, 0) = std::sqrt(kappa);
  mu(0, 0) = (kappa - 1.0) * (N + 0.5);
  return GaussianChannel(ChannelKind::covariant, K, mu);
}

GaussianState validate_state(const Matrix& alpha, const Tolerances& tol) {
  return GaussianState(alpha, tol);
}

GaussianChannel validate_channel(ChannelKind kind, const Matrix& K, const Matrix& mu,
                                 const Tolerances& tol) {
  return GaussianChannel(kind, K, mu, tol);
}

ChannelClass classify(const GaussianChannel& channel, const Tolerances& tol) {
  const Matrix kkstar = channel.K() * channel.K().adjoint();
  const Eigensystem es = eigh(kkstar);
  const double lo = es.values.minCoeff();
  const double hi = es.values.maxCoeff();

  ChannelClass result;
  if (hi <= 1.0 + tol.psd) {
    result.tag = ChannelClass::Tag::attenuator;
  } else if (lo >= 1.0 - tol.psd) {
    result.tag = ChannelClass::Tag::amplifier;
  } else {
    result.tag = ChannelClass::Tag::neither;
  }

  if (channel.kind() == ChannelKind::contravariant) {
    result.quantum_limited =
        max_abs(channel.mu() - minimal_noise(channel.kind(), result.tag, kkstar)) <= tol.eq;
  } else if (result.tag != ChannelClass::Tag::neither) {
    result.quantum_limited =
        max_abs(channel.mu() - minimal_noise(channel.kind(), result.tag, kkstar)) <= tol.eq;
  }
  return result;
}

GaussianState apply(const GaussianChannel& channel, const GaussianState& state,
                    const Tolerances& tol) {
  if (state.modes() != channel.input_modes()) {
    throw ModeMismatch("state has " + std::to_string(state.modes()) +
                       " modes, channel expects " + std::to_string(channel.input_modes()));
  }
  const Matrix& K = channel.K();
  Matrix out;
  if (channel.kind() == ChannelKind::covariant) {
    out = K * state.alpha() * K.adjoint() + channel.mu();
  } else {
    // Characteristic-function bookkeeping for the phase-inverted kind turns
    // alpha into its entrywise conjugate (equal to its transpose).
    out = K * state.alpha().conjugate() * K.adjoint() + channel.mu();
  }
  return GaussianState(out, tol);
}

GaussianChannel concatenate(const GaussianChannel& second, const GaussianChannel& first,
                            const Tolerances& tol) {
  if (first.output_modes() != second.input_modes()) {
    throw ModeMismatch("first stage outputs " + std::to_string(first.output_modes()) +
                       " modes, second stage expects " +
                       std::to_string(second.input_modes()));
  }
  // A contravariant second stage sees the first stage through a phase
  // inversion, which conjugates (K1, mu1) entrywise. Two inversions cancel,
  // so the composite kind is the parity of the two kinds.
  const bool conjugate_first = second.kind() == ChannelKind::contravariant;
  const Matrix K1 = conjugate_first ? first.K().conjugate() : first.K();
  const Matrix mu1 = conjugate_first ? first.mu().conjugate() : first.mu();

  const ChannelKind kind = first.kind() == second.kind() ? ChannelKind::covariant
                                                         : ChannelKind::contravariant;
  const Matrix K = second.K() * K1;
  const Matrix mu = second.K() * mu1 * second.K().adjoint() + second.mu();
  try {
    return GaussianChannel(kind, K, mu, tol);
  } catch (const InequalityViolated& e) {
    // Composites of valid channels are valid; reaching this means the
    // conjugation bookkeeping above is broken.
    throw InequalityViolated(std::string("concatenate produced an invalid channel: ") +
                                 e.what(),
                             e.most_negative_eigenvalue);
  }
}

ChannelDecomposition decompose(const GaussianChannel& channel, const Tolerances& tol) {
  const Matrix& K = channel.K();
  const Matrix kkstar = K * K.adjoint();
  const Matrix eye = identity(K.rows());

  if (channel.kind() == ChannelKind::covariant) {
    // |K2*|^2 = mu + (K K* + I)/2 >= I, so the inverse root is genuine.
    const Matrix n2 = hermitian_part(channel.mu() + 0.5 * (kkstar + eye));
    const Matrix K2 = sqrt_psd(n2);
    const Matrix K1 = pinv_sqrt_psd(n2, tol.sigma_cut) * K;
    const Matrix mu1 = 0.5 * (identity(K1.rows()) - K1 * K1.adjoint());
    const Matrix mu2 = 0.5 * (n2 - eye);
    return {GaussianChannel(ChannelKind::covariant, K1, mu1, tol),
            GaussianChannel(ChannelKind::covariant, K2, mu2, tol)};
  }

  // Contravariant source: |K2*|^2 = mu + (K K* - I)/2 >= K K* may be
  // singular; the generalized inverse acts on its support, and the
  // attenuator matrix picks up an entrywise conjugation.
  const Matrix n2 = hermitian_part(channel.mu() + 0.5 * (kkstar - eye));
  const Matrix K2 = sqrt_psd(n2);
  const Matrix K1 = (pinv_sqrt_psd(n2, tol.sigma_cut) * K).conjugate();
  const Matrix mu1 = 0.5 * (identity(K1.rows()) - K1 * K1.adjoint());
  const Matrix mu2 = 0.5 * (n2 + eye);
  return {GaussianChannel(ChannelKind::covariant, K1, mu1, tol),
          GaussianChannel(ChannelKind::contravariant, K2, mu2, tol)};
}

GaussianChannel complementary_of_amplifier(const GaussianChannel& channel,
                                           const Tolerances& tol) {
  if (channel.kind() != ChannelKind::covariant) {
    throw NotQuantumLimitedAmplifier("complementary construction needs a covariant channel");
  }
  const ChannelClass cls = classify(channel, tol);
  if (cls.tag != ChannelClass::Tag::amplifier || !cls.quantum_limited) {
    // K K* = I passes classify as an attenuator; it is also a (degenerate)
    // quantum-limited amplifier, so accept it here.
    const Matrix kkstar = channel.K() * channel.K().adjoint();
    const bool unit_gain = max_abs(kkstar - identity(kkstar.rows())) <= tol.psd &&
                           max_abs(channel.mu()) <= tol.eq;
    if (!unit_gain) {
      throw NotQuantumLimitedAmplifier(
          "channel is not a quantum-limited amplifier (tag=" + to_string(cls.tag) + ")");
    }
  }
  const Matrix& K = channel.K();
  Matrix off_diag = K;
  off_diag.diagonal().setZero();
  if (max_abs(off_diag) > tol.eq) {
    throw NotDiagonal("amplifier matrix K must be diagonal; diagonalize first");
  }
  const Matrix kkstar = K * K.adjoint();
  const Matrix ktilde = sqrt_psd(kkstar - identity(K.rows()));
  return GaussianChannel::quantum_limited_contravariant(ktilde);
}

bool is_entanglement_breaking(const GaussianChannel& channel, const Tolerances& tol) {
  const Matrix kkstar = channel.K() * channel.K().adjoint();
  const Matrix gap = channel.mu() - 0.5 * (kkstar + identity(kkstar.rows()));
  return min_eigenvalue(gap) >= -tol.psd;
}

DiagonalForm diagonalize(const GaussianChannel& channel, const Tolerances& tol) {
  const ChannelClass cls = classify(channel, tol);
  if (!cls.quantum_limited) {
    throw NotQuantumLimited("only quantum-limited channels are guaranteed diagonalizable");
  }
  Eigen::JacobiSVD<Matrix> svd(channel.K(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  DiagonalForm form;
  form.V_B = svd.matrixU();
  form.V_A = svd.matrixV().adjoint();
  form.singular_values = svd.singularValues();
  return form;
}

bool channels_equal(const GaussianChannel& a, const GaussianChannel& b,
                    const Tolerances& tol) {
  if (a.kind() != b.kind()) return false;
  if (a.input_modes() != b.input_modes() || a.output_modes() != b.output_modes()) return false;
  return max_abs(a.K() - b.K()) <= tol.eq && max_abs(a.mu() - b.mu()) <= tol.eq;
}

}  // namespace bgc
