#pragma once

#include <string>

#include "bgc/linalg.hpp"
#include "bgc/tolerances.hpp"

namespace bgc {

/// Gauge-covariant channels commute with phase rotations; gauge-contravariant
/// channels commute with them up to a phase inversion of the output.
enum class ChannelKind { covariant, contravariant };

std::string to_string(ChannelKind kind);

/// Gauge-invariant Gaussian state of s modes, held as the s x s complex
/// Hermitian covariance operator alpha >= I/2 (photon-number units).
/// The vacuum is alpha = I/2; a one-mode thermal state with mean photon
/// number nbar is alpha = nbar + 1/2.
class GaussianState {
 public:
  /// Validates Hermiticity and alpha - I/2 >= 0; throws NotHermitian or
  /// BelowVacuum otherwise.
  explicit GaussianState(Matrix alpha, const Tolerances& tol = {});

  static GaussianState vacuum(int modes);

  int modes() const { return static_cast<int>(alpha_.rows()); }
  const Matrix& alpha() const { return alpha_; }

 private:
  Matrix alpha_;
};

/// Multimode bosonic Gaussian gauge-covariant or contravariant channel,
/// determined by the matrix pair (K, mu) acting on displacement operators.
///
/// Validity:
///   covariant:      mu >= +-(I - K K*)/2   (both signs)
///   contravariant:  mu >=   (I + K K*)/2
class GaussianChannel {
 public:
  /// Validates shapes, Hermiticity of mu and the kind-appropriate matrix
  /// inequality; throws ShapeMismatch, NotHermitian or InequalityViolated.
  GaussianChannel(ChannelKind kind, Matrix K, Matrix mu, const Tolerances& tol = {});

  static GaussianChannel identity(int modes);
  /// mu = (I - K K*)/2; requires K K* <= I.
  static GaussianChannel quantum_limited_attenuator(const Matrix& K);
  /// mu = (K K* - I)/2; requires K K* >= I.
  static GaussianChannel quantum_limited_amplifier(const Matrix& K);
  /// mu = (I + K K*)/2.
  static GaussianChannel quantum_limited_contravariant(const Matrix& K);

  /// One-mode thermal noise channel: K = sqrt(eta), mu = (1-eta)(N + 1/2).
  static GaussianChannel thermal(double eta, double N);
  /// One-mode additive classical noise channel: K = 1, mu = N.
  static GaussianChannel additive_noise(double N);
  /// One-mode noisy amplifier: K = sqrt(kappa), mu = (kappa-1)(N + 1/2).
  static GaussianChannel noisy_amplifier(double kappa, double N);

  ChannelKind kind() const { return kind_; }
  int input_modes() const { return static_cast<int>(K_.cols()); }
  int output_modes() const { return static_cast<int>(K_.rows()); }
  const Matrix& K() const { return K_; }
  const Matrix& mu() const { return mu_; }

 private:
  ChannelKind kind_;
  Matrix K_;
  Matrix mu_;
};

struct ChannelClass {
  enum class Tag { attenuator, amplifier, neither };
  Tag tag = Tag::neither;
  bool quantum_limited = false;
};

std::string to_string(ChannelClass::Tag tag);

/// Decomposition of a channel into a quantum-limited attenuator followed by
/// a quantum-limited amplifier (covariant source) or quantum-limited
/// contravariant channel (contravariant source).
struct ChannelDecomposition {
  GaussianChannel attenuator;
  GaussianChannel second_stage;
};

/// Singular value decomposition K = V_B * diag(singular_values) * V_A of a
/// quantum-limited channel, reducing it to one-mode factors.
struct DiagonalForm {
  Matrix V_A;
  Matrix V_B;
  RealVector singular_values;
};

/// Checked constructors, exposed as free functions for callers that start
/// from raw matrices (file loaders, bindings).
GaussianState validate_state(const Matrix& alpha, const Tolerances& tol = {});
GaussianChannel validate_channel(ChannelKind kind, const Matrix& K, const Matrix& mu,
                                 const Tolerances& tol = {});

/// Attenuator/amplifier tag from the spectrum of K K*, plus whether mu equals
/// the minimal (quantum-limited) noise for the channel kind. A channel whose
/// K K* spectrum sits entirely at 1 satisfies both one-sided conditions; the
/// tag reports `attenuator` in that case.
ChannelClass classify(const GaussianChannel& channel, const Tolerances& tol = {});

/// Covariance transformation: alpha -> K alpha K* + mu for covariant
/// channels, alpha -> K conj(alpha) K* + mu for contravariant ones.
GaussianState apply(const GaussianChannel& channel, const GaussianState& state,
                    const Tolerances& tol = {});

/// Composite of `second` after `first`. Covariant pair: K = K2 K1,
/// mu = K2 mu1 K2* + mu2. A contravariant second stage conjugates the first
/// stage's (K1, mu1) entrywise; the composite kind is the parity of the two.
GaussianChannel concatenate(const GaussianChannel& second, const GaussianChannel& first,
                            const Tolerances& tol = {});

/// Splits any valid channel into quantum-limited attenuator and second stage;
/// concatenating the parts reproduces (K, mu) up to roundoff.
ChannelDecomposition decompose(const GaussianChannel& channel, const Tolerances& tol = {});

/// Complementary channel of a quantum-limited covariant amplifier with
/// diagonal K: the quantum-limited contravariant channel with matrix
/// sqrt(K K* - I) (the conjugation factor is carried by the kind flag).
GaussianChannel complementary_of_amplifier(const GaussianChannel& channel,
                                           const Tolerances& tol = {});

/// True iff mu - (K K* + I)/2 >= 0, the single-inequality form of the
/// noise-split criterion mu = mu1 + mu2 with mu1 >= K K*/2, mu2 >= I/2.
bool is_entanglement_breaking(const GaussianChannel& channel, const Tolerances& tol = {});

/// Reduces a quantum-limited channel to one-mode factors via the SVD of K.
/// Throws NotQuantumLimited when mu is not a function of K K*.
DiagonalForm diagonalize(const GaussianChannel& channel, const Tolerances& tol = {});

/// Componentwise (kind, K, mu) equality within tol.eq.
bool channels_equal(const GaussianChannel& a, const GaussianChannel& b,
                    const Tolerances& tol = {});

}  // namespace bgc
