#include <doctest.h>

#include <cmath>

#include "bgc/entropy.hpp"
#include "bgc/errors.hpp"
#include "bgc/fock.hpp"
#include "test_helpers.hpp"

using namespace bgc;
using namespace bgc::testing;

namespace {

// Direct textbook evaluation, independent of the log1p-based implementation.
double g_reference(double x) {
  if (x <= 0.0) return 0.0;
  return (x + 1.0) * std::log(x + 1.0) - x * std::log(x);
}

}  // namespace

TEST_CASE("g matches the thermal-entropy function") {
  CHECK(g(0.0) == 0.0);
  CHECK(g(1.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-15));
  CHECK(g(1.5) - g(0.5) == doctest::Approx(0.7277579150809219).epsilon(1e-12));

  for (double x : {1e-12, 1e-6, 0.25, 1.0, 7.5, 120.0}) {
    CHECK(g(x) == doctest::Approx(g_reference(x)).epsilon(1e-13));
  }

  CHECK_THROWS_AS(g(-0.1), NegativeArgument);
}

TEST_CASE("g is increasing and concave") {
  double prev = g(0.0);
  double prev_slope = std::numeric_limits<double>::infinity();
  for (double x = 0.1; x < 6.0; x += 0.1) {
    const double cur = g(x);
    CHECK(cur > prev);
    const double slope = (cur - prev) / 0.1;
    CHECK(slope < prev_slope);
    prev = cur;
    prev_slope = slope;
  }
}

TEST_CASE("g_prime matches finite differences") {
  for (double x : {0.05, 0.5, 1.0, 3.0, 50.0}) {
    const double h = 1e-6 * std::max(1.0, x);
    const double fd = (g(x + h) - g(x - h)) / (2.0 * h);
    CHECK(g_prime(x) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("gaussian state entropy") {
  CHECK(gaussian_entropy(GaussianState::vacuum(4)) == 0.0);
  CHECK(gaussian_entropy(GaussianState(scalar_matrix(1.5))) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));

  SUBCASE("two-mode diagonal covariance adds per-mode entropies") {
    Matrix alpha = Matrix::Zero(2, 2);
    alpha(0, 0) = 1.5;
    alpha(1, 1) = 2.5;
    CHECK(gaussian_entropy(GaussianState(alpha)) ==
          doctest::Approx(g(1.0) + g(2.0)).epsilon(1e-14));
  }

  SUBCASE("basis invariance") {
    CounterRng rng(41);
    const Matrix u = random_unitary(3, rng);
    const Matrix alpha = hermitian_part(random_psd(3, rng, 0.5)) + 0.5 * identity(3);
    const double direct = gaussian_entropy(GaussianState(alpha));
    const double rotated = gaussian_entropy(GaussianState(u * alpha * u.adjoint()));
    CHECK(direct == doctest::Approx(rotated).epsilon(1e-12));
  }

  SUBCASE("agrees with the Fock-space entropy of a product thermal state") {
    // nbar = (1, 0.5) keeps the geometric tails inside the deficit budget at
    // a 20-level cutoff per factor.
    Matrix alpha = Matrix::Zero(2, 2);
    alpha(0, 0) = 1.5;
    alpha(1, 1) = 1.0;
    const double matrix_level = gaussian_entropy(GaussianState(alpha));

    const int d = 20;
    fock::TruncatedDensityMatrix joint;
    joint.dim = d * d;
    joint.rho = fock::tensor_product(fock::thermal_state(1.0, d).rho,
                                     fock::thermal_state(0.5, d).rho);
    joint.trace_deficit = 1.0 - joint.rho.trace().real();
    CHECK(joint.trace_deficit <= 2e-6);
    CHECK(std::abs(fock::von_neumann_entropy(joint) - matrix_level) <= 5e-5);
  }
}

TEST_CASE("minimal output entropy closed form") {
  CHECK(min_output_entropy(one_mode_attenuator(0.6)) == 0.0);

  SUBCASE("multimode quantum-limited attenuators stay at zero") {
    CounterRng rng(43);
    const Matrix k = random_complex_matrix(3, 3, rng, 0.5);
    CHECK(min_output_entropy(GaussianChannel::quantum_limited_attenuator(k)) <= 1e-12);
  }

  SUBCASE("noisy amplifier kappa=2, N=0") {
    CHECK(min_output_entropy(GaussianChannel::noisy_amplifier(2.0, 0.0)) ==
          doctest::Approx(g(1.0)).epsilon(1e-14));
  }

  SUBCASE("thermal channel eta=0.5, N=1") {
    CHECK(min_output_entropy(GaussianChannel::thermal(0.5, 1.0)) ==
          doctest::Approx(g(0.5)).epsilon(1e-14));
  }

  SUBCASE("contravariant channels use the same vacuum-output formula") {
    CHECK(min_output_entropy(one_mode_contravariant(1.0)) ==
          doctest::Approx(g(1.0)).epsilon(1e-14));
  }

  SUBCASE("nondecreasing in the noise parameter for each one-mode family") {
    double prev_thermal = -1.0, prev_additive = -1.0, prev_amp = -1.0;
    for (double noise = 0.0; noise <= 2.0; noise += 0.25) {
      const double s_th = min_output_entropy(GaussianChannel::thermal(0.5, noise));
      const double s_ad = min_output_entropy(GaussianChannel::additive_noise(noise));
      const double s_am = min_output_entropy(GaussianChannel::noisy_amplifier(1.5, noise));
      CHECK(s_th >= prev_thermal);
      CHECK(s_ad >= prev_additive);
      CHECK(s_am >= prev_amp);
      prev_thermal = s_th;
      prev_additive = s_ad;
      prev_amp = s_am;
    }
  }
}
