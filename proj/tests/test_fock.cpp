#include <doctest.h>

#include <cmath>

#include "bgc/entropy.hpp"
#include "bgc/errors.hpp"
#include "bgc/fock.hpp"
#include "test_helpers.hpp"

using namespace bgc;
using fock::PhaseSpaceGrid;
using fock::TruncatedDensityMatrix;

namespace {
const double kSqrt2 = std::sqrt(2.0);

Vector basis_state(int level, int d) {
  Vector v = Vector::Zero(d);
  v[level] = 1.0;
  return v;
}
}  // namespace

TEST_CASE("ladder operators") {
  const Matrix a2 = fock::annihilation(2);
  CHECK(a2(0, 1).real() == doctest::Approx(1.0));
  CHECK(max_abs(a2 - (Matrix(2, 2) << 0, 1, 0, 0).finished()) == 0.0);

  const Matrix n3 = fock::number_operator(3);
  CHECK(n3(0, 0).real() == 0.0);
  CHECK(n3(1, 1).real() == 1.0);
  CHECK(n3(2, 2).real() == 2.0);

  // [a, a^dag] = I away from the truncation edge.
  const int d = 12;
  const Matrix a = fock::annihilation(d);
  const Matrix comm = a * a.adjoint() - a.adjoint() * a;
  CHECK(max_abs(comm.topLeftCorner(d - 1, d - 1) - identity(d - 1)) <= 1e-14);

  CHECK_THROWS_AS(fock::annihilation(1), DimensionTooSmall);
}

TEST_CASE("displacement operators") {
  const int d = 40;
  CHECK(max_abs(fock::displacement(Complex(0, 0), d) - identity(d)) <= 1e-13);

  SUBCASE("matches the closed-form coherent expansion") {
    CounterRng rng(71);
    const Vector vac = basis_state(0, d);
    for (int i = 0; i < 8; ++i) {
      const Complex z = std::polar(2.0 * rng.next_double(), 2 * M_PI * rng.next_double());
      const Vector via_d = fock::displacement(z, d) * vac;
      CHECK((via_d - fock::coherent_state(z, d)).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }

  SUBCASE("composition picks up the symplectic phase") {
    const Complex z(0.7, -0.4), zp(-0.3, 0.9);
    const Complex phase = std::exp(Complex(0, -std::imag(std::conj(z) * zp)));
    const Matrix lhs = fock::displacement(z, d) * fock::displacement(zp, d);
    const Matrix rhs = phase * fock::displacement(z + zp, d);
    CHECK(max_abs((lhs - rhs).topLeftCorner(d / 2, d / 2)) <= 1e-8);
  }

  CHECK_THROWS_AS(fock::displacement(Complex(6.0, 0.0), 40), TruncationBudgetExceeded);
}

TEST_CASE("thermal states") {
  const TruncatedDensityMatrix vac = fock::thermal_state(0.0, 8);
  CHECK(vac.rho(0, 0).real() == 1.0);
  CHECK(vac.trace_deficit == 0.0);

  const TruncatedDensityMatrix th = fock::thermal_state(1.0, 60);
  CHECK(th.trace_deficit == doctest::Approx(std::pow(0.5, 60)).epsilon(1e-10));
  CHECK(fock::von_neumann_entropy(th) == doctest::Approx(g(1.0)).epsilon(1e-9));
  CHECK(fock::mean_photon_number(th) == doctest::Approx(1.0).epsilon(1e-9));

  // nbar = 3 needs a 60-level cutoff; 40 levels leak too much mass.
  CHECK_THROWS_AS(fock::thermal_state(3.0, 40), TruncationBudgetExceeded);
  CHECK_NOTHROW(fock::thermal_state(3.0, 60));
}

TEST_CASE("entropy and spectrum basics") {
  const int d = 16;
  CHECK(fock::von_neumann_entropy(TruncatedDensityMatrix::vacuum(d)) <= 1e-12);

  TruncatedDensityMatrix mixed;
  mixed.dim = d;
  mixed.rho = Matrix::Identity(d, d) / double(d);
  CHECK(fock::von_neumann_entropy(mixed) == doctest::Approx(std::log(d)).epsilon(1e-12));

  const RealVector spec = fock::spectrum(mixed);
  CHECK(spec(0) == doctest::Approx(1.0 / d));
  CHECK(spec(d - 1) == doctest::Approx(1.0 / d));
}

TEST_CASE("attenuator oracle") {
  const int d = 40;

  SUBCASE("k = 1 is the identity") {
    const TruncatedDensityMatrix in = fock::thermal_state(0.7, d);
    CHECK(max_abs(fock::apply_attenuator(1.0, in).rho - in.rho) <= 1e-12);
  }

  SUBCASE("vacuum is a fixed point") {
    const TruncatedDensityMatrix out =
        fock::apply_attenuator(0.3, TruncatedDensityMatrix::vacuum(d));
    CHECK(max_abs(out.rho - TruncatedDensityMatrix::vacuum(d).rho) <= 1e-13);
  }

  SUBCASE("thermal states rescale as nbar -> k^2 nbar") {
    const double k = 0.6;
    const TruncatedDensityMatrix out = fock::apply_attenuator(k, fock::thermal_state(1.0, d));
    CHECK(max_abs(out.rho - fock::thermal_state(k * k, d).rho) <= 1e-9);
  }

  SUBCASE("semigroup under composition") {
    const TruncatedDensityMatrix in = fock::thermal_state(0.8, d);
    const TruncatedDensityMatrix two =
        fock::apply_attenuator(0.9, fock::apply_attenuator(0.75, in));
    const TruncatedDensityMatrix one = fock::apply_attenuator(0.9 * 0.75, in);
    CHECK(max_abs(two.rho - one.rho) <= 1e-11);
  }

  SUBCASE("trace is preserved exactly and outputs stay positive") {
    const Vector psi = fock::random_pure_state(d, 4.0, 99);
    const TruncatedDensityMatrix out = fock::apply_attenuator(0.55, psi);
    CHECK(std::abs(out.trace_deficit) <= 1e-12);
    CHECK(min_eigenvalue(out.rho) >= -1e-12);
    CHECK(is_hermitian(out.rho, 1e-12));
  }

  CHECK_THROWS_AS(fock::apply_attenuator(0.0, TruncatedDensityMatrix::vacuum(8)),
                  ParameterOutOfRange);
  CHECK_THROWS_AS(fock::apply_attenuator(1.2, TruncatedDensityMatrix::vacuum(8)),
                  ParameterOutOfRange);
}

TEST_CASE("amplifier oracle") {
  const int d = 40;

  SUBCASE("K = 1 is the identity with a vacuum environment") {
    const Vector psi = fock::random_pure_state(d, 3.0, 5);
    const auto [out, env] = fock::apply_amplifier(1.0, psi);
    CHECK(max_abs(out.rho - psi * psi.adjoint()) <= 1e-12);
    CHECK(env.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("vacuum amplifies to a thermal state with entropy g(K^2-1)") {
    const int dd = 60;
    const auto [out, env] = fock::apply_amplifier(kSqrt2, basis_state(0, dd));
    CHECK(max_abs(out.rho - fock::thermal_state(1.0, dd).rho) <= 1e-9);
    CHECK(fock::von_neumann_entropy(out) == doctest::Approx(g(1.0)).epsilon(1e-8));
  }

  SUBCASE("system and environment spectra coincide on pure inputs") {
    const auto [out, env] = fock::apply_amplifier(kSqrt2, basis_state(1, d));
    CHECK(fock::spectral_distance(out, env) <= 1e-7);
  }

  SUBCASE("mixed-input path agrees with the pure path") {
    const Vector psi = fock::random_pure_state(d, 3.0, 12);
    const auto [pure_out, pure_env] = fock::apply_amplifier(1.25, psi);
    const auto [mixed_out, mixed_env] =
        fock::apply_amplifier(1.25, TruncatedDensityMatrix::from_pure(psi));
    CHECK(max_abs(pure_out.rho - mixed_out.rho) <= 1e-11);
    CHECK(max_abs(pure_env.rho - mixed_env.rho) <= 1e-11);
  }

  CHECK_THROWS_AS(fock::apply_amplifier(0.9, TruncatedDensityMatrix::vacuum(8)),
                  ParameterOutOfRange);
  CHECK_THROWS_AS(fock::apply_amplifier(4.0, fock::thermal_state(1.0, 20)),
                  TruncationBudgetExceeded);
}

TEST_CASE("measure-reprepare channels") {
  const int d = 40;

  SUBCASE("vacuum through unit gain lands on the nbar = 1 thermal state") {
    const PhaseSpaceGrid grid(5.0, 96);
    const TruncatedDensityMatrix out =
        fock::apply_contravariant(1.0, TruncatedDensityMatrix::vacuum(d), grid);
    CHECK(std::abs(out.trace_deficit) <= 1e-6);
    CHECK(fock::mean_photon_number(out) + 0.5 == doctest::Approx(1.5).epsilon(1e-6));
  }

  SUBCASE("zero gain reprepares the vacuum") {
    const PhaseSpaceGrid grid = PhaseSpaceGrid::for_max_photons(3.0);
    const TruncatedDensityMatrix out =
        fock::apply_contravariant(0.0, fock::thermal_state(1.0, d), grid);
    CHECK(out.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-6));
  }

  SUBCASE("transpose, parity and spectral identities") {
    const PhaseSpaceGrid grid = PhaseSpaceGrid::for_max_photons(4.0);
    const Vector psi = fock::random_pure_state(d, 4.0, 21);
    const TruncatedDensityMatrix rho = TruncatedDensityMatrix::from_pure(psi);
    const TruncatedDensityMatrix conj_minus = fock::apply_contravariant(1.0, rho, grid);
    const TruncatedDensityMatrix plus = fock::apply_reprepare_plus(1.0, rho, grid);
    const TruncatedDensityMatrix minus = fock::apply_reprepare_minus(1.0, rho, grid);

    CHECK(max_abs(minus.rho - conj_minus.rho.transpose()) <= 1e-13);

    Vector parity(d);
    for (int n = 0; n < d; ++n) parity[n] = (n % 2 == 0) ? 1.0 : -1.0;
    CHECK(max_abs(Matrix(parity.asDiagonal() * plus.rho * parity.asDiagonal()) - minus.rho) <=
          1e-13);

    CHECK(fock::spectral_distance(conj_minus, plus) <= 1e-6);
    CHECK(fock::spectral_distance(conj_minus, minus) <= 1e-6);
  }

  SUBCASE("grids that miss input mass are rejected") {
    const PhaseSpaceGrid tiny(2.0, 32);
    CHECK_THROWS_AS(fock::apply_contravariant(1.0, fock::thermal_state(2.0, 60), tiny),
                    GridBudgetExceeded);
  }

  CHECK_THROWS_AS(PhaseSpaceGrid(-1.0, 64), ParameterOutOfRange);
  CHECK_THROWS_AS(PhaseSpaceGrid(4.0, 8), ParameterOutOfRange);
}

TEST_CASE("random low-energy states") {
  const Vector a = fock::random_pure_state(40, 4.0, 1234);
  const Vector b = fock::random_pure_state(40, 4.0, 1234);
  CHECK(max_abs(a - b) == 0.0);  // bitwise reproducible

  const Vector c = fock::random_pure_state(40, 4.0, 1234, 1);
  CHECK(max_abs(a - c) > 1e-3);

  for (int i = 0; i < 25; ++i) {
    const Vector psi = fock::random_pure_state(40, 4.0, 77, i);
    CHECK(fock::mean_photon_number(psi) <= 4.0);
    CHECK(std::abs(psi.norm() - 1.0) <= 1e-14);
  }
}

TEST_CASE("amplifier chain report") {
  const int d = 50;

  SUBCASE("spectral identity at gain sqrt(2) on the one-photon state") {
    const auto rep = fock::verify_amplifier_chain(kSqrt2, basis_state(1, d), 1);
    CHECK(rep.spectral_distance <= 1e-6);
  }

  SUBCASE("energy contracts by (K^2-1)/K^2 each step") {
    const auto rep = fock::verify_amplifier_chain(kSqrt2, basis_state(2, d), 6);
    CHECK(rep.contraction_factor == doctest::Approx(0.5));
    for (double err : rep.contraction_errors) CHECK(err <= 1e-9);
    // After six half-steps the two initial photons decay to 2 * (1/2)^6.
    TruncatedDensityMatrix state = TruncatedDensityMatrix::from_pure(basis_state(2, d));
    for (int i = 0; i < 6; ++i) state = fock::apply_attenuator(rep.attenuation, state);
    CHECK(fock::mean_photon_number(state) == doctest::Approx(0.03125).epsilon(1e-9));
  }

  SUBCASE("entropy concavity bound and the walk to the vacuum") {
    for (int n : {1, 2, 3}) {
      const auto rep = fock::verify_amplifier_chain(kSqrt2, basis_state(1, d), n);
      CHECK(rep.concavity_margin >= -1e-9);
      for (std::size_t i = 1; i < rep.vacuum_trace_distance.size(); ++i) {
        CHECK(rep.vacuum_trace_distance[i] <= rep.vacuum_trace_distance[i - 1] + 1e-12);
      }
    }
  }

  SUBCASE("vacuum input give equalities") {
    const auto rep = fock::verify_amplifier_chain(kSqrt2, basis_state(0, d), 2);
    CHECK(rep.spectral_distance <= 1e-10);
    CHECK(std::abs(rep.concavity_margin) <= 1e-10);
  }

  CHECK_THROWS_AS(fock::verify_amplifier_chain(1.0, basis_state(1, 20), 1),
                  ParameterOutOfRange);
}

TEST_CASE("vacuum minimal entropy scan") {
  SUBCASE("small seeded scan stays above the vacuum entropy") {
    const auto rep = fock::verify_vacuum_minimal_entropy(kSqrt2, 50, 40, 4.0, 7);
    CHECK(rep.min_gap >= -1e-9);
    CHECK(rep.min_gap > 0.0);
    CHECK(rep.vacuum_entropy ==
          doctest::Approx(rep.predicted_vacuum_entropy).epsilon(2e-4));
  }

  SUBCASE("unit gain is the identity channel, every gap vanishes") {
    const auto rep = fock::verify_vacuum_minimal_entropy(1.0, 10, 30, 3.0, 7);
    CHECK(std::abs(rep.min_gap) <= 1e-10);
  }

  SUBCASE("a zero energy cap keeps only the vacuum, gap exactly zero") {
    const auto rep = fock::verify_vacuum_minimal_entropy(kSqrt2, 5, 30, 0.0, 7);
    CHECK(std::abs(rep.min_gap) <= 1e-12);
  }
}
