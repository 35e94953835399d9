#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bgc/linalg.hpp"
#include "bgc/tolerances.hpp"

namespace bgc::fock {

/// Default cutoff-hygiene budgets for the truncated simulations.
struct TruncationBudgets {
  double deficit = 1e-6;   // allowed 1 - tr(rho) mass loss
  double tail = 1e-6;      // allowed Husimi mass outside the quadrature grid
};

/// Density matrix on the first `dim` number states. `trace_deficit` records
/// the probability mass lost to the cutoff; it is reported, never silently
/// renormalized away.
struct TruncatedDensityMatrix {
  int dim = 0;
  Matrix rho;
  double trace_deficit = 0.0;

  static TruncatedDensityMatrix from_pure(const Vector& psi);
  static TruncatedDensityMatrix vacuum(int d);
};

/// Ladder operator a with a|n> = sqrt(n)|n-1>; requires d >= 2.
Matrix annihilation(int d);
Matrix creation(int d);
/// N = a^dag a = diag(0, ..., d-1).
Matrix number_operator(int d);

/// D(z) = exp(z a^dag - conj(z) a) via Hermitian eigendecomposition of the
/// generator. Requires |z|^2 <= d/2 so the displaced vacuum stays well inside
/// the cutoff; throws TruncationBudgetExceeded otherwise.
Matrix displacement(Complex z, int d);

/// Coherent state components e^{-|z|^2/2} z^n / sqrt(n!).
Vector coherent_state(Complex z, int d);

/// Geometric (Gibbs) state with mean photon number nbar. The tail mass
/// gamma^d must fit the deficit budget.
TruncatedDensityMatrix thermal_state(double nbar, int d,
                                     const TruncationBudgets& budgets = {});

double mean_photon_number(const TruncatedDensityMatrix& rho);
double mean_photon_number(const Vector& psi);

/// -sum lambda log lambda over eigenvalues above the 1e-14 floor, nats.
double von_neumann_entropy(const TruncatedDensityMatrix& rho);

/// Eigenvalues sorted descending.
RealVector spectrum(const TruncatedDensityMatrix& rho);

/// Max absolute difference of descending-sorted spectra, zero-padded to a
/// common length.
double spectral_distance(const TruncatedDensityMatrix& a, const TruncatedDensityMatrix& b);

/// Trace distance (1/2)||a - b||_1 of two Hermitian matrices.
double trace_distance(const Matrix& a, const Matrix& b);

/// Beam-splitter attenuator with transmissivity k in (0, 1]: Stinespring
/// unitary exp[theta (a^dag b - a b^dag)], cos(theta) = k, with the
/// environment in vacuum, then a partial trace. Exact on the truncated space
/// (the interaction preserves total photon number).
TruncatedDensityMatrix apply_attenuator(double k, const TruncatedDensityMatrix& rho);
TruncatedDensityMatrix apply_attenuator(double k, const Vector& psi);

/// Two-mode-squeezer amplifier with gain K >= 1: exp[r (a^dag b^dag - a b)],
/// cosh(r) = K. Returns the channel output and the environment (the
/// complementary channel output). Throws TruncationBudgetExceeded when the
/// predicted output energy crowds the cutoff.
std::pair<TruncatedDensityMatrix, TruncatedDensityMatrix> apply_amplifier(
    double K, const TruncatedDensityMatrix& rho);
std::pair<TruncatedDensityMatrix, TruncatedDensityMatrix> apply_amplifier(
    double K, const Vector& psi);

/// Square midpoint-rule grid over (Re z, Im z) in [-radius, radius]^2.
struct PhaseSpaceGrid {
  PhaseSpaceGrid(double radius, int points_per_axis);

  /// radius = 4 sqrt(nbar_max + 1) puts the Gaussian tail of any input with
  /// mean photon number <= nbar_max below the tail budget.
  static PhaseSpaceGrid for_max_photons(double nbar_max, int points_per_axis = 64);

  double radius;
  int points_per_axis;
};

/// Which coherent state is reprepared after the heterodyne measurement
/// outcome z: the phase-conjugating |-K conj(z)>, or the skewed |+K z> and
/// |-K z> variants.
enum class Reprepare { conjugate_minus, plus, minus };

/// Measure-reprepare channel rho -> integral d^2z/pi |w(z)><w(z)| <z|rho|z>
/// discretized on the grid. The quadrature trace defect is recorded in the
/// output's trace_deficit. Throws GridBudgetExceeded when the input's Husimi
/// mass outside the grid exceeds the tail budget.
TruncatedDensityMatrix apply_measure_reprepare(double K, const TruncatedDensityMatrix& rho,
                                               const PhaseSpaceGrid& grid, Reprepare mode,
                                               const TruncationBudgets& budgets = {});

/// Quantum-limited contravariant channel, reprepared into |-K conj(z)>.
TruncatedDensityMatrix apply_contravariant(double K, const TruncatedDensityMatrix& rho,
                                           const PhaseSpaceGrid& grid,
                                           const TruncationBudgets& budgets = {});
TruncatedDensityMatrix apply_reprepare_plus(double K, const TruncatedDensityMatrix& rho,
                                            const PhaseSpaceGrid& grid,
                                            const TruncationBudgets& budgets = {});
TruncatedDensityMatrix apply_reprepare_minus(double K, const TruncatedDensityMatrix& rho,
                                             const PhaseSpaceGrid& grid,
                                             const TruncationBudgets& budgets = {});

/// Exact Husimi mass of rho outside |z| <= radius (diagonal Poisson-tail
/// weights; the angular integral removes off-diagonal terms).
double husimi_tail_mass(const TruncatedDensityMatrix& rho, double radius);

/// Regularized upper incomplete gamma Q(n+1, x) = P(Poisson(x) <= n).
double poisson_cdf(int n, double x);

/// Haar-random vector on the first floor(cap)+1 number states, so that
/// <N> <= cap for every draw. Deterministic in (seed, stream).
Vector random_pure_state(int d, double mean_energy_cap, std::uint64_t seed,
                         std::uint64_t stream = 0);

/// Kronecker product, for assembling few-mode product states in tests.
Matrix tensor_product(const Matrix& a, const Matrix& b);

/// Report of the amplifier/attenuator chain checks: the amplifier with gain
/// K > 1 absorbs its associated attenuator k1 = sqrt(K^2-1)/K spectrally,
/// the attenuator contracts energy by (K^2-1)/K^2 per step, the output
/// entropy dominates the ensemble average at chain depth n, and iterating
/// the attenuator walks every state to the vacuum in trace norm.
struct AmplifierChainReport {
  double gain = 0.0;
  double attenuation = 0.0;
  double contraction_factor = 0.0;
  double spectral_distance = 0.0;             // Phi[psi] vs (Phi o Phi1)[psi]
  std::vector<double> contraction_errors;     // per attenuator step
  double entropy_direct = 0.0;                // S(Phi[psi])
  double ensemble_entropy = 0.0;              // sum_i p_i S(Phi[chi_i]) at depth n
  double concavity_margin = 0.0;              // entropy_direct - ensemble_entropy
  std::vector<double> vacuum_trace_distance;  // per attenuator step
};

AmplifierChainReport verify_amplifier_chain(double K, const Vector& psi, int n);

/// Seeded scan of S(Phi[psi]) - S(Phi[vacuum]) over random low-energy pure
/// states for the quantum-limited amplifier with gain K.
struct VacuumMinimalEntropyReport {
  double gain = 0.0;
  int samples = 0;
  int dim = 0;
  double energy_cap = 0.0;
  double vacuum_entropy = 0.0;
  double predicted_vacuum_entropy = 0.0;  // g(K^2 - 1)
  double min_gap = 0.0;
  int argmin = -1;
};

VacuumMinimalEntropyReport verify_vacuum_minimal_entropy(double K, int samples, int d,
                                                         double energy_cap,
                                                         std::uint64_t seed);

}  // namespace bgc::fock
