#include "bgc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>

#include "bgc/errors.hpp"
#include "bgc/entropy.hpp"
#include "bgc/rng.hpp"

namespace bgc::fock {

namespace {

constexpr double kEigenvalueFloor = 1e-14;

void require_dim(int d) {
  if (d < 2) throw DimensionTooSmall("Fock cutoff must be at least 2");
}

/// exp of a real antisymmetric matrix via the Hermitian eigendecomposition
/// of its i-multiple.
Matrix expm_antisymmetric(const RealMatrix& g) {
  const Matrix h = Complex(0, 1) * g.cast<Complex>();
  const Eigensystem es = eigh(h);
  Vector phases(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    phases[i] = std::exp(Complex(0, -es.values[i]));
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

/// Per-input-level Stinespring amplitudes of the two ladder channels.
/// table[m][j] is the amplitude of environment level j when the system
/// enters at level m with the environment in vacuum.
struct AmplitudeTable {
  std::vector<std::vector<Complex>> amp;
};

/// Beam splitter conserves total photon number; each input level m evolves
/// inside the (m+1)-dimensional sector spanned by |m-j>|j>, exactly.
AmplitudeTable build_attenuator_table(double k, int d) {
  const double theta = std::acos(std::clamp(k, 0.0, 1.0));
  AmplitudeTable table;
  table.amp.resize(d);
  for (int m = 0; m < d; ++m) {
    RealMatrix g = RealMatrix::Zero(m + 1, m + 1);
    for (int j = 1; j <= m; ++j) {
      const double c = theta * std::sqrt(static_cast<double>(j) * (m - j + 1));
      g(j - 1, j) += c;
      g(j, j - 1) -= c;
    }
    const Matrix u = expm_antisymmetric(g);
    table.amp[m].resize(m + 1);
    for (int j = 0; j <= m; ++j) table.amp[m][j] = u(j, 0);
  }
  return table;
}

/// Two-mode squeezer conserves the photon-number difference; input level m
/// evolves inside the sector spanned by |m+t>|t>, truncated at the cutoff.
AmplitudeTable build_amplifier_table(double gain, int d) {
  const double r = std::acosh(std::max(gain, 1.0));
  AmplitudeTable table;
  table.amp.resize(d);
  for (int m = 0; m < d; ++m) {
    const int len = d - m;
    RealMatrix g = RealMatrix::Zero(len, len);
    for (int t = 1; t < len; ++t) {
      const double c = r * std::sqrt(static_cast<double>(t) * (m + t));
      g(t, t - 1) += c;
      g(t - 1, t) -= c;
    }
    const Matrix u = expm_antisymmetric(g);
    table.amp[m].resize(len);
    for (int t = 0; t < len; ++t) table.amp[m][t] = u(t, 0);
  }
  return table;
}

/// Tables are immutable once built and shared across calls and threads.
const AmplitudeTable& cached_table(bool amplifier, double param, int d) {
  static std::mutex mutex;
  static std::map<std::tuple<bool, double, int>, std::unique_ptr<AmplitudeTable>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{amplifier, param, d}];
  if (!slot) {
    slot = std::make_unique<AmplitudeTable>(amplifier ? build_amplifier_table(param, d)
                                                      : build_attenuator_table(param, d));
  }
  return *slot;
}

/// Joint pure output as a (system x environment) coefficient matrix:
/// column j holds the system amplitudes that accompany environment level j.
Matrix joint_matrix_attenuator(const AmplitudeTable& table, const Vector& psi) {
  const int d = static_cast<int>(psi.size());
  Matrix joint = Matrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    if (psi[m] == Complex(0, 0)) continue;
    for (int j = 0; j <= m; ++j) joint(m - j, j) += table.amp[m][j] * psi[m];
  }
  return joint;
}

Matrix joint_matrix_amplifier(const AmplitudeTable& table, const Vector& psi) {
  const int d = static_cast<int>(psi.size());
  Matrix joint = Matrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    if (psi[m] == Complex(0, 0)) continue;
    const int len = d - m;
    for (int t = 0; t < len; ++t) joint(m + t, t) += table.amp[m][t] * psi[m];
  }
  return joint;
}

TruncatedDensityMatrix reduce_system(const Matrix& joint) {
  TruncatedDensityMatrix out;
  out.dim = static_cast<int>(joint.rows());
  out.rho = joint * joint.adjoint();
  out.trace_deficit = 1.0 - out.rho.trace().real();
  return out;
}

TruncatedDensityMatrix reduce_environment(const Matrix& joint) {
  TruncatedDensityMatrix out;
  out.dim = static_cast<int>(joint.cols());
  out.rho = (joint.adjoint() * joint).conjugate();
  out.trace_deficit = 1.0 - out.rho.trace().real();
  return out;
}

/// Kraus application for mixed inputs. For the attenuator the Kraus operator
/// of environment level j maps |m> -> amp[m][j] |m-j>; for the amplifier it
/// maps |m> -> amp[m][j] |m+j>.
TruncatedDensityMatrix kraus_output(const AmplitudeTable& table, const Matrix& rho,
                                    bool amplifier) {
  const int d = static_cast<int>(rho.rows());
  Matrix out = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    // X = W_j rho: row r of W_j pulls input level m = r -+ j.
    Matrix x = Matrix::Zero(d, d);
    bool any = false;
    for (int r = 0; r < d; ++r) {
      const int m = amplifier ? r - j : r + j;
      if (m < 0 || m >= d) continue;
      const int len = static_cast<int>(table.amp[m].size());
      if (j >= len) continue;
      x.row(r) = table.amp[m][j] * rho.row(m);
      any = true;
    }
    if (!any) continue;
    for (int c = 0; c < d; ++c) {
      const int m = amplifier ? c - j : c + j;
      if (m < 0 || m >= d) continue;
      const int len = static_cast<int>(table.amp[m].size());
      if (j >= len) continue;
      out.col(c) += x.col(m) * std::conj(table.amp[m][j]);
    }
  }
  TruncatedDensityMatrix result;
  result.dim = d;
  result.rho = out;
  result.trace_deficit = 1.0 - out.trace().real();
  return result;
}

TruncatedDensityMatrix kraus_environment(const AmplitudeTable& table, const Matrix& rho,
                                         bool amplifier) {
  const int d = static_cast<int>(rho.rows());
  Matrix env = Matrix::Zero(d, d);
  // env(j, j') = tr(W_j rho W_j'^dag) = sum_r amp[m][j] rho(m, m')
  //             conj(amp[m'][j']) with m, m' the input levels feeding output
  //             row r through environment levels j, j'.
  for (int j = 0; j < d; ++j) {
    for (int jp = 0; jp < d; ++jp) {
      Complex acc(0, 0);
      for (int r = 0; r < d; ++r) {
        const int m = amplifier ? r - j : r + j;
        const int mp = amplifier ? r - jp : r + jp;
        if (m < 0 || m >= d || mp < 0 || mp >= d) continue;
        if (j >= static_cast<int>(table.amp[m].size())) continue;
        if (jp >= static_cast<int>(table.amp[mp].size())) continue;
        acc += table.amp[m][j] * rho(m, mp) * std::conj(table.amp[mp][jp]);
      }
      env(j, jp) = acc;
    }
  }
  TruncatedDensityMatrix result;
  result.dim = d;
  result.rho = env;
  result.trace_deficit = 1.0 - env.trace().real();
  return result;
}

}  // namespace

TruncatedDensityMatrix TruncatedDensityMatrix::from_pure(const Vector& psi) {
  TruncatedDensityMatrix out;
  out.dim = static_cast<int>(psi.size());
  out.rho = psi * psi.adjoint();
  out.trace_deficit = 1.0 - psi.squaredNorm();
  return out;
}

TruncatedDensityMatrix TruncatedDensityMatrix::vacuum(int d) {
  require_dim(d);
  Vector psi = Vector::Zero(d);
  psi[0] = 1.0;
  return from_pure(psi);
}

Matrix annihilation(int d) {
  require_dim(d);
  Matrix a = Matrix::Zero(d, d);
  for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Matrix creation(int d) { return annihilation(d).adjoint(); }

Matrix number_operator(int d) {
  require_dim(d);
  Matrix n = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) n(i, i) = i;
  return n;
}

Matrix displacement(Complex z, int d) {
  require_dim(d);
  if (std::norm(z) > 0.5 * d) {
    throw TruncationBudgetExceeded("displacement amplitude |z|^2 = " +
                                   std::to_string(std::norm(z)) +
                                   " too large for cutoff " + std::to_string(d));
  }
  // z a^dag - conj(z) a is anti-Hermitian; exponentiate through i H.
  const Matrix gen = z * creation(d) - std::conj(z) * annihilation(d);
  const Matrix h = Complex(0, -1) * gen;
  const Eigensystem es = eigh(h);
  Vector phases(d);
  for (int i = 0; i < d; ++i) phases[i] = std::exp(Complex(0, es.values[i]));
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

Vector coherent_state(Complex z, int d) {
  require_dim(d);
  Vector psi(d);
  psi[0] = std::exp(-0.5 * std::norm(z));
  for (int n = 1; n < d; ++n) psi[n] = psi[n - 1] * z / std::sqrt(static_cast<double>(n));
  return psi;
}

TruncatedDensityMatrix thermal_state(double nbar, int d, const TruncationBudgets& budgets) {
  require_dim(d);
  if (nbar < 0.0) throw ParameterOutOfRange("thermal_state requires nbar >= 0");
  TruncatedDensityMatrix out;
  out.dim = d;
  out.rho = Matrix::Zero(d, d);
  if (nbar == 0.0) {
    out.rho(0, 0) = 1.0;
    out.trace_deficit = 0.0;
    return out;
  }
  const double gamma = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  for (int k = 0; k < d; ++k) {
    out.rho(k, k) = p;
    p *= gamma;
  }
  out.trace_deficit = std::pow(gamma, d);
  if (out.trace_deficit > budgets.deficit) {
    throw TruncationBudgetExceeded("thermal tail gamma^d = " +
                                   std::to_string(out.trace_deficit) +
                                   " exceeds the deficit budget");
  }
  return out;
}

double mean_photon_number(const TruncatedDensityMatrix& rho) {
  double total = 0.0;
  for (int n = 0; n < rho.dim; ++n) total += n * rho.rho(n, n).real();
  return total;
}

double mean_photon_number(const Vector& psi) {
  double total = 0.0;
  for (Eigen::Index n = 0; n < psi.size(); ++n) total += n * std::norm(psi[n]);
  return total;
}

double von_neumann_entropy(const TruncatedDensityMatrix& rho) {
  const Eigensystem es = eigh(rho.rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values[i] > kEigenvalueFloor) s -= es.values[i] * std::log(es.values[i]);
  }
  return s;
}

RealVector spectrum(const TruncatedDensityMatrix& rho) {
  RealVector v = eigh(rho.rho).values;
  std::sort(v.data(), v.data() + v.size(), std::greater<double>());
  return v;
}

double spectral_distance(const TruncatedDensityMatrix& a, const TruncatedDensityMatrix& b) {
  const RealVector sa = spectrum(a);
  const RealVector sb = spectrum(b);
  const Eigen::Index n = std::max(sa.size(), sb.size());
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double va = i < sa.size() ? sa[i] : 0.0;
    const double vb = i < sb.size() ? sb[i] : 0.0;
    worst = std::max(worst, std::abs(va - vb));
  }
  return worst;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  const Eigensystem es = eigh(a - b);
  return 0.5 * es.values.cwiseAbs().sum();
}

TruncatedDensityMatrix apply_attenuator(double k, const TruncatedDensityMatrix& rho) {
  if (k <= 0.0 || k > 1.0) throw ParameterOutOfRange("attenuator requires k in (0, 1]");
  return kraus_output(cached_table(false, k, rho.dim), rho.rho, false);
}

TruncatedDensityMatrix apply_attenuator(double k, const Vector& psi) {
  if (k <= 0.0 || k > 1.0) throw ParameterOutOfRange("attenuator requires k in (0, 1]");
  const auto& table = cached_table(false, k, static_cast<int>(psi.size()));
  return reduce_system(joint_matrix_attenuator(table, psi));
}

namespace {

void check_amplifier_budget(double gain, double input_photons, int d) {
  const double predicted = gain * gain * (input_photons + 1.0) - 1.0;
  if (predicted > 0.5 * d) {
    throw TruncationBudgetExceeded("amplified output energy " + std::to_string(predicted) +
                                   " crowds the cutoff " + std::to_string(d));
  }
}

}  // namespace

std::pair<TruncatedDensityMatrix, TruncatedDensityMatrix> apply_amplifier(
    double K, const TruncatedDensityMatrix& rho) {
  if (K < 1.0) throw ParameterOutOfRange("amplifier requires K >= 1");
  check_amplifier_budget(K, mean_photon_number(rho), rho.dim);
  const auto& table = cached_table(true, K, rho.dim);
  return {kraus_output(table, rho.rho, true), kraus_environment(table, rho.rho, true)};
}

std::pair<TruncatedDensityMatrix, TruncatedDensityMatrix> apply_amplifier(double K,
                                                                          const Vector& psi) {
  if (K < 1.0) throw ParameterOutOfRange("amplifier requires K >= 1");
  check_amplifier_budget(K, mean_photon_number(psi), static_cast<int>(psi.size()));
  const auto& table = cached_table(true, K, static_cast<int>(psi.size()));
  const Matrix joint = joint_matrix_amplifier(table, psi);
  return {reduce_system(joint), reduce_environment(joint)};
}

PhaseSpaceGrid::PhaseSpaceGrid(double radius_in, int points)
    : radius(radius_in), points_per_axis(points) {
  if (radius <= 0.0) throw ParameterOutOfRange("grid radius must be positive");
  if (points_per_axis < 16) throw ParameterOutOfRange("grid needs at least 16 points per axis");
}

PhaseSpaceGrid PhaseSpaceGrid::for_max_photons(double nbar_max, int points_per_axis) {
  if (nbar_max < 0.0) throw ParameterOutOfRange("nbar_max must be nonnegative");
  return PhaseSpaceGrid(4.0 * std::sqrt(nbar_max + 1.0), points_per_axis);
}

double poisson_cdf(int n, double x) {
  if (n < 0) return 0.0;
  if (x <= 0.0) return 1.0;
  // Sum e^{-x} x^i / i! by recurrence; log-space restart guards underflow of
  // the leading term for large x.
  double term = std::exp(-x);
  if (term > 0.0) {
    double sum = term;
    for (int i = 1; i <= n; ++i) {
      term *= x / i;
      sum += term;
    }
    return std::min(sum, 1.0);
  }
  double log_term = -x;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    if (i > 0) log_term += std::log(x / i);
    sum += std::exp(log_term);
  }
  return std::min(sum, 1.0);
}

double husimi_tail_mass(const TruncatedDensityMatrix& rho, double radius) {
  const double r2 = radius * radius;
  double tail = 0.0;
  for (int n = 0; n < rho.dim; ++n) {
    tail += std::max(rho.rho(n, n).real(), 0.0) * poisson_cdf(n, r2);
  }
  return tail;
}

TruncatedDensityMatrix apply_measure_reprepare(double K, const TruncatedDensityMatrix& rho,
                                               const PhaseSpaceGrid& grid, Reprepare mode,
                                               const TruncationBudgets& budgets) {
  if (K < 0.0) throw ParameterOutOfRange("measure-reprepare gain must be nonnegative");
  const double tail = husimi_tail_mass(rho, grid.radius);
  if (tail > budgets.tail) {
    throw GridBudgetExceeded("Husimi mass " + std::to_string(tail) +
                             " outside the grid exceeds the tail budget");
  }

  const int d = rho.dim;
  const int m = grid.points_per_axis;
  const double h = 2.0 * grid.radius / m;
  const double weight = h * h / M_PI;

  Matrix out = Matrix::Zero(d, d);
  for (int iy = 0; iy < m; ++iy) {
    const double y = -grid.radius + (iy + 0.5) * h;
    for (int ix = 0; ix < m; ++ix) {
      const double x = -grid.radius + (ix + 0.5) * h;
      const Complex z(x, y);
      const Vector zvec = coherent_state(z, d);
      const double husimi = std::max((zvec.adjoint() * rho.rho * zvec)(0, 0).real(), 0.0);
      if (husimi * weight < 1e-300) continue;
      Complex target;
      switch (mode) {
        case Reprepare::conjugate_minus: target = -K * std::conj(z); break;
        case Reprepare::plus: target = K * z; break;
        case Reprepare::minus: target = -K * z; break;
      }
      const Vector w = coherent_state(target, d);
      out.selfadjointView<Eigen::Lower>().rankUpdate(w, husimi * weight);
    }
  }
  TruncatedDensityMatrix result;
  result.dim = d;
  result.rho = Matrix(out.selfadjointView<Eigen::Lower>());
  result.trace_deficit = 1.0 - result.rho.trace().real();
  return result;
}

TruncatedDensityMatrix apply_contravariant(double K, const TruncatedDensityMatrix& rho,
                                           const PhaseSpaceGrid& grid,
                                           const TruncationBudgets& budgets) {
  return apply_measure_reprepare(K, rho, grid, Reprepare::conjugate_minus, budgets);
}

TruncatedDensityMatrix apply_reprepare_plus(double K, const TruncatedDensityMatrix& rho,
                                            const PhaseSpaceGrid& grid,
                                            const TruncationBudgets& budgets) {
  return apply_measure_reprepare(K, rho, grid, Reprepare::plus, budgets);
}

TruncatedDensityMatrix apply_reprepare_minus(double K, const TruncatedDensityMatrix& rho,
                                             const PhaseSpaceGrid& grid,
                                             const TruncationBudgets& budgets) {
  return apply_measure_reprepare(K, rho, grid, Reprepare::minus, budgets);
}

Vector random_pure_state(int d, double mean_energy_cap, std::uint64_t seed,
                         std::uint64_t stream) {
  require_dim(d);
  if (mean_energy_cap < 0.0) throw ParameterOutOfRange("energy cap must be nonnegative");
  const int levels = std::min(d, static_cast<int>(std::floor(mean_energy_cap)) + 1);
  CounterRng rng(seed, stream);
  Vector psi = Vector::Zero(d);
  for (int i = 0; i < levels; ++i) psi[i] = rng.next_complex_normal();
  psi.normalize();
  return psi;
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

AmplifierChainReport verify_amplifier_chain(double K, const Vector& psi, int n) {
  if (K <= 1.0) throw ParameterOutOfRange("the chain construction needs gain K > 1");
  if (n < 1) throw ParameterOutOfRange("chain depth n must be at least 1");

  AmplifierChainReport report;
  report.gain = K;
  report.attenuation = std::sqrt(K * K - 1.0) / K;
  report.contraction_factor = (K * K - 1.0) / (K * K);

  const int d = static_cast<int>(psi.size());
  const TruncatedDensityMatrix direct = apply_amplifier(K, psi).first;
  report.entropy_direct = von_neumann_entropy(direct);

  // One attenuator step, then the amplifier: spectrally equal to the direct
  // output.
  TruncatedDensityMatrix stepped = apply_attenuator(report.attenuation, psi);
  report.spectral_distance = spectral_distance(direct, apply_amplifier(K, stepped).first);

  // Iterate the attenuator, tracking energy contraction and the walk to the
  // vacuum.
  const Matrix vacuum = TruncatedDensityMatrix::vacuum(d).rho;
  TruncatedDensityMatrix current = TruncatedDensityMatrix::from_pure(psi);
  double energy = mean_photon_number(current);
  for (int step = 0; step < n; ++step) {
    current = apply_attenuator(report.attenuation, current);
    const double next_energy = mean_photon_number(current);
    report.contraction_errors.push_back(
        std::abs(next_energy - report.contraction_factor * energy));
    report.vacuum_trace_distance.push_back(trace_distance(current.rho, vacuum));
    energy = next_energy;
  }

  // Ensemble from the spectral decomposition of the n-fold attenuated state;
  // concavity of the entropy plus the chain identity bound the direct output
  // entropy from below by the ensemble average.
  const Eigensystem es = eigh(current.rho);
  double ensemble = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double p = es.values[i];
    if (p <= 1e-12) continue;
    const Vector chi = es.vectors.col(i);
    ensemble += p * von_neumann_entropy(apply_amplifier(K, chi).first);
  }
  report.ensemble_entropy = ensemble;
  report.concavity_margin = report.entropy_direct - ensemble;
  return report;
}

VacuumMinimalEntropyReport verify_vacuum_minimal_entropy(double K, int samples, int d,
                                                         double energy_cap,
                                                         std::uint64_t seed) {
  if (K < 1.0) throw ParameterOutOfRange("gain K must be at least 1");
  if (samples < 1) throw ParameterOutOfRange("need at least one sample");

  VacuumMinimalEntropyReport report;
  report.gain = K;
  report.samples = samples;
  report.dim = d;
  report.energy_cap = energy_cap;

  Vector vacuum = Vector::Zero(d);
  vacuum[0] = 1.0;
  report.vacuum_entropy = von_neumann_entropy(apply_amplifier(K, vacuum).first);
  report.predicted_vacuum_entropy = g(K * K - 1.0);

  double min_gap = std::numeric_limits<double>::infinity();
  int argmin = -1;
  for (int i = 0; i < samples; ++i) {
    const Vector psi = random_pure_state(d, energy_cap, seed, static_cast<std::uint64_t>(i));
    const double s = von_neumann_entropy(apply_amplifier(K, psi).first);
    const double gap = s - report.vacuum_entropy;
    if (gap < min_gap) {
      min_gap = gap;
      argmin = i;
    }
  }
  report.min_gap = min_gap;
  report.argmin = argmin;
  return report;
}

}  // namespace bgc::fock
