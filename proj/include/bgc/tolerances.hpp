#pragma once

namespace bgc {

/// Numerical tolerances used by validation and matrix comparisons.
///
/// Defaults are sized for double-precision Hermitian eigensolvers on
/// well-conditioned problems of a few modes.
struct Tolerances {
  /// Max absolute deviation allowed between A and its adjoint.
  double herm = 1e-10;
  /// Eigenvalue floor for positive-semidefiniteness checks: the smallest
  /// eigenvalue may be as low as -psd.
  double psd = 1e-8;
  /// Max absolute entrywise deviation in matrix equality checks.
  double eq = 1e-10;
  /// Relative singular-value cutoff for generalized inverses: values below
  /// sigma_cut * sigma_max are treated as zero.
  double sigma_cut = 1e-10;
};

}  // namespace bgc
