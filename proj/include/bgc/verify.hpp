#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bgc/tolerances.hpp"

namespace bgc {

/// One verification check. `metric` is a deviation (smaller is better);
/// the check passes iff metric <= tolerance.
struct CheckReport {
  std::string check;
  std::map<std::string, double> parameters;
  double metric = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

enum class VerifySuite { core, oracle, all };

struct VerifyOptions {
  VerifySuite suite = VerifySuite::all;
  std::uint64_t seed = 0;
  int dim = 40;          // Fock cutoff for unit-scale checks
  int grid_points = 64;  // quadrature points per axis
  int samples = 200;     // random-state scan size
  Tolerances tol;
};

/// Runs the matrix-algebra/Fock-space agreement gates ("core") and the
/// Fock-space structural checks ("oracle"). Reports are deterministic
/// functions of the options, including the seed.
std::vector<CheckReport> run_verification(const VerifyOptions& options);

}  // namespace bgc
