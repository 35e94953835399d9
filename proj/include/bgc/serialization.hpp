#pragma once

#include <string>

#include <json.hpp>

#include "bgc/capacity.hpp"
#include "bgc/gaussian.hpp"
#include "bgc/linalg.hpp"
#include "bgc/verify.hpp"

namespace bgc {

using Json = nlohmann::json;

/// Matrices are row-major arrays of {"re": x, "im": y} entries; plain
/// numbers are accepted on input as real entries.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// {"alpha": [[...]]}
Json state_to_json(const GaussianState& state);
GaussianState state_from_json(const Json& j, const Tolerances& tol = {});

/// {"kind": "covariant"|"contravariant", "K": [[...]], "mu": [[...]]}
Json channel_to_json(const GaussianChannel& channel);
GaussianChannel channel_from_json(const Json& j, const Tolerances& tol = {});

/// {"epsilon": [[...]], "E": number}
Json constraint_to_json(const EnergyConstraint& constraint);
EnergyConstraint constraint_from_json(const Json& j, const Tolerances& tol = {});

Json capacity_result_to_json(const CapacityResult& result);

Json check_report_to_json(const CheckReport& report);
Json check_reports_to_json(const std::vector<CheckReport>& reports);

/// Reads a whole file; throws ParseError on I/O failure.
Json load_json_file(const std::string& path);

}  // namespace bgc
