#include "bgc/serialization.hpp"

#include <fstream>

#include "bgc/errors.hpp"

namespace bgc {

namespace {

Complex entry_from_json(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_object() && j.contains("re") && j.contains("im")) {
    return Complex(j.at("re").get<double>(), j.at("im").get<double>());
  }
  throw ParseError("matrix entries must be numbers or {\"re\", \"im\"} objects");
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({{"re", m(i, j).real()}, {"im", m(i, j).imag()}});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ParseError("matrix rows must be nonempty arrays");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw ParseError("matrix rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = entry_from_json(j[r][c]);
  }
  return m;
}

Json state_to_json(const GaussianState& state) {
  return Json{{"alpha", matrix_to_json(state.alpha())}};
}

GaussianState state_from_json(const Json& j, const Tolerances& tol) {
  if (!j.contains("alpha")) throw ParseError("state JSON needs an \"alpha\" field");
  return GaussianState(matrix_from_json(j.at("alpha")), tol);
}

Json channel_to_json(const GaussianChannel& channel) {
  return Json{{"kind", to_string(channel.kind())},
              {"K", matrix_to_json(channel.K())},
              {"mu", matrix_to_json(channel.mu())}};
}

GaussianChannel channel_from_json(const Json& j, const Tolerances& tol) {
  for (const char* field : {"kind", "K", "mu"}) {
    if (!j.contains(field)) {
      throw ParseError(std::string("channel JSON needs a \"") + field + "\" field");
    }
  }
  const std::string kind = j.at("kind").get<std::string>();
  ChannelKind parsed;
  if (kind == "covariant") {
    parsed = ChannelKind::covariant;
  } else if (kind == "contravariant") {
    parsed = ChannelKind::contravariant;
  } else {
    throw ParseError("channel kind must be \"covariant\" or \"contravariant\"");
  }
  return GaussianChannel(parsed, matrix_from_json(j.at("K")), matrix_from_json(j.at("mu")),
                         tol);
}

Json constraint_to_json(const EnergyConstraint& constraint) {
  return Json{{"epsilon", matrix_to_json(constraint.epsilon)}, {"E", constraint.E}};
}

EnergyConstraint constraint_from_json(const Json& j, const Tolerances& tol) {
  if (!j.contains("epsilon") || !j.contains("E")) {
    throw ParseError("constraint JSON needs \"epsilon\" and \"E\" fields");
  }
  return EnergyConstraint(matrix_from_json(j.at("epsilon")), j.at("E").get<double>(), tol);
}

Json capacity_result_to_json(const CapacityResult& result) {
  return Json{{"value", result.value},
              {"optimal_nu", matrix_to_json(result.optimal_nu)},
              {"iterations", result.iterations},
              {"converged", result.converged},
              {"gradient_norm", result.gradient_norm}};
}

Json check_report_to_json(const CheckReport& report) {
  Json params = Json::object();
  for (const auto& [key, value] : report.parameters) params[key] = value;
  return Json{{"check", report.check},
              {"parameters", params},
              {"metric", report.metric},
              {"tolerance", report.tolerance},
              {"pass", report.pass}};
}

Json check_reports_to_json(const std::vector<CheckReport>& reports) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(check_report_to_json(r));
  return arr;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace bgc
