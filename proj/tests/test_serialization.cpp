#include <doctest.h>

#include "bgc/errors.hpp"
#include "bgc/serialization.hpp"
#include "test_helpers.hpp"

using namespace bgc;
using namespace bgc::testing;

TEST_CASE("channel and state JSON round-trips reproduce the objects") {
  CounterRng rng(83);
  for (int i = 0; i < 20; ++i) {
    const int s_out = 1 + static_cast<int>(rng.next_u64() % 3);
    const int s_in = 1 + static_cast<int>(rng.next_u64() % 3);
    const GaussianChannel channel = (i % 2 == 0)
                                        ? random_covariant_channel(rng, s_out, s_in)
                                        : random_contravariant_channel(rng, s_out, s_in);
    const GaussianChannel back = channel_from_json(channel_to_json(channel));
    CHECK(channels_equal(channel, back, Tolerances{.eq = 1e-14}));

    const Matrix alpha = hermitian_part(random_psd(s_in, rng, 0.5)) + 0.5 * identity(s_in);
    const GaussianState state(alpha);
    const GaussianState state_back = state_from_json(state_to_json(state));
    CHECK(max_abs(state.alpha() - state_back.alpha()) <= 1e-15);
  }
}

TEST_CASE("constraint JSON round-trip") {
  CounterRng rng(89);
  const Matrix eps = hermitian_part(random_psd(2, rng, 0.4)) + identity(2);
  const EnergyConstraint constraint(eps, 2.5);
  const EnergyConstraint back = constraint_from_json(constraint_to_json(constraint));
  CHECK(max_abs(constraint.epsilon - back.epsilon) <= 1e-15);
  CHECK(back.E == 2.5);
}

TEST_CASE("plain numbers are accepted as real matrix entries") {
  const Json j = Json::parse(R"({"alpha": [[1.5]]})");
  const GaussianState state = state_from_json(j);
  CHECK(state.alpha()(0, 0).real() == 1.5);
  CHECK(state.alpha()(0, 0).imag() == 0.0);
}

TEST_CASE("malformed documents raise ParseError") {
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"beta": [[1.5]]})")), ParseError);
  CHECK_THROWS_AS(channel_from_json(Json::parse(R"({"kind": "sideways", "K": [[1]], "mu": [[1]]})")),
                  ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([[1, 2], [3]])")), ParseError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse(R"([])")), ParseError);
  CHECK_THROWS_AS(load_json_file("/nonexistent/file.json"), ParseError);
}

TEST_CASE("check reports serialize with all fields") {
  CheckReport report;
  report.check = "example";
  report.parameters = {{"dim", 40.0}};
  report.metric = 1e-9;
  report.tolerance = 1e-8;
  report.pass = true;
  const Json j = check_report_to_json(report);
  CHECK(j.at("check") == "example");
  CHECK(j.at("parameters").at("dim") == 40.0);
  CHECK(j.at("pass") == true);
}
