#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <json.hpp>
#include <string>

#include "heatshape/heatshape.h"

using nlohmann::json;

namespace {

struct Source {
  hs_source* ptr = nullptr;
  explicit Source(const std::string& spec) {
    REQUIRE(hs_source_create(spec.c_str(), &ptr) == HS_OK);
  }
  ~Source() { hs_source_destroy(ptr); }
};

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  hs_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and null-argument handling") {
  CHECK(std::strcmp(hs_version(), "0.1.0") == 0);
  CHECK(hs_source_create(nullptr, nullptr) == HS_ERR_INVALID_ARGUMENT);
  double out = 0.0;
  CHECK(hs_source_value(nullptr, 1.0, &out) == HS_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(hs_last_error()) > 0);
}

TEST_CASE("source creation and errors") {
  hs_source* src = nullptr;
  CHECK(hs_source_create("{not json", &src) == HS_ERR_CONFIG);
  CHECK(src == nullptr);
  CHECK(std::strlen(hs_last_error()) > 0);

  CHECK(hs_source_create(R"({"kind":"nope","params":{},"n":2})", &src) ==
        HS_ERR_CONFIG);
  CHECK(hs_source_create(
            R"({"kind":"gaussian","params":{"delta":0.1},"n":2,"x":1})",
            &src) == HS_ERR_CONFIG);
  CHECK(std::string(hs_last_error()).find("unknown field") !=
        std::string::npos);
  // invalid source parameters map to the invalid-argument status
  CHECK(hs_source_create(R"({"kind":"gaussian","params":{"delta":-1},"n":2})",
                         &src) == HS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("source evaluation round trip") {
  Source g(R"({"kind":"gaussian","params":{"delta":1.0},"n":2})");
  double v = 0.0;
  REQUIRE(hs_source_value(g.ptr, 0.0, &v) == HS_OK);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
  REQUIRE(hs_source_radial_derivative(g.ptr, 1.0, &v) == HS_OK);
  CHECK(v == doctest::Approx(-2.0 * M_PI * std::exp(-M_PI)).epsilon(1e-13));
  REQUIRE(hs_source_ball_mean(g.ptr, 1.0, &v) == HS_OK);
  CHECK(v == doctest::Approx((1.0 - std::exp(-M_PI)) / M_PI).epsilon(1e-12));
  CHECK(hs_source_value(g.ptr, -1.0, &v) == HS_ERR_RANGE);

  Source tab(
      R"({"kind":"tabulated","params":{"radii":[0.0,0.5,1.0],"values":[2.0,1.5,1.0]},"n":2})");
  CHECK(hs_source_value(tab.ptr, 2.0, &v) == HS_ERR_RANGE);
}

TEST_CASE("stability report through the C API") {
  Source g(R"({"kind":"gaussian","params":{"delta":0.1},"n":2})");
  char* out = nullptr;
  REQUIRE(hs_stability_report(g.ptr, 1.0, 0.5, &out) == HS_OK);
  const json rep = json::parse(take(out));
  CHECK(rep["verdict"] == "unstable");
  CHECK(rep["underflow"] == true);
  CHECK(rep["lhs"].get<double>() == doctest::Approx(0.0253303).epsilon(1e-5));

  REQUIRE(hs_beta_thresholds(g.ptr, 1.0, &out) == HS_OK);
  const json th = json::parse(take(out));
  CHECK(th["beta1"].get<double>() == 0.0);
  CHECK(th["beta2"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(th["underflow"] == true);
}

TEST_CASE("mode second variation and Dirichlet verdict") {
  Source c(R"({"kind":"constant","params":{"value":1.0},"n":2})");
  double q = 0.0;
  REQUIRE(hs_mode_second_variation(c.ptr, 1.0, 1.0, 2, &q) == HS_OK);
  CHECK(q == doctest::Approx(13.0 / 24.0).epsilon(1e-12));
  CHECK(hs_mode_second_variation(c.ptr, 1.0, 1.0, 0, &q) ==
        HS_ERR_INVALID_ARGUMENT);

  int verdict = 42;
  Source g(R"({"kind":"gaussian","params":{"delta":0.1},"n":2})");
  REQUIRE(hs_dirichlet_stability(g.ptr, 1.0, &verdict) == HS_OK);
  CHECK(verdict == 1);
  Source up(R"({"kind":"polynomial","params":{"coeffs":[1.0,1.0],"rmax":1.0},"n":2})");
  REQUIRE(hs_dirichlet_stability(up.ptr, 1.0, &verdict) == HS_OK);
  CHECK(verdict == -1);
  REQUIRE(hs_dirichlet_stability(c.ptr, 1.0, &verdict) == HS_OK);
  CHECK(verdict == 0);
}

TEST_CASE("two-disk counterexample through the C API") {
  char* out = nullptr;
  REQUIRE(hs_two_disk_counterexample(0.5, 0.5, &out) == HS_OK);
  const json rep = json::parse(take(out));
  CHECK(rep["beta0"].get<double>() == doctest::Approx(0.946233).epsilon(1e-6));
  CHECK(rep["verdict"] == "comparison fails");
  CHECK(hs_two_disk_counterexample(-1.0, 0.5, &out) ==
        HS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("experiment runner through the C API") {
  char* out = nullptr;
  REQUIRE(hs_run_experiment("counterexample", R"({"eps":0.5,"beta":2.0})",
                            nullptr, 1, &out) == HS_OK);
  const json summary = json::parse(take(out));
  CHECK(summary["passed"] == true);
  CHECK(summary["report"]["verdict"] == "comparison holds");

  CHECK(hs_run_experiment("counterexample", "{oops", nullptr, 1, &out) ==
        HS_ERR_CONFIG);
  CHECK(std::string(hs_last_error()).find("not valid JSON") !=
        std::string::npos);
  CHECK(hs_run_experiment("bogus", "{}", nullptr, 1, &out) == HS_ERR_CONFIG);
}
