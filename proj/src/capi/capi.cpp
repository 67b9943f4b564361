#include "heatshape/heatshape.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "core/ball_analysis.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/json_io.hpp"
#include "core/radial_source.hpp"
#include "core/rearrange.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

hs_status classify_exception() {
  try {
    throw;
  } catch (const heatshape::RangeError& e) {
    g_last_error = e.what();
    return HS_ERR_RANGE;
  } catch (const heatshape::InvalidArgument& e) {
    g_last_error = e.what();
    return HS_ERR_INVALID_ARGUMENT;
  } catch (const heatshape::NumericError& e) {
    g_last_error = e.what();
    return HS_ERR_NUMERIC;
  } catch (const heatshape::ConfigError& e) {
    g_last_error = e.what();
    return HS_ERR_CONFIG;
  } catch (const heatshape::GeometryError& e) {
    g_last_error = e.what();
    return HS_ERR_CONFIG;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return HS_ERR_CONFIG;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HS_ERR_INVALID_ARGUMENT;
  } catch (...) {
    g_last_error = "unknown error";
    return HS_ERR_INVALID_ARGUMENT;
  }
}

}  // namespace

struct hs_source {
  heatshape::RadialSource impl;
};

extern "C" {

const char* hs_version(void) { return "0.1.0"; }

const char* hs_last_error(void) { return g_last_error.c_str(); }

void hs_string_free(char* s) { std::free(s); }

hs_status hs_source_create(const char* json_spec, hs_source** out) {
  if (!json_spec || !out) {
    g_last_error = "hs_source_create: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  try {
    const auto spec = heatshape::json::parse(json_spec);
    *out = new hs_source{heatshape::source_from_json(spec)};
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

void hs_source_destroy(hs_source* src) { delete src; }

hs_status hs_source_value(const hs_source* src, double r, double* out) {
  if (!src || !out) {
    g_last_error = "hs_source_value: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    *out = src->impl.value(r);
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_source_radial_derivative(const hs_source* src, double r,
                                      double* out) {
  if (!src || !out) {
    g_last_error = "hs_source_radial_derivative: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    *out = src->impl.radial_derivative(r);
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_source_ball_mean(const hs_source* src, double R, double* out) {
  if (!src || !out) {
    g_last_error = "hs_source_ball_mean: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    *out = heatshape::ball_mean(src->impl, R).fbar;
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_stability_report(const hs_source* src, double R, double beta,
                              char** json_out) {
  if (!src || !json_out) {
    g_last_error = "hs_stability_report: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    const auto rep =
        heatshape::stability_report(src->impl, src->impl.dim(), R, beta);
    *json_out = dup_string(heatshape::stability_report_to_json(rep).dump());
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_beta_thresholds(const hs_source* src, double R, char** json_out) {
  if (!src || !json_out) {
    g_last_error = "hs_beta_thresholds: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    const auto abc =
        heatshape::abc_decomposition(src->impl, src->impl.dim(), R);
    const auto th = heatshape::beta_thresholds(src->impl, src->impl.dim(), R);
    heatshape::json j;
    j["A0"] = abc.A0;
    j["A1"] = abc.A1;
    j["A2"] = abc.A2;
    j["always_stable"] = th.always_stable;
    j["beta1"] = th.always_stable ? heatshape::json(nullptr)
                                  : heatshape::json(th.beta1);
    j["beta2"] = th.always_stable ? heatshape::json(nullptr)
                                  : heatshape::json(th.beta2);
    j["underflow"] = th.underflow;
    *json_out = dup_string(j.dump());
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_mode_second_variation(const hs_source* src, double R, double beta,
                                   int l, double* q_out) {
  if (!src || !q_out) {
    g_last_error = "hs_mode_second_variation: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    const auto p =
        heatshape::BallProblem::robin_ball(src->impl.dim(), R, beta);
    *q_out = heatshape::mode_second_variation(p, src->impl, l).Q_l;
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_dirichlet_stability(const hs_source* src, double R,
                                 int* verdict_out) {
  if (!src || !verdict_out) {
    g_last_error = "hs_dirichlet_stability: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    switch (heatshape::dirichlet_stability(src->impl, R)) {
      case heatshape::Verdict::Unstable:
        *verdict_out = -1;
        break;
      case heatshape::Verdict::MarginallyStable:
        *verdict_out = 0;
        break;
      default:
        *verdict_out = 1;
        break;
    }
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_two_disk_counterexample(double eps, double beta,
                                     char** json_out) {
  if (!json_out) {
    g_last_error = "hs_two_disk_counterexample: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  try {
    const auto rep = heatshape::two_disk_counterexample(eps, beta);
    heatshape::json j = {{"eps", rep.eps},
                         {"c", rep.c},
                         {"beta", rep.beta},
                         {"beta0", rep.beta0},
                         {"linf_domain", rep.linf_domain},
                         {"linf_ball", rep.linf_ball},
                         {"delta", rep.delta},
                         {"verdict", rep.comparison_fails ? "comparison fails"
                                                          : "comparison holds"}};
    *json_out = dup_string(j.dump());
    return HS_OK;
  } catch (...) {
    return classify_exception();
  }
}

hs_status hs_run_experiment(const char* command, const char* config_json,
                            const char* out_dir, int jobs,
                            char** summary_json_out) {
  if (!command || !config_json || !summary_json_out) {
    g_last_error = "hs_run_experiment: null argument";
    return HS_ERR_INVALID_ARGUMENT;
  }
  *summary_json_out = nullptr;
  try {
    const auto cfg = heatshape::json::parse(config_json);
    const auto result = heatshape::run_experiment(
        command, cfg, out_dir ? out_dir : "", jobs < 1 ? 1 : jobs);
    *summary_json_out = dup_string(result.summary.dump(2));
    if (!result.passed) {
      g_last_error = "experiment '" + std::string(command) +
                     "': a mathematical assertion failed";
      return HS_ERR_ASSERTION;
    }
    return HS_OK;
  } catch (const nlohmann::json::parse_error& e) {
    g_last_error = std::string("config is not valid JSON: ") + e.what();
    return HS_ERR_CONFIG;
  } catch (...) {
    return classify_exception();
  }
}

}  // extern "C"
