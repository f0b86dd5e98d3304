#include "ergoshift.h"

#include <string>

#include <json.hpp>

#include "core/experiments.hpp"
#include "core/lattice.hpp"
#include "core/torus.hpp"

struct es_report {
  std::string json_text;
  bool passed = false;
};

namespace {

thread_local std::string g_last_error;

es_status finish(nlohmann::json report, es_report** out) {
  auto* r = new es_report;
  r->passed = report.value("passed", false);
  r->json_text = report.dump(2);
  *out = r;
  return r->passed ? ES_OK : ES_CHECK_FAILED;
}

template <typename Fn>
es_status guarded(es_report** out, Fn&& fn) {
  if (out == nullptr) {
    g_last_error = "output pointer is null";
    return ES_CONFIG_ERROR;
  }
  *out = nullptr;
  try {
    g_last_error.clear();
    return finish(fn(), out);
  } catch (const ergo::ConfigError& e) {
    g_last_error = e.what();
    return ES_CONFIG_ERROR;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return ES_CONFIG_ERROR;
  } catch (const ergo::LatticeError& e) {
    g_last_error = e.what();
    return ES_CONFIG_ERROR;
  } catch (const ergo::PrecisionExhausted& e) {
    g_last_error = e.what();
    return ES_PRECISION_EXHAUSTED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ES_INTERNAL_ERROR;
  }
}

}  // namespace

extern "C" {

es_status es_run(const char* config_json, es_report** out) {
  return guarded(out, [&] {
    if (config_json == nullptr) throw ergo::ConfigError("config is null");
    return ergo::run_experiment(nlohmann::json::parse(config_json));
  });
}

es_status es_suite(const char* name, int threads, const char* out_dir,
                   es_report** out) {
  return guarded(out, [&] {
    if (name == nullptr) throw ergo::ConfigError("suite name is null");
    return ergo::run_suite(name, threads, out_dir ? out_dir : "");
  });
}

es_status es_acceptance(int criterion, int threads, const char* out_dir,
                        es_report** out) {
  return guarded(out, [&] {
    return ergo::run_acceptance_criterion(criterion, threads,
                                          out_dir ? out_dir : "");
  });
}

const char* es_report_json(const es_report* report) {
  return report ? report->json_text.c_str() : "";
}

int es_report_passed(const es_report* report) {
  return report && report->passed ? 1 : 0;
}

void es_report_free(es_report* report) { delete report; }

const char* es_last_error(void) { return g_last_error.c_str(); }

const char* es_version(void) { return "1.0.0"; }

}  // extern "C"
