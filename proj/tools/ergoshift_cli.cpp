#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergoshift.h"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 1;
  int threads = 1;
  bool exact = false;
  bool use_float = false;
};

nlohmann::json load_config(const Options& opt) {
  nlohmann::json cfg = nlohmann::json::object();
  if (!opt.config_path.empty()) {
    std::ifstream is(opt.config_path);
    if (!is) {
      std::cerr << "cannot open config: " << opt.config_path << "\n";
      std::exit(ES_CONFIG_ERROR);
    }
    try {
      is >> cfg;
    } catch (const std::exception& e) {
      std::cerr << "config parse error: " << e.what() << "\n";
      std::exit(ES_CONFIG_ERROR);
    }
    if (!cfg.is_object()) {
      std::cerr << "config must be a JSON object\n";
      std::exit(ES_CONFIG_ERROR);
    }
  }
  if (!cfg.contains("seed")) cfg["seed"] = opt.seed;
  if (!cfg.contains("threads")) cfg["threads"] = opt.threads;
  if (!opt.out_dir.empty()) cfg["out"] = opt.out_dir;
  if (opt.exact) cfg["arithmetic_mode"] = "exact";
  if (opt.use_float) cfg["arithmetic_mode"] = "float";
  return cfg;
}

int emit(es_status st, es_report* rep, const Options& opt) {
  if (rep == nullptr) {
    std::cerr << "error: " << es_last_error() << "\n";
    return static_cast<int>(st);
  }
  std::cout << es_report_json(rep) << "\n";
  if (!opt.out_dir.empty()) {
    std::ofstream os(opt.out_dir + "/report.json");
    os << es_report_json(rep) << "\n";
  }
  es_report_free(rep);
  return static_cast<int>(st);
}

int run_kind(const std::string& kind, const Options& opt) {
  nlohmann::json cfg = load_config(opt);
  cfg["experiment"] = kind;
  es_report* rep = nullptr;
  es_status st = es_run(cfg.dump().c_str(), &rep);
  return emit(st, rep, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ergodic means of shift operators: experiments and checks"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--config", opt.config_path, "JSON config file");
  app.add_option("--out", opt.out_dir, "directory for CSV/JSON artifacts");
  app.add_option("--seed", opt.seed, "random seed");
  app.add_option("--threads", opt.threads, "worker threads");
  auto* ex = app.add_flag("--exact", opt.exact, "prefer exact arithmetic");
  app.add_flag("--float", opt.use_float, "prefer floating-point arithmetic")
      ->excludes(ex);

  std::string rate_system = "toral";
  std::string suite_name = "acceptance";
  int criterion = 0;

  app.add_subcommand("classify", "spectral classification of an integer matrix");
  app.add_subcommand("orbits", "dual-orbit representatives and growth");
  app.add_subcommand("delta", "shortest-vector growth of iterated lattices");
  auto* rate = app.add_subcommand("rate", "convergence-rate series");
  rate->add_option("--system", rate_system, "toral | baker | laguerre")
      ->check(CLI::IsMember({"toral", "baker", "laguerre"}));
  app.add_subcommand("walsh", "Walsh-system shift identity check");
  app.add_subcommand("laguerre", "Laguerre-system pointwise rates");
  app.add_subcommand("modulus", "dyadic modulus-of-continuity bound");
  app.add_subcommand("discrepancy", "indicator discrepancy along orbits");
  app.add_subcommand("maximal", "weighted maximal-function comparison");
  app.add_subcommand("witness", "near-extremal vectors for the mean norm");
  auto* suite = app.add_subcommand("suite", "run a named check suite");
  suite->add_option("name", suite_name, "acceptance | quick");
  suite->add_option("--criterion", criterion, "run a single criterion (1..8)");

  for (CLI::App* s : app.get_subcommands([](CLI::App*) { return true; }))
    s->fallthrough();

  CLI11_PARSE(app, argc, argv);

  const std::string sub = app.get_subcommands().front()->get_name();
  if (sub == "suite") {
    es_report* rep = nullptr;
    es_status st =
        criterion > 0
            ? es_acceptance(criterion, opt.threads, opt.out_dir.c_str(), &rep)
            : es_suite(suite_name.c_str(), opt.threads, opt.out_dir.c_str(),
                       &rep);
    return emit(st, rep, opt);
  }
  if (sub == "rate") return run_kind("rate-" + rate_system, opt);
  if (sub == "laguerre") return run_kind("rate-laguerre", opt);
  return run_kind(sub, opt);
}
