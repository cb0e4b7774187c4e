// Copyright 2026 The dplls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dplls command-line front end. Links only the C interface.

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "dplls/dplls.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

// Carries a library status out of a command body.
struct StatusError {
  dplls_status status;
  std::string message;
};

void Check(dplls_status status) {
  if (status != DPLLS_OK) throw StatusError{status, dplls_last_error()};
}

int ExitCodeFor(dplls_status status) {
  switch (status) {
    case DPLLS_ERR_NOT_CONVERGED:
    case DPLLS_ERR_DEGENERATE_FIT:
    case DPLLS_ERR_NUMERICAL:
    case DPLLS_ERR_INTERNAL:
      return kExitNumerical;
    default:
      return kExitUsage;
  }
}

struct DatasetDeleter {
  void operator()(dplls_dataset* p) const { dplls_dataset_free(p); }
};
struct FitDeleter {
  void operator()(dplls_fit* p) const { dplls_fit_free(p); }
};
struct SweepDeleter {
  void operator()(dplls_sweep* p) const { dplls_sweep_free(p); }
};
struct CmapssDeleter {
  void operator()(dplls_cmapss* p) const { dplls_cmapss_free(p); }
};

std::string Num(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void WriteText(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw StatusError{DPLLS_ERR_IO, "cannot write '" + path.string() + "'"};
  }
}

void WriteManifest(const fs::path& out_dir, const std::string& command,
                   const std::vector<std::string>& argv, ordered_json config,
                   std::uint64_t seed_base,
                   const std::vector<std::string>& outputs) {
  ordered_json m;
  m["command"] = command;
  m["argv"] = argv;
  m["config"] = std::move(config);
  m["seed_base"] = seed_base;
  m["version"] = dplls_version();
  m["timestamp"] = UtcTimestamp();
  m["outputs"] = outputs;
  WriteText(out_dir / "manifest.json", m.dump(2) + "\n");
}

struct Common {
  std::string family = "sev";
  std::string predict_mode = "location";
  std::string repair = "clamp";
  std::string out_dir = "out";
  int threads = 1;
};

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--family", c.family, "sev | logistic | weibull | loglogistic")
      ->check(CLI::IsMember({"sev", "logistic", "weibull", "loglogistic"}))
      ->capture_default_str();
  cmd->add_option("--out-dir", c.out_dir, "Output directory")
      ->capture_default_str();
}

void AddSweepCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--threads", c.threads, "Parallel repetitions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--predict-mode", c.predict_mode, "location | median")
      ->check(CLI::IsMember({"location", "median"}))
      ->capture_default_str();
  cmd->add_option("--repair", c.repair, "clamp | trim")
      ->check(CLI::IsMember({"clamp", "trim"}))
      ->capture_default_str();
}

void PrintSweep(const dplls_sweep* sweep, const std::string& factor) {
  std::cout << factor << ",arm,median,q1,q3,count,failures\n";
  for (size_t i = 0; i < dplls_sweep_cell_count(sweep); ++i) {
    double value = 0.0;
    dplls_arm_summary arms[2];
    Check(dplls_sweep_cell(sweep, i, &value, &arms[0], &arms[1]));
    const char* names[2] = {"dp", "nondp"};
    for (int a = 0; a < 2; ++a) {
      const dplls_arm_summary& s = arms[a];
      std::cout << Num(value) << ',' << names[a] << ','
                << (s.has_summary ? Num(s.median) : "nan") << ','
                << (s.has_summary ? Num(s.q1) : "nan") << ','
                << (s.has_summary ? Num(s.q3) : "nan") << ',' << s.count << ','
                << s.failures << '\n';
    }
  }
}

std::vector<std::string> WrittenFiles(const dplls_sweep* sweep) {
  std::vector<std::string> out;
  for (size_t i = 0; i < dplls_sweep_written_count(sweep); ++i) {
    out.emplace_back(dplls_sweep_written_path(sweep, i));
  }
  return out;
}

// ---- fit ----------------------------------------------------------------

struct FitArgs {
  Common common;
  std::string data;
  std::string response = "y";
  double epsilon = 1.0;
  bool no_dp = false;
  std::uint64_t seed = 1;
};

int RunFit(const FitArgs& a, const std::vector<std::string>& argv) {
  dplls_family family;
  Check(dplls_parse_family(a.common.family.c_str(), &family));
  dplls_fit_options options;
  dplls_fit_options_init(&options);
  options.private_fit = a.no_dp ? 0 : 1;
  options.epsilon = a.epsilon;
  options.seed = a.seed;
  Check(dplls_parse_repair(a.common.repair.c_str(), &options.repair));

  dplls_dataset* raw_data = nullptr;
  Check(dplls_dataset_load_csv(a.data.c_str(), a.response.c_str(), family,
                               &raw_data));
  std::unique_ptr<dplls_dataset, DatasetDeleter> data(raw_data);
  dplls_fit* raw_fit = nullptr;
  Check(dplls_fit_model(data.get(), &options, &raw_fit));
  std::unique_ptr<dplls_fit, FitDeleter> fit(raw_fit);

  std::vector<double> beta(dplls_fit_coefficient_count(fit.get()));
  Check(dplls_fit_coefficients(fit.get(), beta.data(), beta.size()));
  dplls_fit_diagnostics diag;
  Check(dplls_fit_get_diagnostics(fit.get(), &diag));

  const fs::path out_dir = a.common.out_dir;
  std::string csv = "parameter,value\r\n";
  for (size_t j = 0; j < beta.size(); ++j) {
    std::string name = "intercept";
    if (j > 0) {
      const char* p = dplls_dataset_predictor_name(data.get(), j - 1);
      name = p ? p : "x" + std::to_string(j);
    }
    csv += name + "," + Num(beta[j]) + "\r\n";
  }
  csv += "sigma," + Num(dplls_fit_sigma(fit.get())) + "\r\n";
  WriteText(out_dir / "coefficients.csv", csv);

  char* json = nullptr;
  Check(dplls_fit_to_json(fit.get(), &json));
  const std::string json_text = json;
  dplls_string_free(json);
  WriteText(out_dir / "fit.json", json_text + "\n");

  ordered_json config;
  config["data"] = a.data;
  config["response"] = a.response;
  config["family"] = a.common.family;
  config["private"] = !a.no_dp;
  config["epsilon"] = a.no_dp ? ordered_json(nullptr) : ordered_json(a.epsilon);
  config["seed"] = a.seed;
  config["repair"] = a.common.repair;
  WriteManifest(out_dir, "fit", argv, config, a.seed,
                {"coefficients.csv", "fit.json"});

  std::cout << (a.no_dp ? "exact MLE" : "private fit, epsilon " + Num(a.epsilon))
            << ", family " << a.common.family << ", n "
            << dplls_dataset_rows(data.get()) << ", d "
            << dplls_dataset_features(data.get()) << "\n";
  std::cout << "sigma " << Num(dplls_fit_sigma(fit.get())) << "\n";
  for (size_t j = 0; j < beta.size(); ++j) {
    std::cout << "beta[" << j << "] " << Num(beta[j]) << "\n";
  }
  std::cout << "concavity_repaired " << diag.concavity_repaired
            << " q_clamped " << diag.q_clamped << "\n";
  if (diag.has_noise_seed) {
    std::cout << "noise_seed " << diag.noise_seed << "\n";
  } else {
    std::cout << "newton_iterations " << diag.iterations << "\n";
  }
  return kExitOk;
}

// ---- simulate ------------------------------------------------------------

struct SimArgs {
  Common common;
  std::string factor;
  std::vector<double> values;
  std::size_t n = 10000;
  std::size_t d = 5;
  double epsilon = 0.5;
  int repetitions = 100;
  double train_fraction = 0.8;
  std::uint64_t seed_base = 1;
};

int RunSimulate(const SimArgs& a, const std::vector<std::string>& argv) {
  dplls_sim_config config;
  dplls_sim_config_init(&config);
  Check(dplls_parse_family(a.common.family.c_str(), &config.family));
  Check(dplls_parse_predict_mode(a.common.predict_mode.c_str(),
                                 &config.predict_mode));
  Check(dplls_parse_repair(a.common.repair.c_str(), &config.repair));
  config.n = a.n;
  config.d = a.d;
  config.epsilon = a.epsilon;
  config.repetitions = a.repetitions;
  config.train_fraction = a.train_fraction;
  config.seed_base = a.seed_base;
  config.threads = a.common.threads;
  dplls_factor factor;
  Check(dplls_parse_factor(a.factor.c_str(), &factor));

  dplls_sweep* raw = nullptr;
  Check(dplls_simulate(&config, factor, a.values.data(), a.values.size(), &raw));
  std::unique_ptr<dplls_sweep, SweepDeleter> sweep(raw);
  Check(dplls_sweep_write(sweep.get(), a.common.out_dir.c_str()));

  ordered_json echo;
  echo["family"] = a.common.family;
  echo["factor"] = a.factor;
  echo["values"] = a.values;
  echo["n"] = a.n;
  echo["d"] = a.d;
  echo["epsilon"] = a.epsilon;
  echo["repetitions"] = a.repetitions;
  echo["train_fraction"] = a.train_fraction;
  echo["seed_base"] = a.seed_base;
  echo["threads"] = a.common.threads;
  echo["predict_mode"] = a.common.predict_mode;
  echo["repair"] = a.common.repair;
  WriteManifest(a.common.out_dir, "simulate", argv, echo, a.seed_base,
                WrittenFiles(sweep.get()));
  PrintSweep(sweep.get(), a.factor);
  return kExitOk;
}

// ---- casestudy -----------------------------------------------------------

struct CaseArgs {
  Common common;
  std::string train;
  std::string test;
  std::string truth;
  std::string factor = "dimension";
  std::vector<double> values;
  std::vector<int> sensors = {4, 17, 20};
  int horizon = 150;
  std::size_t components = 3;
  double epsilon = 5.0;
  int repetitions = 500;
  std::uint64_t seed_base = 1;
};

int RunCaseStudy(CaseArgs a, const std::vector<std::string>& argv) {
  dplls_factor factor;
  Check(dplls_parse_factor(a.factor.c_str(), &factor));
  if (a.values.empty()) {
    if (factor == DPLLS_FACTOR_EPSILON) {
      a.values = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1, 1.5, 2, 3, 4, 5, 10};
    } else {
      a.values = {3, 4, 5, 6};
    }
  }
  dplls_casestudy_config config;
  dplls_casestudy_config_init(&config);
  Check(dplls_parse_family(a.common.family.c_str(), &config.family));
  Check(dplls_parse_predict_mode(a.common.predict_mode.c_str(),
                                 &config.predict_mode));
  Check(dplls_parse_repair(a.common.repair.c_str(), &config.repair));
  config.sensor_ids = a.sensors.data();
  config.sensor_count = a.sensors.size();
  config.repetitions = a.repetitions;
  config.seed_base = a.seed_base;
  config.threads = a.common.threads;
  config.fixed_components = a.components;
  config.fixed_epsilon = a.epsilon;

  dplls_cmapss* raw_data = nullptr;
  Check(dplls_cmapss_load(a.train.c_str(), a.test.c_str(), a.truth.c_str(),
                          a.horizon, &raw_data));
  std::unique_ptr<dplls_cmapss, CmapssDeleter> data(raw_data);
  dplls_cmapss_counts counts;
  Check(dplls_cmapss_get_counts(data.get(), &counts));
  std::cerr << "engines kept after truncation: " << counts.train_kept << " of "
            << counts.train_engines << " training, " << counts.test_kept
            << " of " << counts.test_engines << " test\n";

  dplls_sweep* raw = nullptr;
  Check(dplls_casestudy(data.get(), &config, factor, a.values.data(),
                        a.values.size(), &raw));
  std::unique_ptr<dplls_sweep, SweepDeleter> sweep(raw);
  Check(dplls_sweep_write(sweep.get(), a.common.out_dir.c_str()));

  ordered_json echo;
  echo["train"] = a.train;
  echo["test"] = a.test;
  echo["truth"] = a.truth;
  echo["family"] = a.common.family;
  echo["factor"] = a.factor;
  echo["values"] = a.values;
  echo["sensors"] = a.sensors;
  echo["horizon"] = a.horizon;
  echo["components"] = a.components;
  echo["epsilon"] = a.epsilon;
  echo["repetitions"] = a.repetitions;
  echo["seed_base"] = a.seed_base;
  echo["threads"] = a.common.threads;
  echo["predict_mode"] = a.common.predict_mode;
  echo["repair"] = a.common.repair;
  echo["engines"] = {{"train", counts.train_engines},
                     {"test", counts.test_engines},
                     {"train_kept", counts.train_kept},
                     {"test_kept", counts.test_kept}};
  WriteManifest(a.common.out_dir, "casestudy", argv, echo, a.seed_base,
                WrittenFiles(sweep.get()));
  PrintSweep(sweep.get(), a.factor);
  return kExitOk;
}

// ---- verify --------------------------------------------------------------

struct VerifyArgs {
  std::string family = "sev";
  std::size_t d = 5;
  std::size_t n = 8;
  int trials = 10000;
  int ratio_pairs = 1000;
  int observed = 10;
  double epsilon = 1.0;
  std::uint64_t seed = 1;
};

int RunVerify(const VerifyArgs& a) {
  dplls_verify_config config;
  dplls_verify_config_init(&config);
  Check(dplls_parse_family(a.family.c_str(), &config.family));
  config.d = a.d;
  config.n = a.n;
  config.trials = a.trials;
  config.ratio_pairs = a.ratio_pairs;
  config.observed_per_pair = a.observed;
  config.epsilon = a.epsilon;
  config.seed = a.seed;
  dplls_verify_report report;
  Check(dplls_verify(&config, &report));
  std::cout << (report.sensitivity_pass ? "PASS" : "FAIL")
            << " sensitivity: observed max " << Num(report.sensitivity_observed)
            << " <= bound " << Num(report.sensitivity_bound) << " over "
            << a.trials << " neighbouring pairs (" << a.family << ", d=" << a.d
            << ")\n";
  std::cout << (report.ratio_pass ? "PASS" : "FAIL")
            << " privacy ratio: observed max log ratio "
            << Num(report.max_log_ratio) << " <= epsilon " << Num(report.epsilon)
            << " over " << a.ratio_pairs << " pairs x " << a.observed
            << " releases\n";
  return report.sensitivity_pass && report.ratio_pass ? kExitOk
                                                      : kExitPropertyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private log-location-scale regression"};
  app.set_version_flag("--version", std::string(dplls_version()));
  app.require_subcommand(1);

  FitArgs fit;
  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit one model to a CSV file");
  AddCommon(fit_cmd, fit.common);
  fit_cmd->add_option("--data", fit.data, "Input CSV")->required();
  fit_cmd->add_option("--response", fit.response, "Response column")
      ->capture_default_str();
  fit_cmd->add_option("--epsilon", fit.epsilon, "Privacy budget")
      ->capture_default_str();
  fit_cmd->add_flag("--no-dp", fit.no_dp, "Exact maximum likelihood instead");
  fit_cmd->add_option("--seed", fit.seed, "Noise seed")->capture_default_str();
  fit_cmd->add_option("--repair", fit.common.repair, "clamp | trim")
      ->check(CLI::IsMember({"clamp", "trim"}))
      ->capture_default_str();

  SimArgs sim;
  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "Synthetic-data sweep over one factor");
  AddCommon(sim_cmd, sim.common);
  AddSweepCommon(sim_cmd, sim.common);
  sim_cmd->add_option("--factor", sim.factor, "dimension | sample_size | epsilon")
      ->check(CLI::IsMember({"dimension", "sample_size", "epsilon"}))
      ->required();
  sim_cmd->add_option("--values", sim.values, "Factor levels")
      ->delimiter(',')
      ->required();
  sim_cmd->add_option("--n", sim.n, "Sample size")->capture_default_str();
  sim_cmd->add_option("--d", sim.d, "Predictor dimension")
      ->capture_default_str();
  sim_cmd->add_option("--epsilon", sim.epsilon, "Privacy budget")
      ->capture_default_str();
  sim_cmd->add_option("--repetitions", sim.repetitions, "Repetitions per level")
      ->capture_default_str();
  sim_cmd->add_option("--train-fraction", sim.train_fraction,
                      "Training share of each dataset")
      ->capture_default_str();
  sim_cmd->add_option("--seed-base,--seed", sim.seed_base,
                      "Repetition r uses seed_base + r")
      ->capture_default_str();

  CaseArgs cs;
  CLI::App* cs_cmd =
      app.add_subcommand("casestudy", "Turbofan engine time-to-failure study");
  AddCommon(cs_cmd, cs.common);
  AddSweepCommon(cs_cmd, cs.common);
  cs_cmd->add_option("--train", cs.train, "train_FD001.txt")->required();
  cs_cmd->add_option("--test", cs.test, "test_FD001.txt")->required();
  cs_cmd->add_option("--truth", cs.truth, "RUL_FD001.txt")->required();
  cs_cmd->add_option("--factor", cs.factor, "dimension | epsilon")
      ->check(CLI::IsMember({"dimension", "epsilon"}))
      ->capture_default_str();
  cs_cmd->add_option("--values", cs.values,
                     "Factor levels (default: 3,4,5,6 or the epsilon grid)")
      ->delimiter(',');
  cs_cmd->add_option("--sensors", cs.sensors, "1-based sensor ids")
      ->delimiter(',')
      ->capture_default_str();
  cs_cmd->add_option("--horizon", cs.horizon, "Cycles kept per engine")
      ->capture_default_str();
  cs_cmd->add_option("--components", cs.components,
                     "Principal components for the epsilon sweep")
      ->capture_default_str();
  cs_cmd->add_option("--epsilon", cs.epsilon,
                     "Privacy budget for the dimension sweep")
      ->capture_default_str();
  cs_cmd->add_option("--repetitions", cs.repetitions, "Private repetitions")
      ->capture_default_str();
  cs_cmd->add_option("--seed-base,--seed", cs.seed_base,
                     "Repetition r uses seed_base + r")
      ->capture_default_str();

  VerifyArgs ver;
  CLI::App* ver_cmd =
      app.add_subcommand("verify", "Check the sensitivity and privacy bounds");
  ver_cmd->add_option("--family", ver.family)
      ->check(CLI::IsMember({"sev", "logistic", "weibull", "loglogistic"}))
      ->capture_default_str();
  ver_cmd->add_option("--d", ver.d, "Predictor dimension")
      ->capture_default_str();
  ver_cmd->add_option("--n", ver.n, "Rows per random dataset")
      ->capture_default_str();
  ver_cmd->add_option("--trials", ver.trials, "Neighbouring pairs (sensitivity)")
      ->capture_default_str();
  ver_cmd->add_option("--ratio-pairs", ver.ratio_pairs,
                      "Neighbouring pairs (privacy ratio)")
      ->capture_default_str();
  ver_cmd->add_option("--observed", ver.observed, "Releases per pair")
      ->capture_default_str();
  ver_cmd->add_option("--epsilon", ver.epsilon, "Privacy budget")
      ->capture_default_str();
  ver_cmd->add_option("--seed", ver.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::vector<std::string> args(argv, argv + argc);
  try {
    if (fit_cmd->parsed()) return RunFit(fit, args);
    if (sim_cmd->parsed()) return RunSimulate(sim, args);
    if (cs_cmd->parsed()) return RunCaseStudy(cs, args);
    if (ver_cmd->parsed()) return RunVerify(ver);
  } catch (const StatusError& e) {
    std::cerr << "dplls: " << dplls_status_name(e.status) << ": " << e.message
              << "\n";
    return ExitCodeFor(e.status);
  } catch (const std::exception& e) {
    std::cerr << "dplls: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
