// Copyright 2026 The kpoqml Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// kpoqml command-line front end.
//
//   kpoqml train    --config c.json [--out DIR] [--seed-override S]
//   kpoqml sweep    --config c.json --axis alpha|nsamples [--jobs J] [--out DIR]
//   kpoqml baseline --config c.json [--out DIR] [--seed-override S]
//   kpoqml prepare  [--chi X --p P --r R --delta0 D --steps N --time T --cutoff C] [--out DIR]
//
// Without --out, results go to $KPOQML_OUT_ROOT/<command>-<timestamp>-<hash>
// (default root ./runs). Exit status: 0 success, 1 runtime failure,
// 2 bad invocation or configuration.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "kpoqml/kpoqml.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

constexpr const char* kFormats =
    "Output files:\n"
    "  manifest.json  command, config path and git blob hash, output dir, timestamps\n"
    "  config.json    fully expanded configuration\n"
    "  record.json    trained parameters, optimizer trace, costs\n"
    "  fit.csv        columns x,f\n"
    "  spectrum.csv   columns nu,abs_F,phase\n"
    "  fidelity.csv   columns t,fidelity (prepare)\n"
    "Numbers use '.' as decimal separator and shortest round-trip form.\n"
    "Exit status: 0 success, 1 runtime failure, 2 invalid invocation or config.";

// Failure carrying the exit status it should produce.
struct CommandError {
  int code;
  std::string message;
};

int exit_code_for(kpo_status s) {
  switch (s) {
    case KPO_OK: return kExitOk;
    case KPO_ERR_INVALID_ARGUMENT:
    case KPO_ERR_CONFIG:
    case KPO_ERR_TRUNCATION: return kExitUsage;
    default: return kExitRuntime;
  }
}

void check(kpo_status s) {
  if (s != KPO_OK) throw CommandError{exit_code_for(s), kpo_last_error()};
}

struct StringDeleter {
  void operator()(char* s) const { kpo_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct ExperimentDeleter {
  void operator()(kpo_experiment* e) const { kpo_experiment_destroy(e); }
};
struct RecordDeleter {
  void operator()(kpo_record* r) const { kpo_record_destroy(r); }
};
struct SweepDeleter {
  void operator()(kpo_sweep* s) const { kpo_sweep_destroy(s); }
};

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Hash git assigns to a blob with these contents.
std::string git_blob_hash(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &length, EVP_sha1(), nullptr) != 1) {
    throw CommandError{kExitRuntime, "SHA-1 digest failed"};
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    const unsigned char b = digest[i];
    hex += kHex[b >> 4];
    hex += kHex[b & 0xf];
  }
  return hex;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError{kExitUsage, "cannot read config file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  if (!out) throw CommandError{kExitRuntime, "cannot write '" + path.string() + "'"};
}

fs::path resolve_out_dir(const std::string& requested, const std::string& command,
                         const std::string& hash) {
  if (!requested.empty()) return requested;
  const char* root = std::getenv("KPOQML_OUT_ROOT");
  std::string stamp = utc_timestamp();
  std::erase(stamp, ':');
  return fs::path(root != nullptr && *root != '\0' ? root : "runs") /
         (command + "-" + stamp + "-" + hash.substr(0, 8));
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw CommandError{kExitRuntime, "cannot create '" + dir.string() + "': " + ec.message()};
}

struct Manifest {
  json body;

  Manifest(const std::string& command, const fs::path& out_dir) {
    body["command"] = command;
    body["output_dir"] = out_dir.string();
    body["started"] = utc_timestamp();
    body["version"] = kpo_version();
  }
  void write(const fs::path& out_dir) {
    body["finished"] = utc_timestamp();
    write_file(out_dir / "manifest.json", body.dump(2) + "\n");
  }
};

std::string take(char* s) { return OwnedString(s).get(); }

void write_record(const kpo_record* record, const fs::path& dir) {
  char* s = nullptr;
  check(kpo_record_to_json(record, &s));
  write_file(dir / "record.json", take(s) + "\n");
  check(kpo_record_fit_csv(record, &s));
  write_file(dir / "fit.csv", take(s));
  check(kpo_record_spectrum_csv(record, &s));
  write_file(dir / "spectrum.csv", take(s));
}

struct ConfigOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed_override;
};

std::unique_ptr<kpo_experiment, ExperimentDeleter> load_experiment(const std::string& text,
                                                                    const ConfigOptions& opts) {
  kpo_experiment* raw = nullptr;
  check(kpo_experiment_from_json(text.c_str(), &raw));
  std::unique_ptr<kpo_experiment, ExperimentDeleter> exp(raw);
  if (opts.seed_override) check(kpo_experiment_set_theta_seed(exp.get(), *opts.seed_override));
  return exp;
}

void write_config_snapshot(const kpo_experiment* exp, const fs::path& dir) {
  char* s = nullptr;
  check(kpo_experiment_to_json(exp, &s));
  write_file(dir / "config.json", take(s) + "\n");
}

int run_train(const std::string& command, const ConfigOptions& opts, bool baseline) {
  std::string text = read_file(opts.config);
  const std::string hash = git_blob_hash(text);
  if (baseline) {
    // The baseline command always trains the qubit model.
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw CommandError{kExitUsage, std::string("config: invalid JSON: ") + e.what()};
    }
    if (doc.is_object()) {
      json& model = doc["model"];
      if (model.is_null()) model = json::object();
      if (model.is_object() && !model.contains("variant")) model["variant"] = "qubit-baseline";
      text = doc.dump();
    }
  }
  auto exp = load_experiment(text, opts);
  if (baseline && std::string(kpo_experiment_variant(exp.get())) != "qubit-baseline") {
    throw CommandError{kExitUsage, "model.variant: the baseline command requires 'qubit-baseline'"};
  }

  const fs::path dir = resolve_out_dir(opts.out, command, hash);
  make_dir(dir);
  Manifest manifest(command, dir);
  manifest.body["config_path"] = opts.config;
  manifest.body["config_hash"] = hash;
  if (opts.seed_override) manifest.body["seed_override"] = *opts.seed_override;
  write_config_snapshot(exp.get(), dir);

  kpo_record* raw = nullptr;
  check(kpo_train(exp.get(), &raw));
  std::unique_ptr<kpo_record, RecordDeleter> record(raw);
  write_record(record.get(), dir);
  manifest.body["final_cost"] = kpo_record_final_cost(record.get());
  manifest.write(dir);
  std::cout << "final cost " << kpo_record_final_cost(record.get()) << ", test mse "
            << kpo_record_test_mse(record.get()) << "\n"
            << "results in " << dir.string() << "\n";
  return kExitOk;
}

int run_sweep(const ConfigOptions& opts, const std::string& axis, int jobs) {
  if (axis != "alpha" && axis != "nsamples") {
    throw CommandError{kExitUsage, "--axis: expected 'alpha' or 'nsamples', got '" + axis + "'"};
  }
  const std::string text = read_file(opts.config);
  const std::string hash = git_blob_hash(text);
  auto exp = load_experiment(text, opts);

  const fs::path dir = resolve_out_dir(opts.out, "sweep", hash);
  make_dir(dir);
  Manifest manifest("sweep", dir);
  manifest.body["config_path"] = opts.config;
  manifest.body["config_hash"] = hash;
  manifest.body["axis"] = axis;
  manifest.body["jobs"] = jobs;
  if (opts.seed_override) manifest.body["seed_override"] = *opts.seed_override;
  write_config_snapshot(exp.get(), dir);

  kpo_sweep* raw = nullptr;
  check(kpo_sweep_run(exp.get(), axis.c_str(), nullptr, 0, jobs, &raw));
  std::unique_ptr<kpo_sweep, SweepDeleter> sweep(raw);

  json points = json::array();
  for (std::size_t i = 0; i < kpo_sweep_size(sweep.get()); ++i) {
    const double value = kpo_sweep_value(sweep.get(), i);
    std::ostringstream name;
    name << axis << "-" << value;
    const fs::path sub = dir / name.str();
    make_dir(sub);
    const kpo_record* record = kpo_sweep_record(sweep.get(), i);
    write_record(record, sub);
    points.push_back({{"value", value},
                      {"dir", name.str()},
                      {"final_cost", kpo_record_final_cost(record)},
                      {"test_mse", kpo_record_test_mse(record)}});
    std::cout << axis << " " << value << ": final cost " << kpo_record_final_cost(record)
              << ", test mse " << kpo_record_test_mse(record) << "\n";
  }
  manifest.body["points"] = points;
  manifest.write(dir);
  std::cout << "results in " << dir.string() << "\n";
  return kExitOk;
}

int run_prepare(const kpo_prepare_params& params, const std::string& out) {
  std::ostringstream key;
  key.precision(17);
  key << params.chi << ',' << params.pump << ',' << params.drive << ',' << params.detuning_initial
      << ',' << params.total_time << ',' << params.num_steps << ',' << params.cutoff;
  const std::string hash = git_blob_hash(key.str());

  double fidelity = 0.0;
  char* csv = nullptr;
  check(kpo_prepare(&params, &fidelity, &csv));
  const std::string trace = take(csv);

  const fs::path dir = resolve_out_dir(out, "prepare", hash);
  make_dir(dir);
  Manifest manifest("prepare", dir);
  manifest.body["parameters"] = {{"chi", params.chi},
                                 {"p", params.pump},
                                 {"r", params.drive},
                                 {"delta0", params.detuning_initial},
                                 {"time", params.total_time},
                                 {"steps", params.num_steps},
                                 {"cutoff", params.cutoff}};
  manifest.body["parameters_hash"] = hash;
  manifest.body["final_fidelity"] = fidelity;
  write_file(dir / "fidelity.csv", trace);
  manifest.write(dir);
  std::cout << "final fidelity " << fidelity << "\n"
            << "results in " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kerr parametric oscillator quantum machine learning experiments"};
  app.footer(kFormats);
  app.require_subcommand(1);

  ConfigOptions train_opts, sweep_opts, baseline_opts;
  std::string axis;
  int jobs = 1;
  kpo_prepare_params prep{};
  kpo_prepare_defaults(&prep);
  std::string prepare_out;

  auto add_config_flags = [](CLI::App* cmd, ConfigOptions& o) {
    cmd->add_option("--config", o.config, "JSON experiment config")->required();
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--seed-override", o.seed_override, "parameter-initialization seed");
  };

  CLI::App* train = app.add_subcommand("train", "train one model");
  add_config_flags(train, train_opts);

  CLI::App* sweep = app.add_subcommand("sweep", "train over a list of alpha or N values");
  add_config_flags(sweep, sweep_opts);
  sweep->add_option("--axis", axis, "alpha or nsamples")->required();
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI::App* baseline = app.add_subcommand("baseline", "train the qubit baseline");
  add_config_flags(baseline, baseline_opts);

  CLI::App* prepare = app.add_subcommand("prepare", "adiabatic coherent-state preparation");
  prepare->add_option("--chi", prep.chi, "Kerr coefficient")->capture_default_str();
  prepare->add_option("--p", prep.pump, "final pump amplitude")->capture_default_str();
  prepare->add_option("--r", prep.drive, "coherent drive")->capture_default_str();
  prepare->add_option("--delta0", prep.detuning_initial, "initial detuning")->capture_default_str();
  prepare->add_option("--steps", prep.num_steps, "time steps")->capture_default_str();
  prepare->add_option("--time", prep.total_time, "sweep duration")->capture_default_str();
  prepare->add_option("--cutoff", prep.cutoff, "Fock cutoff")->capture_default_str();
  prepare->add_option("--out", prepare_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*train) return run_train("train", train_opts, false);
    if (*baseline) return run_train("baseline", baseline_opts, true);
    if (*sweep) return run_sweep(sweep_opts, axis, jobs);
    if (*prepare) return run_prepare(prep, prepare_out);
  } catch (const CommandError& e) {
    std::cerr << "kpoqml: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "kpoqml: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
