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

#include <clocale>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "kpoqml/config_io.hpp"
#include "kpoqml/error.hpp"

using namespace kpoqml;
using nlohmann::json;

namespace {

std::string field_of(const std::string& text) {
  try {
    parse_experiment_config(text);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "";
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("minimal config expands to the reference settings") {
  ExperimentConfig c = parse_experiment_config(R"({"schema_version": 1})");
  ExperimentConfig ref = ExperimentConfig::single_kpo(Target::kGaussian);
  CHECK(c.model.variant == Variant::kSingleKpo);
  CHECK(c.model.num_params() == 36);
  CHECK(c.model.cutoffs == ref.model.cutoffs);
  CHECK(c.model.alpha == ref.model.alpha);
  CHECK(c.optimizer.max_evaluations == 7200u);
  CHECK(c.dataset.size == 100);
  CHECK(c.theta_init.low == -1.0);

  ExperimentConfig b = parse_experiment_config(
      R"({"schema_version": 1, "model": {"variant": "qubit-baseline"}})");
  CHECK(b.model.variant == Variant::kQubitBaseline);
  CHECK(b.model.baseline.num_qubits == 6);
  CHECK(b.model.num_params() == 36);
}

TEST_CASE("overrides") {
  ExperimentConfig c = parse_experiment_config(R"({
    "schema_version": 1,
    "model": {"variant": "single-kpo", "alpha": 1.5, "cutoff": 30, "layers": 3},
    "optimizer": {"max_evaluations": null, "max_iterations": 50},
    "dataset": {"target": "abs", "size": 17, "seed": 4},
    "theta_init": {"seed": 9, "low": -0.5, "high": 0.5}
  })");
  CHECK(c.model.alpha[0] == Complex(1.5, 0.0));
  CHECK(c.model.cutoffs[0] == 30);
  CHECK(c.model.layers == 3);
  CHECK(c.model.num_params() == 9);
  CHECK_FALSE(c.optimizer.max_evaluations.has_value());
  CHECK(c.optimizer.max_iterations == 50u);
  CHECK(c.dataset.target == Target::kAbs);
  CHECK(c.dataset.size == 17);
  CHECK(c.dataset.seed == 4);
  CHECK(c.theta_init.seed == 9);
  CHECK(c.theta_init.high == 0.5);

  ExperimentConfig z = parse_experiment_config(
      R"({"schema_version": 1, "model": {"alpha": {"re": 1.0, "im": -2.0}}})");
  CHECK(z.model.alpha[0] == Complex(1.0, -2.0));
}

TEST_CASE("round trip through JSON") {
  for (const char* variant : {"single-kpo", "kpo-network", "qubit-baseline"}) {
    CAPTURE(variant);
    json in = {{"schema_version", 1},
               {"model", {{"variant", variant}}},
               {"dataset", {{"target", "two-sines"}, {"size", 12}}}};
    ExperimentConfig a = parse_experiment_config(in.dump());
    std::string text = experiment_config_to_json(a);
    ExperimentConfig b = parse_experiment_config(text);
    CHECK(experiment_config_to_json(b) == text);
    CHECK(b.model.num_params() == a.model.num_params());
    CHECK(b.dataset.target == Target::kTwoSines);
    CHECK(json::parse(text)["schema_version"] == 1);
  }
}

TEST_CASE("rejections name the field") {
  CHECK(field_of(R"({"schema_version": 2})") == "schema_version");
  CHECK(field_of(R"({})") == "schema_version");
  CHECK(field_of(R"({"schema_version": 1, "bogus": 0})") == "bogus");
  CHECK(field_of(R"({"schema_version": 1, "model": {"cutof": 3}})") == "model.cutof");
  CHECK(field_of(R"({"schema_version": 1, "dataset": {"target": "ramp"}})") == "dataset.target");
  CHECK(field_of(R"({"schema_version": 1, "theta_init": {"theta0": [0, 1]}})") ==
        "theta_init.theta0");
  CHECK(field_of(R"({"schema_version": 1, "dataset": {"size": "ten"}})") == "dataset.size");
  CHECK(field_of("{not json") == "config");
  CHECK(field_of(R"({"schema_version": 1, "model": {"variant": "qubit-baseline",
                    "num_qubits": 13}})").rfind("model", 0) == 0);
}

TEST_CASE("sweep lists") {
  CHECK(sweep_alpha_values(R"({"schema_version": 1})") == std::vector<double>{1, 3, 5});
  CHECK(sweep_sample_sizes(R"({"schema_version": 1})") ==
        std::vector<int>{10, 30, 100, 300, 1000});
  const char* custom = R"({"schema_version": 1, "sweep": {"alpha": [2], "nsamples": [5, 6]}})";
  CHECK(sweep_alpha_values(custom) == std::vector<double>{2});
  CHECK(sweep_sample_sizes(custom) == std::vector<int>{5, 6});
  CHECK_NOTHROW(parse_experiment_config(custom));
  CHECK_THROWS_AS(sweep_sample_sizes(R"({"schema_version": 1, "sweep": {"nsamples": [2.5]}})"),
                  ValidationError);
  CHECK_THROWS_AS(sweep_alpha_values(R"({"schema_version": 1, "sweep": {"alpha": []}})"),
                  ValidationError);
}

TEST_CASE("number formatting round-trips and ignores the locale") {
  for (double v : {0.1, -2.5e-300, 1.0 / 3.0, 6.02214076e23, 0.0}) {
    std::string s = format_double(v);
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    double back = 0.0;
    in >> back;
    CHECK(back == v);
  }
  CHECK(format_double(0.5) == "0.5");
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
    CHECK(format_double(0.5) == "0.5");
    std::setlocale(LC_NUMERIC, "C");
  }
}

TEST_CASE("result files") {
  ExperimentConfig c = parse_experiment_config(R"({
    "schema_version": 1,
    "model": {"cutoff": 10, "alpha": 1.0, "layers": 1},
    "optimizer": {"max_evaluations": 20, "max_iterations": 20},
    "dataset": {"target": "abs", "size": 6},
    "analysis": {"fit_points": 11, "spectrum_points": 21, "nu_max": 2, "nu_step": 0.5,
                 "test_points": 10}
  })");
  TrainingRecord r = train(c);

  std::string fit = fit_csv(r);
  CHECK(fit.rfind("x,f\n", 0) == 0);
  CHECK(count_lines(fit) == 12);
  std::string spec = spectrum_csv(r);
  CHECK(spec.rfind("nu,abs_F,phase\n", 0) == 0);
  CHECK(count_lines(spec) == 6);

  json rec = json::parse(record_to_json(r));
  CHECK(rec["schema_version"] == 1);
  CHECK(rec["theta"].size() == 3);
  CHECK(rec["num_params"] == 3);
  CHECK(rec["final_cost"].get<double>() == r.final_cost);
  CHECK(rec["dataset"]["x"].size() == 6);
  CHECK(rec["optimizer"]["evaluations"].get<std::size_t>() == r.trace.evaluations);
  CHECK(parse_experiment_config(rec["config"].dump()).dataset.size == 6);

  CHECK(fidelity_csv({{0.0, 1.0}, {0.5, 0.25}}) == "t,fidelity\n0,1\n0.5,0.25\n");
}
