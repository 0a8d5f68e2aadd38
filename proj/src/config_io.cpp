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

#include "kpoqml/config_io.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <set>

#include <json.hpp>

#include "kpoqml/error.hpp"

namespace kpoqml {

namespace {

using nlohmann::json;

// Walks a JSON object, tracking which keys were consumed so leftovers can be
// reported.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ValidationError(path_.empty() ? "config" : path_, "expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return node_.contains(key);
  }
  const json& at(const std::string& key) {
    seen_.insert(key);
    return node_.at(key);
  }
  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number()) throw ValidationError(field(key), "expected a number");
    return v.get<double>();
  }
  long long integer(const std::string& key, long long fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_integer()) throw ValidationError(field(key), "expected an integer");
    return v.get<long long>();
  }
  std::uint64_t seed(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_number_unsigned()) throw ValidationError(field(key), "expected a non-negative integer");
    return v.get<std::uint64_t>();
  }
  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ValidationError(field(key), "expected a string");
    return v.get<std::string>();
  }

  void finish() const {
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) throw ValidationError(field(key), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> number_list(const json& v, const std::string& field) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ValidationError(field, "expected a number or an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ValidationError(field, "expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

Complex complex_value(const json& v, const std::string& field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_object() && v.contains("re")) {
    Section s(v, field);
    const Complex c(s.number("re", 0.0), s.number("im", 0.0));
    s.finish();
    return c;
  }
  throw ValidationError(field, "expected a number or {\"re\", \"im\"}");
}

ComplexMatrix coupling_matrix(const json& v, const std::string& field) {
  if (!v.is_array()) throw ValidationError(field, "expected a square array of arrays");
  const auto k = static_cast<Eigen::Index>(v.size());
  ComplexMatrix m = ComplexMatrix::Zero(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != k) {
      throw ValidationError(field, "expected a square array of arrays");
    }
    for (Eigen::Index j = 0; j < k; ++j) {
      m(i, j) = complex_value(row[static_cast<std::size_t>(j)], field);
    }
  }
  return m;
}

Variant variant_from_string(const std::string& name) {
  for (Variant v : {Variant::kSingleKpo, Variant::kKpoNetwork, Variant::kMultiInputSingleKpo,
                    Variant::kQubitBaseline}) {
    if (to_string(v) == name) return v;
  }
  throw ValidationError("model.variant", "unknown variant '" + name + "'");
}

OutputRule output_from_string(const std::string& name) {
  for (OutputRule r : {OutputRule::kSingle, OutputRule::kProduct, OutputRule::kVector}) {
    if (to_string(r) == name) return r;
  }
  throw ValidationError("model.output", "unknown output rule '" + name + "'");
}

Observable::Kind observable_from_string(const std::string& name) {
  for (auto k : {Observable::Kind::kQuadrature, Observable::Kind::kNumber, Observable::Kind::kPauliZ}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("model.observables", "unknown observable kind '" + name + "'");
}

ModelSpec preset_model(Variant v) {
  switch (v) {
    case Variant::kSingleKpo: return ModelSpec::single_kpo();
    case Variant::kKpoNetwork: return ModelSpec::kpo_network();
    case Variant::kMultiInputSingleKpo: return ModelSpec::multi_input_single_kpo();
    case Variant::kQubitBaseline: return ModelSpec::qubit_baseline();
  }
  return {};
}

ModelSpec parse_model(const json& node) {
  Section s(node, "model");
  const Variant variant = variant_from_string(s.text("variant", "single-kpo"));
  ModelSpec m = preset_model(variant);

  if (variant == Variant::kQubitBaseline) {
    m.baseline.num_qubits = static_cast<int>(s.integer("num_qubits", m.baseline.num_qubits));
    m.baseline.depth = static_cast<int>(s.integer("depth", m.baseline.depth));
    m.baseline.tau = s.number("tau", m.baseline.tau);
    m.baseline.seed = s.seed("ising_seed", m.baseline.seed);
  } else {
    if (s.has("cutoff")) {
      m.cutoffs.clear();
      for (double c : number_list(s.at("cutoff"), "model.cutoff")) {
        if (c != std::floor(c)) throw ValidationError("model.cutoff", "expected integers");
        m.cutoffs.push_back(static_cast<int>(c));
      }
    }
    const std::size_t k = m.cutoffs.size();
    auto broadcast = [k](std::vector<double> v) {
      if (v.size() == 1 && k > 1) v.assign(k, v[0]);
      return v;
    };
    if (s.has("chi")) m.kerr = broadcast(number_list(s.at("chi"), "model.chi"));
    if (m.kerr.size() == 1 && k > 1) m.kerr.assign(k, m.kerr[0]);
    if (s.has("alpha")) {
      const json& a = s.at("alpha");
      m.alpha.clear();
      if (a.is_array()) {
        for (const auto& e : a) m.alpha.push_back(complex_value(e, "model.alpha"));
      } else {
        m.alpha.push_back(complex_value(a, "model.alpha"));
      }
    }
    if (m.alpha.size() == 1 && k > 1) m.alpha.assign(k, m.alpha[0]);
    if (s.has("coupling")) m.coupling = coupling_matrix(s.at("coupling"), "model.coupling");
    if (m.coupling.size() != 0 && m.coupling.rows() != static_cast<Eigen::Index>(k)) {
      if (!s.has("coupling")) m.coupling.resize(0, 0);
    }
    m.encoding.duration = s.number("t_d", m.encoding.duration);
    const bool kerr_or_duration_given = node.contains("chi") || node.contains("t_d");
    const double derived_chi_tilde = m.encoding.duration * m.kerr.at(0);
    m.encoding.chi_tilde =
        s.number("chi_tilde", kerr_or_duration_given ? derived_chi_tilde : m.encoding.chi_tilde);
    m.layers = static_cast<int>(s.integer("layers", m.layers));
    m.tau = s.number("tau", m.tau);
    m.input_dim = static_cast<int>(s.integer("input_dim", m.input_dim));
    m.max_truncation_deficit = s.number("truncation_tolerance", m.max_truncation_deficit);
    if (s.has("encode_modes")) {
      m.encode_modes.clear();
      for (double e : number_list(s.at("encode_modes"), "model.encode_modes")) {
        if (e < 0 || e != std::floor(e)) throw ValidationError("model.encode_modes", "expected mode indices");
        m.encode_modes.push_back(static_cast<std::size_t>(e));
      }
    }
  }

  if (s.has("observables")) {
    const json& list = s.at("observables");
    if (!list.is_array()) throw ValidationError("model.observables", "expected an array");
    m.observables.clear();
    for (const auto& entry : list) {
      Section o(entry, "model.observables");
      Observable obs;
      obs.kind = observable_from_string(o.text("kind", "quadrature"));
      const long long target = o.integer("mode", 0);
      if (target < 0) throw ValidationError("model.observables.mode", "must be non-negative");
      obs.target = static_cast<std::size_t>(target);
      obs.scale = o.number("scale", 1.0);
      o.finish();
      m.observables.push_back(obs);
    }
  }
  m.output = output_from_string(s.text("output", to_string(m.output)));
  s.finish();
  return m;
}

json model_to_json(const ModelSpec& m) {
  json j;
  j["variant"] = to_string(m.variant);
  if (m.variant == Variant::kQubitBaseline) {
    j["num_qubits"] = m.baseline.num_qubits;
    j["depth"] = m.baseline.depth;
    j["tau"] = m.baseline.tau;
    j["ising_seed"] = m.baseline.seed;
  } else {
    j["chi"] = m.kerr;
    j["cutoff"] = m.cutoffs;
    json alpha = json::array();
    for (const Complex& a : m.alpha) {
      if (a.imag() == 0.0) {
        alpha.push_back(a.real());
      } else {
        alpha.push_back({{"re", a.real()}, {"im", a.imag()}});
      }
    }
    j["alpha"] = alpha;
    if (m.coupling.size() != 0) {
      json rows = json::array();
      for (Eigen::Index r = 0; r < m.coupling.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.coupling.cols(); ++c) {
          const Complex v = m.coupling(r, c);
          if (v.imag() == 0.0) {
            row.push_back(v.real());
          } else {
            row.push_back({{"re", v.real()}, {"im", v.imag()}});
          }
        }
        rows.push_back(row);
      }
      j["coupling"] = rows;
    }
    j["chi_tilde"] = m.encoding.chi_tilde;
    j["t_d"] = m.encoding.duration;
    j["layers"] = m.layers;
    j["tau"] = m.tau;
    j["input_dim"] = m.input_dim;
    j["encode_modes"] = m.encode_modes;
    j["truncation_tolerance"] = m.max_truncation_deficit;
  }
  json obs = json::array();
  for (const auto& o : m.observables) {
    obs.push_back({{"kind", to_string(o.kind)}, {"mode", o.target}, {"scale", o.scale}});
  }
  j["observables"] = obs;
  j["output"] = to_string(m.output);
  return j;
}

json config_to_json_value(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["model"] = model_to_json(c.model);
  json opt = {{"reflection", c.optimizer.reflection},
              {"expansion", c.optimizer.expansion},
              {"contraction", c.optimizer.contraction},
              {"shrink", c.optimizer.shrink},
              {"x_tolerance", c.optimizer.x_tolerance},
              {"f_tolerance", c.optimizer.f_tolerance}};
  opt["max_iterations"] = c.optimizer.iteration_limit(c.model.num_params());
  if (c.optimizer.max_evaluations) opt["max_evaluations"] = *c.optimizer.max_evaluations;
  j["optimizer"] = opt;
  j["dataset"] = {{"target", to_string(c.dataset.target)},
                  {"size", c.dataset.size},
                  {"seed", c.dataset.seed}};
  json init = {{"seed", c.theta_init.seed}, {"low", c.theta_init.low}, {"high", c.theta_init.high}};
  if (!c.theta_init.theta0.empty()) init["theta0"] = c.theta_init.theta0;
  j["theta_init"] = init;
  j["analysis"] = {{"fit_points", c.analysis.fit_points},
                   {"spectrum_points", c.analysis.spectrum_points},
                   {"nu_max", c.analysis.nu_max},
                   {"nu_step", c.analysis.nu_step},
                   {"test_points", c.analysis.test_points}};
  return j;
}

json parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config", "expected a JSON object");
  if (!doc.contains("schema_version")) throw ValidationError("schema_version", "missing");
  if (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kSchemaVersion) {
    throw ValidationError("schema_version", "unsupported version, expected " + std::to_string(kSchemaVersion));
  }
  return doc;
}

std::optional<json> sweep_section(const json& doc, const char* key) {
  if (!doc.contains("sweep")) return std::nullopt;
  const json& sweep = doc["sweep"];
  if (!sweep.is_object()) throw ValidationError("sweep", "expected an object");
  for (const auto& [k, v] : sweep.items()) {
    if (k != "alpha" && k != "nsamples") throw ValidationError("sweep." + k, "unknown key");
  }
  if (!sweep.contains(key)) return std::nullopt;
  return sweep[key];
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  const json doc = parse_document(json_text);
  Section root(doc, "");
  root.has("schema_version");
  root.has("sweep");

  ExperimentConfig c;
  c.model = root.has("model") ? parse_model(root.at("model")) : ModelSpec::single_kpo();
  const std::size_t n = c.model.num_params();
  c.optimizer.max_iterations = 200 * n;
  c.optimizer.max_evaluations = 200 * n;

  if (root.has("optimizer")) {
    Section s(root.at("optimizer"), "optimizer");
    c.optimizer.reflection = s.number("reflection", c.optimizer.reflection);
    c.optimizer.expansion = s.number("expansion", c.optimizer.expansion);
    c.optimizer.contraction = s.number("contraction", c.optimizer.contraction);
    c.optimizer.shrink = s.number("shrink", c.optimizer.shrink);
    c.optimizer.x_tolerance = s.number("x_tolerance", c.optimizer.x_tolerance);
    c.optimizer.f_tolerance = s.number("f_tolerance", c.optimizer.f_tolerance);
    const long long iters = s.integer("max_iterations", static_cast<long long>(*c.optimizer.max_iterations));
    if (iters < 1) throw ValidationError("optimizer.max_iterations", "must be at least 1");
    c.optimizer.max_iterations = static_cast<std::size_t>(iters);
    if (s.has("max_evaluations")) {
      const json& v = s.at("max_evaluations");
      if (v.is_null()) {
        c.optimizer.max_evaluations.reset();
      } else {
        const long long evals = s.integer("max_evaluations", 0);
        if (evals < 1) throw ValidationError("optimizer.max_evaluations", "must be at least 1");
        c.optimizer.max_evaluations = static_cast<std::size_t>(evals);
      }
    }
    s.finish();
  }

  if (root.has("dataset")) {
    Section s(root.at("dataset"), "dataset");
    c.dataset.target = target_from_string(s.text("target", to_string(c.dataset.target)));
    c.dataset.size = static_cast<int>(s.integer("size", c.dataset.size));
    c.dataset.seed = s.seed("seed", c.dataset.seed);
    s.finish();
  }

  if (root.has("theta_init")) {
    Section s(root.at("theta_init"), "theta_init");
    c.theta_init.seed = s.seed("seed", c.theta_init.seed);
    c.theta_init.low = s.number("low", c.theta_init.low);
    c.theta_init.high = s.number("high", c.theta_init.high);
    if (s.has("theta0")) {
      const json& v = s.at("theta0");
      if (!v.is_array()) throw ValidationError("theta_init.theta0", "expected an array of numbers");
      c.theta_init.theta0 = number_list(v, "theta_init.theta0");
    }
    s.finish();
  }

  if (root.has("analysis")) {
    Section s(root.at("analysis"), "analysis");
    c.analysis.fit_points = static_cast<int>(s.integer("fit_points", c.analysis.fit_points));
    c.analysis.spectrum_points = static_cast<int>(s.integer("spectrum_points", c.analysis.spectrum_points));
    c.analysis.nu_max = s.number("nu_max", c.analysis.nu_max);
    c.analysis.nu_step = s.number("nu_step", c.analysis.nu_step);
    c.analysis.test_points = static_cast<int>(s.integer("test_points", c.analysis.test_points));
    s.finish();
  }
  root.finish();
  sweep_section(doc, "alpha");

  c.validate();
  return c;
}

std::string experiment_config_to_json(const ExperimentConfig& config) {
  return config_to_json_value(config).dump(2);
}

std::vector<double> sweep_alpha_values(const std::string& json_text) {
  const auto section = sweep_section(parse_document(json_text), "alpha");
  if (!section) return {std::begin(kDefaultAlphas), std::end(kDefaultAlphas)};
  const std::vector<double> values = number_list(*section, "sweep.alpha");
  if (values.empty()) throw ValidationError("sweep.alpha", "empty list");
  for (double a : values) {
    if (!(a >= 0.0)) throw ValidationError("sweep.alpha", "amplitudes must be non-negative");
  }
  return values;
}

std::vector<int> sweep_sample_sizes(const std::string& json_text) {
  const auto section = sweep_section(parse_document(json_text), "nsamples");
  if (!section) return {std::begin(kDefaultSampleSizes), std::end(kDefaultSampleSizes)};
  std::vector<int> sizes;
  for (double v : number_list(*section, "sweep.nsamples")) {
    if (v < 1 || v != std::floor(v)) throw ValidationError("sweep.nsamples", "expected positive integers");
    sizes.push_back(static_cast<int>(v));
  }
  if (sizes.empty()) throw ValidationError("sweep.nsamples", "empty list");
  return sizes;
}

std::string record_to_json(const TrainingRecord& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_to_json_value(r.config);
  std::vector<double> xs(r.dataset.inputs.data(), r.dataset.inputs.data() + r.dataset.inputs.size());
  std::vector<double> ys(r.dataset.labels.data(), r.dataset.labels.data() + r.dataset.labels.size());
  j["dataset"] = {{"target", r.dataset.target}, {"seed", r.dataset.seed}, {"x", xs}, {"y", ys}};
  j["optimizer"] = {{"iterations", r.trace.iterations},
                    {"evaluations", r.trace.evaluations},
                    {"termination", to_string(r.trace.reason)},
                    {"best_cost", r.trace.best_cost}};
  j["num_params"] = r.trace.theta.size();
  j["theta"] = r.trace.theta;
  j["final_cost"] = r.final_cost;
  j["test_mse"] = r.test_mse;
  return j.dump(2);
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string fit_csv(const TrainingRecord& r) {
  std::string out = "x,f\n";
  for (std::size_t i = 0; i < r.fit_x.size(); ++i) {
    out += format_double(r.fit_x[i]) + "," + format_double(r.fit_f[i]) + "\n";
  }
  return out;
}

std::string spectrum_csv(const TrainingRecord& r) {
  std::string out = "nu,abs_F,phase\n";
  for (std::size_t i = 0; i < r.spectrum.nu.size(); ++i) {
    out += format_double(r.spectrum.nu[i]) + "," + format_double(r.spectrum.magnitude[i]) + "," +
           format_double(r.spectrum.phase[i]) + "\n";
  }
  return out;
}

std::string fidelity_csv(const std::vector<std::pair<double, double>>& trace) {
  std::string out = "t,fidelity\n";
  for (const auto& [t, f] : trace) out += format_double(t) + "," + format_double(f) + "\n";
  return out;
}

}  // namespace kpoqml
