#include "qrbpn/config.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qrbpn/errors.hpp"

namespace qrbpn {

namespace {

std::uint64_t parse_uint(std::string_view text) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw ConfigError("expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw ConfigError("expected a number, got '" + std::string(text) + "'");
  return v;
}

QCNoiseModel qc_from_json(const nlohmann::json& j, QCNoiseModel n) {
  n.angle_scale = j.value("angle_scale", n.angle_scale);
  n.angle_offset = j.value("angle_offset", n.angle_offset);
  n.flip_from_plus = j.value("flip_from_plus", n.flip_from_plus);
  n.flip_from_minus = j.value("flip_from_minus", n.flip_from_minus);
  return n;
}

QANoiseModel qa_from_json(const nlohmann::json& j, QANoiseModel n) {
  if (j.contains("beta_dev")) n.beta_dev = Beta(j.at("beta_dev").get<double>());
  n.field_scale = j.value("field_scale", n.field_scale);
  n.field_offset = j.value("field_offset", n.field_offset);
  n.field_noise_std = j.value("field_noise_std", n.field_noise_std);
  n.flip = j.value("flip", n.flip);
  return n;
}

nlohmann::json to_json(const QCNoiseModel& n) {
  return {{"angle_scale", n.angle_scale},
          {"angle_offset", n.angle_offset},
          {"flip_from_plus", n.flip_from_plus},
          {"flip_from_minus", n.flip_from_minus}};
}

nlohmann::json to_json(const QANoiseModel& n) {
  return {{"beta_dev", n.beta_dev.value()},
          {"field_scale", n.field_scale},
          {"field_offset", n.field_offset},
          {"field_noise_std", n.field_noise_std},
          {"flip", n.flip}};
}

}  // namespace

SweepGrid RunConfig::grid() const { return SweepGrid(InputField(h_lo), InputField(h_hi), points); }

QCNoiseModel RunConfig::qc_noise_for(std::uint64_t qubit) const {
  const auto it = qc_overrides.find(qubit);
  return it == qc_overrides.end() ? qc_noise : it->second;
}

QANoiseModel RunConfig::qa_noise_for(std::uint64_t qubit) const {
  const auto it = qa_overrides.find(qubit);
  QANoiseModel n = it == qa_overrides.end() ? qa_noise : it->second;
  if (!qa_beta_dev_set && it == qa_overrides.end()) n.beta_dev = Beta(beta);
  return n;
}

void RunConfig::validate() const {
  try {
    Beta{beta};
    grid();
    if (shots == 0) throw ConfigError("shots must be >= 1");
    if (!exact && shots < 2) throw ConfigError("sampled runs need at least 2 shots per cell");
    if (qubits.empty()) throw ConfigError("qubit list is empty");
    for (std::size_t i = 1; i < qubits.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (qubits[i] == qubits[j]) throw ConfigError("duplicate qubit " + std::to_string(qubits[i]));
    if (chip_id.empty()) throw ConfigError("chip id is empty");
    if (!std::isfinite(phi)) throw ConfigError("phi must be finite");
    for (std::uint64_t q : qubits) {
      if (model == Model::gate) {
        qc_noise_for(q).validate();
      } else {
        const QANoiseModel n = qa_noise_for(q);
        n.validate();
        if (exact && n.field_noise_std > 0.0)
          throw ConfigError("exact mode cannot integrate per-shot field jitter (qubit " +
                            std::to_string(q) + ")");
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunConfig default_config(Model model) {
  RunConfig c;
  c.model = model;
  if (model == Model::anneal) {
    c.points = kAnnealGridPoints;
    c.shots = kAnnealShots;
    c.batch_size = kAnnealNumReads;
  }
  return c;
}

std::string_view backend_name(Model model) { return model == Model::gate ? "qc-sim" : "qa-sim"; }

Model parse_backend(std::string_view name) {
  if (name == "qc-sim" || name == "gate" || name == "qc") return Model::gate;
  if (name == "qa-sim" || name == "anneal" || name == "qa") return Model::anneal;
  throw ConfigError("unknown backend '" + std::string(name) + "' (expected qc-sim or qa-sim)");
}

FitWindow parse_window(std::string_view text) {
  // A leading '-' belongs to lo, so split at the first ':' after position 0.
  const auto colon = text.find(':', 1);
  if (colon == std::string_view::npos) throw ConfigError("window must be lo:hi");
  try {
    return FitWindow(parse_double(text.substr(0, colon)), parse_double(text.substr(colon + 1)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<std::uint64_t> parse_qubit_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_uint(item));
    } else {
      const std::uint64_t a = parse_uint(item.substr(0, dash));
      const std::uint64_t b = parse_uint(item.substr(dash + 1));
      if (b < a) throw ConfigError("descending qubit range '" + std::string(item) + "'");
      for (std::uint64_t q = a; q <= b; ++q) out.push_back(q);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ConfigError("qubit list is empty");
  return out;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["backend"] = backend_name(c.model);
  j["exact"] = c.exact;
  j["beta"] = c.beta;
  j["h_lo"] = c.h_lo;
  j["h_hi"] = c.h_hi;
  j["points"] = c.points;
  j["shots"] = c.shots;
  j["batch_size"] = c.batch_size;
  j["seed"] = c.seed;
  j["stream_variant"] = c.stream_variant;
  j["qubits"] = c.qubits;
  j["window"] = {c.window.lo(), c.window.hi()};
  j["phi"] = c.phi;
  j["chip"] = c.chip_id;
  if (c.model == Model::gate) {
    j["noise"] = to_json(c.qc_noise);
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [q, n] : c.qc_overrides) per[std::to_string(q)] = to_json(n);
    j["qubit_noise"] = per;
  } else {
    j["annealing_time_us"] = c.annealing_time_us;
    nlohmann::json noise = to_json(c.qa_noise);
    if (!c.qa_beta_dev_set) noise.erase("beta_dev");
    j["noise"] = noise;
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [q, n] : c.qa_overrides) per[std::to_string(q)] = to_json(n);
    j["qubit_noise"] = per;
  }
  return j;
}

void apply_noise_json(RunConfig& c, const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ConfigError("noise description must be a JSON object");
    if (j.contains("default")) {
      const auto& d = j.at("default");
      if (c.model == Model::gate) {
        c.qc_noise = qc_from_json(d, c.qc_noise);
      } else {
        c.qa_noise = qa_from_json(d, c.qa_noise);
        if (d.contains("beta_dev")) c.qa_beta_dev_set = true;
      }
    }
    if (j.contains("qubits")) {
      for (const auto& [key, value] : j.at("qubits").items()) {
        const std::uint64_t q = parse_uint(key);
        if (c.model == Model::gate) {
          c.qc_overrides[q] = qc_from_json(value, c.qc_noise);
        } else {
          QANoiseModel base = c.qa_noise;
          if (!c.qa_beta_dev_set) base.beta_dev = Beta(c.beta);
          c.qa_overrides[q] = qa_from_json(value, base);
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("noise description: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("noise description: ") + e.what());
  }
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig c) {
  try {
    if (j.contains("backend")) {
      const Model m = parse_backend(j.at("backend").get<std::string>());
      if (m != c.model) {
        const RunConfig d = default_config(m);
        c.model = m;
        c.points = d.points;
        c.shots = d.shots;
        c.batch_size = d.batch_size;
      }
    }
    c.exact = j.value("exact", c.exact);
    c.beta = j.value("beta", c.beta);
    c.h_lo = j.value("h_lo", c.h_lo);
    c.h_hi = j.value("h_hi", c.h_hi);
    c.points = j.value("points", c.points);
    c.shots = j.value("shots", c.shots);
    c.batch_size = j.value("batch_size", c.batch_size);
    c.seed = j.value("seed", c.seed);
    c.stream_variant = j.value("stream_variant", c.stream_variant);
    if (j.contains("qubits")) {
      const auto& q = j.at("qubits");
      c.qubits = q.is_string() ? parse_qubit_list(q.get<std::string>())
                               : q.get<std::vector<std::uint64_t>>();
    }
    if (j.contains("window")) {
      const auto& w = j.at("window");
      c.window = w.is_string() ? parse_window(w.get<std::string>())
                               : FitWindow(w.at(0).get<double>(), w.at(1).get<double>());
    }
    c.phi = j.value("phi", c.phi);
    c.chip_id = j.value("chip", c.chip_id);
    c.annealing_time_us = j.value("annealing_time_us", c.annealing_time_us);
    nlohmann::json noise = nlohmann::json::object();
    if (j.contains("noise")) noise["default"] = j.at("noise");
    if (j.contains("qubit_noise")) noise["qubits"] = j.at("qubit_noise");
    apply_noise_json(c, noise);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

}  // namespace qrbpn
