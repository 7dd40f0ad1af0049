#include "qrbpn/jobs.hpp"

#include <map>
#include <set>
#include <string>

#include "qrbpn/errors.hpp"
#include "qrbpn/gates.hpp"
#include "qrbpn/simulation.hpp"

namespace qrbpn {

namespace {

constexpr std::string_view kJobSchema = "qrbpn.jobs";
constexpr std::string_view kResultSchema = "qrbpn.results";

std::string job_id(std::uint64_t qubit, std::uint64_t point) {
  return "q" + std::to_string(qubit) + "-p" + std::to_string(point);
}

nlohmann::json gates_json(const NativeGateSequence& seq) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : seq.gates) {
    if (g.kind == GateKind::sx)
      out.push_back({{"name", "sx"}});
    else
      out.push_back({{"name", "rz"}, {"angle", g.angle}});
  }
  return out;
}

std::uint64_t batch_count(const RunConfig& c) {
  if (c.batch_size == 0 || c.batch_size >= c.shots) return 1;
  return (c.shots + c.batch_size - 1) / c.batch_size;
}

std::uint64_t batch_shots(const RunConfig& c, std::uint64_t batch) {
  if (c.batch_size == 0 || c.batch_size >= c.shots) return c.shots;
  const std::uint64_t start = batch * c.batch_size;
  return std::min(c.batch_size, c.shots - start);
}

RunConfig bundle_config(const nlohmann::json& jobs) {
  try {
    check_schema(jobs, kJobSchema);
    const auto& cfg = jobs.at("config");
    return config_from_json(cfg, default_config(parse_backend(cfg.at("backend").get<std::string>())));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("job bundle: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("job bundle: ") + e.what());
  }
}

ShotCounts counts_from_result(const nlohmann::json& r, Model model) {
  if (r.contains("n_plus"))
    return {r.at("n_plus").get<std::uint64_t>(), r.at("n_minus").get<std::uint64_t>()};
  const auto& c = r.at("counts");
  // Gate results are keyed by measured bit (0 <-> +1), anneal results by spin.
  const char* plus_key = model == Model::gate ? "0" : "+1";
  const char* minus_key = model == Model::gate ? "1" : "-1";
  return {c.value(plus_key, std::uint64_t{0}), c.value(minus_key, std::uint64_t{0})};
}

}  // namespace

nlohmann::json export_jobs(const RunConfig& config) {
  config.validate();
  if (config.exact) throw ConfigError("exact mode has no hardware jobs to export");
  const auto sweep = build_sweep(config.grid());

  nlohmann::json bundle = {{"schema", kJobSchema},
                           {"version", schema_version()},
                           {"model", config.model == Model::gate ? "gate" : "anneal"},
                           {"config", config_to_json(config)},
                           {"jobs", nlohmann::json::array()}};
  auto& jobs = bundle["jobs"];
  for (std::uint64_t q : config.qubits) {
    for (std::size_t p = 0; p < sweep.size(); ++p) {
      const double h = sweep[p].value();
      nlohmann::json job = {{"id", job_id(q, p)}, {"qubit", q}, {"point", p}, {"h_in", h}};
      if (config.model == Model::gate) {
        const QubitProgram program = make_program(config, sweep[p]);
        job["theta"] = program.theta();
        job["phi"] = program.phi();
        job["shots"] = config.shots;
        job["gates"] = gates_json(normalize_to_native(program));
      } else {
        job["h"] = -h;
        job["num_reads"] = batch_shots(config, 0);
        job["batches"] = batch_count(config);
        job["annealing_time_us"] = config.annealing_time_us;
        job["flux_drift_compensation"] = false;
      }
      jobs.push_back(std::move(job));
    }
  }
  return bundle;
}

nlohmann::json run_jobs(const nlohmann::json& jobs) {
  const RunConfig config = bundle_config(jobs);
  nlohmann::json results = {{"schema", kResultSchema},
                            {"version", schema_version()},
                            {"results", nlohmann::json::array()}};
  auto& out = results["results"];
  std::map<std::uint64_t, Backend> backends;
  try {
    for (const auto& job : jobs.at("jobs")) {
      const auto q = job.at("qubit").get<std::uint64_t>();
      const auto p = job.at("point").get<std::uint64_t>();
      auto it = backends.find(q);
      if (it == backends.end()) it = backends.emplace(q, make_backend(config, q)).first;

      if (config.model == Model::gate) {
        const QubitProgram program =
            QubitProgram::gate(job.at("theta").get<double>(), job.at("phi").get<double>());
        const auto shots = job.at("shots").get<std::uint64_t>();
        const ShotCounts c =
            sample(it->second, {program, shots, config.seed, {q, p, 0, config.stream_variant}});
        out.push_back({{"id", job.at("id")}, {"counts", {{"0", c.n_plus()}, {"1", c.n_minus()}}}});
      } else {
        // The device sees -h and minimizes h * sigma, i.e. samples exp(+beta h_in sigma).
        const QubitProgram program = QubitProgram::anneal(InputField(-job.at("h").get<double>()));
        const auto batches = job.at("batches").get<std::uint64_t>();
        for (std::uint64_t b = 0; b < batches; ++b) {
          const ShotCounts c = sample(
              it->second, {program, batch_shots(config, b), config.seed, {q, p, b, config.stream_variant}});
          out.push_back({{"id", job.at("id")},
                         {"batch", b},
                         {"counts", {{"+1", c.n_plus()}, {"-1", c.n_minus()}}}});
        }
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("job bundle: ") + e.what());
  }
  return results;
}

SweepFile import_results(const nlohmann::json& jobs, const nlohmann::json& results) {
  const RunConfig config = bundle_config(jobs);
  struct Expected {
    std::uint64_t qubit;
    std::uint64_t point;
    double h_in;
  };
  std::vector<std::string> order;
  std::map<std::string, Expected> expected;
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> tally;
  std::vector<std::string> problems;

  try {
    check_schema(results, kResultSchema);
    for (const auto& job : jobs.at("jobs")) {
      const auto id = job.at("id").get<std::string>();
      if (config.model == Model::gate && job.at("gates").size() != NativeGateSequence::size())
        problems.push_back(id + ": gate job does not carry exactly 5 gates");
      expected[id] = {job.at("qubit").get<std::uint64_t>(), job.at("point").get<std::uint64_t>(),
                      job.at("h_in").get<double>()};
      order.push_back(id);
    }
    for (const auto& r : results.at("results")) {
      const auto id = r.at("id").get<std::string>();
      if (!expected.count(id)) {
        problems.push_back(id + ": not in job bundle");
        continue;
      }
      const ShotCounts c = counts_from_result(r, config.model);
      auto& t = tally[id];
      t.first += c.n_plus();
      t.second += c.n_minus();
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("result bundle: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("result bundle: ") + e.what());
  }

  SweepFile file;
  file.config = config;
  for (const auto& id : order) {
    const auto it = tally.find(id);
    if (it == tally.end()) {
      problems.push_back(id + ": missing results");
      continue;
    }
    const auto [n_plus, n_minus] = it->second;
    if (n_plus + n_minus != config.shots) {
      problems.push_back(id + ": " + std::to_string(n_plus + n_minus) + " shots, expected " +
                         std::to_string(config.shots));
      continue;
    }
    const Expected& e = expected.at(id);
    SweepCell cell;
    cell.qubit = e.qubit;
    cell.point = e.point;
    cell.h_in = e.h_in;
    cell.counts = ShotCounts(n_plus, n_minus);
    file.cells.push_back(std::move(cell));
  }
  if (!problems.empty())
    throw DataIntegrityError("result bundle does not match job bundle", std::move(problems));
  return file;
}

}  // namespace qrbpn
