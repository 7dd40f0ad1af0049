#include "qrbpn/sweep_file.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "qrbpn/errors.hpp"

namespace qrbpn {

namespace {

constexpr std::string_view kSweepSchema = "qrbpn.sweep";

std::string cell_name(std::uint64_t qubit, std::uint64_t point) {
  return "q" + std::to_string(qubit) + "-p" + std::to_string(point);
}

}  // namespace

std::string schema_version() { return std::to_string(kSchemaMajor) + "." + std::to_string(kSchemaMinor); }

void check_schema(const nlohmann::json& header, std::string_view expected_schema) {
  if (!header.is_object() || header.value("schema", "") != expected_schema)
    throw SchemaError("expected a '" + std::string(expected_schema) + "' document");
  const std::string version = header.value("version", "");
  const auto dot = version.find('.');
  int major = 0;
  try {
    major = std::stoi(version.substr(0, dot));
  } catch (const std::exception&) {
    throw SchemaError("missing or malformed schema version '" + version + "'");
  }
  if (major > kSchemaMajor)
    throw SchemaError("schema version " + version + " is newer than supported " + schema_version());
  if (major < kSchemaMajor) throw SchemaError("unsupported schema version " + version);
}

void write_sweep(std::ostream& out, const SweepFile& file) {
  nlohmann::json header = {{"schema", kSweepSchema},
                           {"version", schema_version()},
                           {"tool_version", QRBPN_VERSION},
                           {"mode", file.config.exact ? "exact" : "sampled"},
                           {"config", config_to_json(file.config)}};
  if (file.created) header["created"] = *file.created;
  out << header.dump() << '\n';
  for (const auto& c : file.cells) {
    nlohmann::json line = {{"qubit", c.qubit}, {"point", c.point}, {"h_in", c.h_in}};
    if (c.counts) {
      line["n_plus"] = c.counts->n_plus();
      line["n_minus"] = c.counts->n_minus();
    }
    if (c.exact) {
      line["p_plus"] = c.exact->plus;
      line["p_minus"] = c.exact->minus;
    }
    out << line.dump() << '\n';
  }
}

SweepFile read_sweep(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty sweep file");
  SweepFile file;
  try {
    const auto header = nlohmann::json::parse(line);
    check_schema(header, kSweepSchema);
    const auto& cfg = header.at("config");
    file.config = config_from_json(cfg, default_config(parse_backend(cfg.at("backend").get<std::string>())));
    if (header.contains("created")) file.created = header.at("created").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("sweep header: ") + e.what());
  } catch (const ConfigError& e) {
    throw SchemaError(std::string("sweep header: ") + e.what());
  }

  std::vector<std::string> bad;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    SweepCell c;
    try {
      const auto j = nlohmann::json::parse(line);
      c.qubit = j.at("qubit").get<std::uint64_t>();
      c.point = j.at("point").get<std::uint64_t>();
      c.h_in = j.at("h_in").get<double>();
      if (file.config.exact) {
        c.exact = OutcomeProbabilities{j.at("p_plus").get<double>(), j.at("p_minus").get<double>()};
      } else {
        const auto n_plus = j.at("n_plus").get<std::uint64_t>();
        const auto n_minus = j.at("n_minus").get<std::uint64_t>();
        if (n_plus + n_minus != file.config.shots) {
          bad.push_back(cell_name(c.qubit, c.point));
          continue;
        }
        c.counts = ShotCounts(n_plus, n_minus);
      }
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("sweep line " + std::to_string(line_no) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      bad.push_back(cell_name(c.qubit, c.point));
      continue;
    }
    file.cells.push_back(std::move(c));
  }
  if (!bad.empty())
    throw DataIntegrityError("cell counts do not sum to the configured shots", std::move(bad));
  return file;
}

std::vector<std::pair<std::uint64_t, ResponseCurve>> curves_from_sweep(const SweepFile& file) {
  std::map<std::uint64_t, std::vector<CurvePoint>> per_qubit;
  for (const auto& c : file.cells) {
    const EffectiveFieldEstimate est =
        c.exact ? heff_from_exact(*c.exact, file.config.shots) : heff_from_counts(*c.counts);
    per_qubit[c.qubit].push_back({InputField(c.h_in), est});
  }
  std::vector<std::pair<std::uint64_t, ResponseCurve>> out;
  for (std::uint64_t q : file.config.qubits) {
    auto it = per_qubit.find(q);
    if (it == per_qubit.end()) continue;
    CurveMetadata meta{std::string(backend_name(file.config.model)), file.config.beta,
                       file.config.shots, file.config.seed};
    out.emplace_back(q, curve_from_estimates(std::move(it->second), std::move(meta)));
    per_qubit.erase(it);
  }
  if (!per_qubit.empty()) {
    std::vector<std::string> stray;
    for (const auto& [q, pts] : per_qubit) stray.push_back("q" + std::to_string(q));
    throw DataIntegrityError("cells reference qubits missing from the config", std::move(stray));
  }
  return out;
}

}  // namespace qrbpn
