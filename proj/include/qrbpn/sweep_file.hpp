#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrbpn/backends.hpp"
#include "qrbpn/config.hpp"
#include "qrbpn/estimation.hpp"

namespace qrbpn {

inline constexpr int kSchemaMajor = 1;
inline constexpr int kSchemaMinor = 0;

/// "1.0"; readers reject files whose major version is newer.
std::string schema_version();
void check_schema(const nlohmann::json& header, std::string_view expected_schema);

/// One (qubit, h_in) cell. Sampled runs carry counts, exact runs carry the
/// closed-form outcome probabilities.
struct SweepCell {
  std::uint64_t qubit = 0;
  std::uint64_t point = 0;
  double h_in = 0.0;
  std::optional<ShotCounts> counts;
  std::optional<OutcomeProbabilities> exact;
};

struct SweepFile {
  RunConfig config;
  std::optional<std::string> created;  // ISO-8601, only when requested
  std::vector<SweepCell> cells;
};

/// Line-delimited JSON: one header object, then one object per cell.
void write_sweep(std::ostream& out, const SweepFile& file);

/// Throws SchemaError for a malformed or too-new file, DataIntegrityError
/// when cell counts do not sum to the configured shots.
SweepFile read_sweep(std::istream& in);

/// Per-qubit response curves in configured qubit order.
std::vector<std::pair<std::uint64_t, ResponseCurve>> curves_from_sweep(const SweepFile& file);

}  // namespace qrbpn
