#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qrbpn::csv {

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Splits one record; understands double-quoted fields with "" escapes.
std::vector<std::string> split(std::string_view line);

std::string join(const std::vector<std::string>& fields);

}  // namespace qrbpn::csv
