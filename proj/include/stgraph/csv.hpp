#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stgraph {

// Minimal RFC-4180-style CSV: fields quoted only when they contain a
// comma, quote, or newline.
std::string csv_field(std::string_view value);
std::string csv_row(const std::vector<std::string>& fields);
std::vector<std::string> parse_csv_row(std::string_view line);

}  // namespace stgraph
