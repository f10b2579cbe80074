#pragma once

#include <functional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "stgraph/error.hpp"

namespace stgraph {

using json = nlohmann::json;

// Formats a double as the shortest decimal with at most six fractional
// digits ("-0" normalized to "0"). This is the number format of every
// canonical file the tool reads and writes.
std::string format_number(double v);

// True iff v survives format_number -> strtod unchanged, i.e. v is the
// correctly rounded double of a decimal with <= 6 fractional digits.
bool is_canonical_number(double v);

using NumberFormatter = std::function<std::string(double)>;

// Canonical serialization: object keys sorted, no insignificant
// whitespace, numbers through `fmt` (format_number by default), plus a
// trailing newline. Identical values always yield identical bytes.
std::string write_canonical(const json& value, const NumberFormatter& fmt = {});

// nlohmann parse wrapped so failures surface as Error{Syntax} with
// line/column information.
json parse_json(std::string_view text, std::string_view what);

// Strict-schema helpers: every key of `obj` must appear in `required`
// or `optional`, and all required keys must be present.
void expect_keys(const json& obj, std::string_view where,
                 std::initializer_list<std::string_view> required,
                 std::initializer_list<std::string_view> optional = {});

double require_number(const json& v, std::string_view where);
// As above but also enforces the 6-fractional-digit file rule.
double require_canonical_number(const json& v, std::string_view where);
long long require_integer(const json& v, std::string_view where);
std::string require_string(const json& v, std::string_view where);
const json& require_array(const json& v, std::string_view where);
const json& require_object(const json& v, std::string_view where);
bool require_bool(const json& v, std::string_view where);

std::string read_file(const std::string& path);

// Writes via a temp file + rename so interrupted runs never leave a
// partial output behind.
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace stgraph
