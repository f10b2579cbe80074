#include "stgraph/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace stgraph {

std::string format_number(double v) {
  if (!std::isfinite(v)) {
    throw internal_error("non-finite number cannot be serialized");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    auto last = s.find_last_not_of('0');
    if (last == dot) last -= 1;
    s.erase(last + 1);
  }
  if (s == "-0") s = "0";
  return s;
}

bool is_canonical_number(double v) {
  if (!std::isfinite(v)) return false;
  const std::string s = format_number(v);
  return std::strtod(s.c_str(), nullptr) == v;
}

namespace {

void append_escaped(std::string& out, std::string_view s) {
  out.push_back('"');
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);  // UTF-8 bytes pass through
        }
    }
  }
  out.push_back('"');
}

void write_value(std::string& out, const json& v, const NumberFormatter& fmt) {
  switch (v.type()) {
    case json::value_t::null: out += "null"; break;
    case json::value_t::boolean: out += v.get<bool>() ? "true" : "false"; break;
    case json::value_t::number_integer:
      out += std::to_string(v.get<long long>());
      break;
    case json::value_t::number_unsigned:
      out += std::to_string(v.get<unsigned long long>());
      break;
    case json::value_t::number_float:
      out += fmt(v.get<double>());
      break;
    case json::value_t::string: append_escaped(out, v.get_ref<const std::string&>()); break;
    case json::value_t::array: {
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out.push_back(',');
        first = false;
        write_value(out, item, fmt);
      }
      out.push_back(']');
      break;
    }
    case json::value_t::object: {
      // nlohmann::json stores object keys in std::map order, which is
      // exactly the sorted-key canonical form.
      out.push_back('{');
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out.push_back(',');
        first = false;
        append_escaped(out, it.key());
        out.push_back(':');
        write_value(out, it.value(), fmt);
      }
      out.push_back('}');
      break;
    }
    default:
      throw internal_error("unsupported json value type");
  }
}

}  // namespace

std::string write_canonical(const json& value, const NumberFormatter& fmt) {
  std::string out;
  const NumberFormatter& f = fmt ? fmt : NumberFormatter(format_number);
  write_value(out, value, f);
  out.push_back('\n');
  return out;
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based offset of the failure point.
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min(text.size(), e.byte > 0 ? e.byte - 1 : 0);
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream msg;
    msg << what << ": line " << line << ", column " << col << ": " << e.what();
    throw syntax_error(msg.str());
  }
}

void expect_keys(const json& obj, std::string_view where,
                 std::initializer_list<std::string_view> required,
                 std::initializer_list<std::string_view> optional) {
  if (!obj.is_object()) {
    throw schema_error(std::string(where) + ": expected an object");
  }
  for (auto key : required) {
    if (!obj.contains(key)) {
      throw schema_error(std::string(where) + ": missing field '" + std::string(key) + "'");
    }
  }
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const std::string& k = it.key();
    auto known = [&](std::initializer_list<std::string_view> names) {
      for (auto n : names)
        if (k == n) return true;
      return false;
    };
    if (!known(required) && !known(optional)) {
      throw schema_error(std::string(where) + ": unknown field '" + k + "'");
    }
  }
}

double require_number(const json& v, std::string_view where) {
  if (!v.is_number()) throw schema_error(std::string(where) + ": expected a number");
  return v.get<double>();
}

double require_canonical_number(const json& v, std::string_view where) {
  const double d = require_number(v, where);
  if (!is_canonical_number(d)) {
    throw schema_error(std::string(where) +
                       ": number not representable with 6 fractional digits");
  }
  return d;
}

long long require_integer(const json& v, std::string_view where) {
  if (v.is_number_integer() || v.is_number_unsigned()) return v.get<long long>();
  throw schema_error(std::string(where) + ": expected an integer");
}

std::string require_string(const json& v, std::string_view where) {
  if (!v.is_string()) throw schema_error(std::string(where) + ": expected a string");
  return v.get<std::string>();
}

const json& require_array(const json& v, std::string_view where) {
  if (!v.is_array()) throw schema_error(std::string(where) + ": expected an array");
  return v;
}

const json& require_object(const json& v, std::string_view where) {
  if (!v.is_object()) throw schema_error(std::string(where) + ": expected an object");
  return v;
}

bool require_bool(const json& v, std::string_view where) {
  if (!v.is_boolean()) throw schema_error(std::string(where) + ": expected a boolean");
  return v.get<bool>();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  if (!in.good() && !in.eof()) throw io_error("read failed: " + path);
  return out.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open file for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out.good()) throw io_error("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw io_error("cannot replace " + path + ": " + ec.message());
  }
}

}  // namespace stgraph
