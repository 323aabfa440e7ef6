#include "kaonet/keyvalue.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>

#include "kaonet/errors.hpp"

namespace kaonet {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

void KeyValueDoc::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_)
    if (k == key) {
      v = value;
      return;
    }
  entries_.emplace_back(key, value);
}

void KeyValueDoc::set_number(const std::string& key, double value) {
  set(key, format_number(value));
}

std::optional<std::string> KeyValueDoc::find(const std::string& key) const {
  for (const auto& [k, v] : entries_)
    if (k == key) return v;
  return std::nullopt;
}

bool KeyValueDoc::has(const std::string& key) const { return find(key).has_value(); }

std::string KeyValueDoc::text(const std::string& key) const {
  auto v = find(key);
  if (!v) throw ConfigError("missing key: " + key);
  return *v;
}

double KeyValueDoc::number(const std::string& key) const {
  return parse_number(text(key));
}

double KeyValueDoc::number_or(const std::string& key, double fallback) const {
  auto v = find(key);
  return v ? parse_number(*v) : fallback;
}

std::vector<double> KeyValueDoc::number_list(const std::string& key) const {
  std::string raw = text(key);
  std::vector<double> out;
  std::string item;
  std::istringstream ss(raw);
  while (std::getline(ss, item, ',')) out.push_back(parse_number(trim(item)));
  if (out.empty()) throw ConfigError("empty list for key: " + key);
  return out;
}

KeyValueDoc parse_key_values(std::istream& in) {
  KeyValueDoc doc;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("unterminated section header at line " + std::to_string(lineno));
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
    doc.set(section.empty() ? key : section + "." + key, value);
  }
  return doc;
}

std::string serialize_key_values(const KeyValueDoc& doc) {
  std::string out, section;
  for (const auto& [key, value] : doc.entries()) {
    std::size_t dot = key.find('.');
    std::string sec = dot == std::string::npos ? "" : key.substr(0, dot);
    std::string name = dot == std::string::npos ? key : key.substr(dot + 1);
    if (sec != section) {
      if (!out.empty()) out += "\n";
      out += "[" + sec + "]\n";
      section = sec;
    }
    out += name + " = " + value + "\n";
  }
  return out;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_number(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  try {
    std::size_t pos = 0;
    double v = std::stod(text, &pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ConfigError("trailing characters in number: " + text);
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("not a number: " + text);
  }
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace kaonet
