#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kaonet {

// Ordered key/value document.  Sections written as [name] prefix the keys
// that follow with "name."; deterministic round trip.
class KeyValueDoc {
 public:
  void set(const std::string& key, const std::string& value);
  void set_number(const std::string& key, double value);
  std::optional<std::string> find(const std::string& key) const;
  bool has(const std::string& key) const;

  // Throw ConfigError when missing or malformed.
  std::string text(const std::string& key) const;
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::vector<double> number_list(const std::string& key) const;

  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

KeyValueDoc parse_key_values(std::istream& in);
std::string serialize_key_values(const KeyValueDoc& doc);

// Canonical shortest-round-trip decimal for report payloads.
std::string format_number(double value);
double parse_number(const std::string& text);  // accepts inf; ConfigError otherwise

std::uint64_t fnv1a(std::string_view data);

}  // namespace kaonet
