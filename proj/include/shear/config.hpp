#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace shear {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Line-oriented config: "[section]" headers, "key = value" pairs, '#'
/// comments, repeated keys allowed, lists comma-separated. One level only.
class Config {
 public:
  static Config parse(std::istream& in);
  static Config parse_file(const std::string& path);

  bool has(const std::string& section, const std::string& key) const;
  bool has_section(const std::string& section) const;
  std::vector<std::string> section_names() const;

  /// Last value wins when a key repeats; throws ConfigError when absent.
  std::string get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  /// All values of a repeated key, in file order.
  std::vector<std::string> get_all(const std::string& section,
                                   const std::string& key) const;

  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key,
                       double fallback) const;
  long get_long(const std::string& section, const std::string& key) const;
  long get_long_or(const std::string& section, const std::string& key,
                   long fallback) const;
  std::vector<double> get_doubles(const std::string& section,
                                  const std::string& key) const;
  std::vector<long> get_longs(const std::string& section,
                              const std::string& key) const;

 private:
  // section -> key -> values (repeats preserved)
  std::map<std::string, std::map<std::string, std::vector<std::string>>> data_;
};

std::vector<std::string> split_list(const std::string& value);

}  // namespace shear
