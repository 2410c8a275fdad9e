#pragma once

// Flat key = value configuration and its content hash.

#include <map>
#include <stdexcept>
#include <string>

namespace sigmaflow::cli {

using Settings = std::map<std::string, std::string>;

/// Bad command-line or configuration input (exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Throws UsageError on malformed lines or repeated keys.
Settings parse_settings(const std::string& text, const std::string& origin = "<config>");
Settings read_settings_file(const std::string& path);

/// 64-bit FNV-1a over the sorted "key=value\n" lines, as 16 hex digits.
std::string config_hash(const Settings& settings);

/// Typed access with UsageError on conversion failure.
double get_double(const Settings& s, const std::string& key);
int get_int(const Settings& s, const std::string& key);

}  // namespace sigmaflow::cli
