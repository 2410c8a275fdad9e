#include "sigmaflow_cli/config.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace sigmaflow::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::string& lookup(const Settings& s, const std::string& key) {
  const auto it = s.find(key);
  if (it == s.end()) throw UsageError("missing setting '" + key + "'");
  return it->second;
}

}  // namespace

Settings parse_settings(const std::string& text, const std::string& origin) {
  Settings out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(fmt::format("{}:{}: expected key = value", origin, lineno));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw UsageError(fmt::format("{}:{}: empty key", origin, lineno));
    if (!out.emplace(key, value).second) {
      throw UsageError(fmt::format("{}:{}: repeated key '{}'", origin, lineno, key));
    }
  }
  return out;
}

Settings read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_settings(text.str(), path);
}

std::string config_hash(const Settings& settings) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [k, v] : settings) feed(k + "=" + v + "\n");
  return fmt::format("{:016x}", h);
}

double get_double(const Settings& s, const std::string& key) {
  const std::string& v = lookup(s, key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::logic_error&) {
    throw UsageError("setting '" + key + "': not a number: '" + v + "'");
  }
}

int get_int(const Settings& s, const std::string& key) {
  const std::string& v = lookup(s, key);
  try {
    std::size_t used = 0;
    const int i = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::logic_error&) {
    throw UsageError("setting '" + key + "': not an integer: '" + v + "'");
  }
}

}  // namespace sigmaflow::cli
