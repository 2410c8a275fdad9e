#include "sigmaflow_cli/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "sigmaflow/version.hpp"

namespace sigmaflow::cli {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["command"] = m.command;
  j["arguments"] = m.arguments;
  j["config_hash"] = m.config_hash;
  j["config"] = m.config;
  j["versions"] = {{"sigmaflow", version()},
                   {"eigen", eigen_version()},
                   {"gsl", gsl_version()},
                   {"compiler", __VERSION__}};
  j["started"] = m.started;
  j["finished"] = m.finished;
  j["outputs"] = m.outputs;
  j["status"] = m.status;
  j["exit_code"] = m.exit_code;
  return j.dump(2) + "\n";
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write manifest '" + path + "'");
  out << to_json(manifest);
}

}  // namespace sigmaflow::cli
