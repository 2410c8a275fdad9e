#pragma once

// Reproducibility record written next to every set of output files.

#include <string>
#include <vector>

#include "sigmaflow_cli/config.hpp"

namespace sigmaflow::cli {

struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string config_hash;
  Settings config;
  std::string started;   ///< ISO-8601 UTC
  std::string finished;  ///< ISO-8601 UTC
  std::vector<std::string> outputs;
  int exit_code = 0;
  std::string status;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

std::string to_json(const RunManifest& manifest);

/// Writes the manifest as JSON; throws std::runtime_error if the file cannot be written.
void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace sigmaflow::cli
