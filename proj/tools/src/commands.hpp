#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace sigmaflow::cli {

struct Io {
  std::ostream& out;
  std::ostream& err;
  std::vector<std::string> arguments;
};

/// Each registrar adds its subcommands and stores the exit code of the one
/// that runs in `*code`.
void register_sigma(CLI::App& app, Io& io, int* code);
void register_flow(CLI::App& app, Io& io, int* code);
void register_family(CLI::App& app, Io& io, int* code);

}  // namespace sigmaflow::cli
