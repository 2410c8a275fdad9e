#pragma once

#include <string>

namespace sigmaflow {

/// Library version, "major.minor.patch".
const char* version() noexcept;

/// Versions of the numerical dependencies the library was built against.
std::string eigen_version();
std::string gsl_version();

}  // namespace sigmaflow
