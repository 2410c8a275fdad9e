#include "sigmaflow/version.hpp"

#include <Eigen/Core>
#include <gsl/gsl_version.h>

namespace sigmaflow {

const char* version() noexcept { return SIGMAFLOW_VERSION; }

std::string eigen_version() {
  return std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
         std::to_string(EIGEN_MINOR_VERSION);
}

std::string gsl_version() { return ::gsl_version; }

}  // namespace sigmaflow
