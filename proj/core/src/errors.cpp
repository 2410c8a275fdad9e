#include "sigmaflow/errors.hpp"

namespace sigmaflow {

ConeViolation::ConeViolation(const std::string& what, double min_sigma1, double location)
    : std::runtime_error(what), min_sigma1_(min_sigma1), location_(location) {}

EvaluationError::EvaluationError(const std::string& what, double location)
    : std::runtime_error(what), location_(location) {}

}  // namespace sigmaflow
