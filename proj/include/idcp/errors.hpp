#pragma once

#include <stdexcept>
#include <string>

namespace idcp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Mesh construction / validation
struct NonManifoldError : Error { using Error::Error; };
struct DisconnectedError : Error { using Error::Error; };
struct DegenerateFaceError : Error { using Error::Error; };
struct EmptyOrFullSubsetError : Error { using Error::Error; };

// Metric data
struct NonPositiveRadiusError : Error { using Error::Error; };
struct NonPositiveLengthError : Error { using Error::Error; };
struct NotInOmegaError : Error { using Error::Error; };

// Numerics
struct QuadratureFailureError : Error { using Error::Error; };
struct NonFiniteStateError : Error { using Error::Error; };
struct LineSearchFailureError : Error { using Error::Error; };
struct MaxIterationsError : Error { using Error::Error; };
struct InsufficientTailError : Error { using Error::Error; };
struct SubsetBudgetExceededError : Error { using Error::Error; };

// IO / CLI
struct InvalidInputError : Error { using Error::Error; };

}  // namespace idcp
