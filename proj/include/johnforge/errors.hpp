#pragma once

#include <stdexcept>
#include <string>

namespace johnforge {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct InvalidInput : Error {
  using Error::Error;
};

// body
struct DegenerateHull : Error {
  using Error::Error;
};
struct OriginNotInterior : Error {
  using Error::Error;
};
struct AmbiguousNormal : Error {
  using Error::Error;
};
struct SingularTransform : Error {
  using Error::Error;
};
struct UnsupportedTransform : Error {
  using Error::Error;
};

// loewner
struct DegenerateInput : Error {
  using Error::Error;
};
struct MaxIterations : Error {
  using Error::Error;
};
struct TooFewContacts : Error {
  using Error::Error;
};

// lp
struct MaxPivots : Error {
  using Error::Error;
};

// isotropic
struct AllZeroWeights : Error {
  using Error::Error;
};
struct NonpositiveLambda : Error {
  using Error::Error;
};

// flow
struct QuadratureBudgetExceeded : Error {
  using Error::Error;
};
struct SingularDeformation : Error {
  using Error::Error;
};

}  // namespace johnforge
