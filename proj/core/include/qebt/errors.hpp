#ifndef QEBT_ERRORS_HPP
#define QEBT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qebt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input channel is not trace preserving or otherwise malformed.
struct InvalidChannel : Error {
  using Error::Error;
};

// Operation requires a completely positive input.
struct NotCP : Error {
  using Error::Error;
};

// |t3| + |lambda3| >= 1: the contraction-matrix denominators vanish and the
// caller must fall back to the Choi eigenvalue route.
struct DegenerateEdge : Error {
  using Error::Error;
};

// ||U|| > 1 passed where a contraction is required.
struct NotContraction : Error {
  using Error::Error;
};

// A Holevo ensemble violates one of its invariants; message names which.
struct InvalidEnsemble : Error {
  using Error::Error;
};

// Requested CQ channel violates the line-image realizability bound.
struct NotRealizable : Error {
  using Error::Error;
};

// POVM element fails positivity or completeness.
struct InvalidPovm : Error {
  using Error::Error;
};

// Input channel is not entanglement breaking.
struct NotEBT : Error {
  using Error::Error;
};

// Convex fit residual stayed above tolerance after retries.
struct FitFailed : Error {
  using Error::Error;
};

// Boundary tracing needs a completely positive channel at the ray origin.
struct OriginNotCP : Error {
  using Error::Error;
};

// Split requested for a generalized extreme map.
struct IsExtreme : Error {
  using Error::Error;
};

}  // namespace qebt

#endif
