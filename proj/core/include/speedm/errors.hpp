// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace speedm {

/// Curve is not of bounded variation on the requested interval
/// (running variation exceeded the blow-up bound).
struct NotBvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numeric self-inconsistency, e.g. the absolutely continuous density
/// overshoots the measure of a cell by more than the allowed noise.
struct InconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed curve-spec file or unknown identifier in it.
struct SpecParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace speedm
