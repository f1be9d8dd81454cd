#pragma once

#include <stdexcept>

namespace scriptorium {

/// Base type for every error the library raises on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Bad input data or configuration. The CLI maps this to exit code 1.
struct InputError : Error {
  using Error::Error;
};

/// A broken internal assumption. The CLI maps this to exit code 2.
struct InvariantError : Error {
  using Error::Error;
};

}  // namespace scriptorium
