#pragma once

#include <gtest/gtest.h>

#include "psi/errors.hpp"

namespace psi::testing {

/// Kind of the psi::Error thrown by `fn`; records a test failure if none is.
inline ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InternalInvariantViolation;
}

}  // namespace psi::testing
