#pragma once

#include <doctest.h>

#include "miquel/error.hpp"
#include "miquel/geometry.hpp"

namespace support {

inline bool near(miquel::Point2 p, miquel::Point2 q, double tol) { return miquel::distance(p, q) <= tol; }

// Code of the miquel::Error thrown by f; fails the test when nothing is thrown.
template <class F>
miquel::ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const miquel::Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return miquel::ErrorCode::Io;
}

}  // namespace support
