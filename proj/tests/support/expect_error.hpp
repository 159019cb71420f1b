#pragma once

#include <functional>

#include "doctest.h"
#include "gweave/error.hpp"

inline gweave::ErrorKind error_kind(const std::function<void()>& f) {
  try {
    f();
  } catch (const gweave::Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return gweave::ErrorKind::SchemaError;
}
