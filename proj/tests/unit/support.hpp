// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "doctest.h"
#include "error.hpp"

#define CHECK_ERROR(expr, code_)                                        \
  do {                                                                  \
    try {                                                               \
      (void)(expr);                                                     \
      FAIL_CHECK("expected " #code_ " from " #expr);                   \
    } catch (const glsreg::Error& e) {                                  \
      CHECK_MESSAGE(e.code() == glsreg::ErrorCode::code_, e.what());    \
    }                                                                   \
  } while (0)

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}
