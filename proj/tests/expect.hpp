#pragma once

#include "tsflow/error.hpp"

#include <gtest/gtest.h>

// Asserts that `stmt` throws tsflow::Error with the given code.
#define EXPECT_ERRC(stmt, errc)                                                                \
  do {                                                                                         \
    try {                                                                                      \
      (void)(stmt);                                                                            \
      ADD_FAILURE() << #stmt " did not throw " #errc;                                          \
    } catch (const tsflow::Error &e_) {                                                        \
      EXPECT_EQ(e_.code(), tsflow::errc) << #stmt << ": " << e_.what();                        \
    }                                                                                          \
  } while (0)
