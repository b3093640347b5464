#pragma once

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "zapledger/errors.hpp"

#define EXPECT_ZAP_ERROR(stmt, expected)                                   \
  do {                                                                     \
    try {                                                                  \
      stmt;                                                                \
      ADD_FAILURE() << "expected " << ::zapledger::to_string(expected);    \
    } catch (const ::zapledger::Error& e) {                                \
      EXPECT_EQ(e.code(), expected) << e.what();                           \
    }                                                                      \
  } while (0)

inline std::filesystem::path source_path(const std::string& rel) {
  return std::filesystem::path(ZAPLEDGER_SOURCE_DIR) / rel;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("zapledger_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}
