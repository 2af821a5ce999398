// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The veriphrase Authors

#pragma once

#include <stdexcept>
#include <string>

namespace veriphrase {

/// Bad input data or configuration (CLI exit code 1).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numeric failure: invalid simplex, non-finite loss, etc. (CLI exit code 2).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace veriphrase
