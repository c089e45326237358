// Copyright (c) 2026 The casec authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace casec {

/// Broad failure class, used by the CLI to pick an exit code:
/// InvalidInput -> 2, NotConverged -> 3.
enum class ErrorKind { InvalidInput, NotConverged };

/// All library errors carry a stable short name (e.g. "GeometryOverlap")
/// that tests and the CLI match on, independent of the message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const { return kind_; }
  const std::string& name() const { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

[[noreturn]] inline void throw_invalid(std::string name, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, std::move(name), what);
}

[[noreturn]] inline void throw_not_converged(std::string name, const std::string& what) {
  throw Error(ErrorKind::NotConverged, std::move(name), what);
}

}  // namespace casec
