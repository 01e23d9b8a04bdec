#pragma once

#include <stdexcept>
#include <string>

namespace paley {

// Caller supplied something outside an operation's domain.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An object cannot be built for this prime (wrong congruence class).
class construction_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive work would exceed the configured budget; rerun in sampled mode.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A witness failed its certificate check.
class certificate_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace paley
