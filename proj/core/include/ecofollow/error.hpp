#pragma once

#include <stdexcept>
#include <string>

namespace ecofollow {

// Base of every exception thrown by the library. The CLI maps the concrete
// type onto a process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Required input column or field is absent.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Input values violate a data invariant (non-uniform timestep, negative speed).
class DataError : public Error {
 public:
  using Error::Error;
};

// Caller passed an argument outside the documented domain.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Non-finite value where a finite one is required.
class NumericError : public Error {
 public:
  using Error::Error;
};

class FitError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

// Malformed configuration, or network shapes that do not chain.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Policy or coefficient file could not be read back.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Non-finite loss or gradient during training. Carries episode/step context.
class TrainingError : public Error {
 public:
  TrainingError(const std::string& what, int episode, long step)
      : Error(what + " (episode " + std::to_string(episode) + ", step " +
              std::to_string(step) + ")"),
        episode_(episode),
        step_(step) {}

  int episode() const { return episode_; }
  long step() const { return step_; }

 private:
  int episode_;
  long step_;
};

}  // namespace ecofollow
