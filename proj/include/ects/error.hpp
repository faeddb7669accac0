#pragma once

#include <stdexcept>
#include <string>

namespace ects {

// Base of every error the library throws. The CLI maps the subclasses onto
// process exit codes (config 1, data 2, numeric 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (index out of range, t outside
// [1, T], empty input where one is required).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

// A file could not be read or written. The CLI reports it with the data code.
class IoError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace ects
