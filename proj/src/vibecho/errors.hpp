#pragma once

#include <stdexcept>
#include <string>

namespace vibecho {

// Base of everything the library throws on bad input or failed numerics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters, schedules or configurations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A grid too small for the wavefunction it has to hold.
class GridError : public Error {
 public:
  using Error::Error;
};

// Propagation failed or left its validity window.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A time or argument outside the window an operation is defined on.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace vibecho
