#pragma once

#include <stdexcept>

namespace cooccur {

// Invalid configuration: bad flags, missing files, out-of-range parameters.
// CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data. CLI maps this to exit code 3.
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace cooccur
