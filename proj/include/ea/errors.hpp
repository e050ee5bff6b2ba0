#pragma once

#include <stdexcept>
#include <string>

namespace ea {

/// Invalid user-supplied setting: bad option value, unknown problem code,
/// incompatible string size, duplicate registration, and the like.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Filesystem failure while emitting run or statistics files.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace ea
