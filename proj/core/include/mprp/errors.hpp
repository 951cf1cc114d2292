#pragma once

#include <stdexcept>
#include <string>

namespace mprp {

/// Invalid data or violated model invariant (bad instance, malformed file,
/// inconsistent solution). Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem too large for an exact method. Maps to CLI exit code 3.
class LimitError : public std::runtime_error {
public:
    explicit LimitError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mprp
