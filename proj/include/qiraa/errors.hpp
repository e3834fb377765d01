#pragma once

#include <stdexcept>
#include <string>

namespace qiraa {

/// Problems with user-supplied data (files, labels, model versions).
/// The CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// Misuse of the command line itself. Exit code 1.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qiraa
