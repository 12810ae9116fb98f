#ifndef UQCAL_ERRORS_HPP
#define UQCAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace uqcal {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad input: unreadable files, schema mismatches, invalid values,
// malformed configuration. Maps to CLI exit code 2.
class InputError : public Error {
public:
    explicit InputError(const std::string& msg) : Error(msg) {}
};

// A computation that cannot proceed on otherwise valid input:
// degenerate partitions, undefined statistics, failed fits.
// Maps to CLI exit code 4.
class AnalysisError : public Error {
public:
    explicit AnalysisError(const std::string& msg) : Error(msg) {}
};

} // namespace uqcal

#endif
