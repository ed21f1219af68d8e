#pragma once

#include <stdexcept>
#include <string>

namespace burstkit {

// Bad input: parameters outside the model's domain, malformed files, range errors.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical procedure failed to meet its tolerance or exceeded a resource cap.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace burstkit
