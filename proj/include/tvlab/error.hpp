#pragma once

#include <stdexcept>
#include <string>

namespace tvlab {

/// Raised for malformed or inconsistent caller input.
class InputError : public std::invalid_argument
{
public:
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computed certificate or witness failed its own re-verification.
/// Seeing one of these means a bug in the library, not in the input.
class InternalError : public std::logic_error
{
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// An enumeration would exceed the configured size cap.
class SizeCapExceeded : public std::runtime_error
{
public:
    explicit SizeCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tvlab
