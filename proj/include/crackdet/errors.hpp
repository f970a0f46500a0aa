#pragma once

#include <stdexcept>
#include <string>

namespace crackdet {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent sidecar header / config file.
class FormatError : public Error {
public:
    using Error::Error;
};

/// Raw payload size does not match the header.
class SizeError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Box or index outside the volume domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid numeric parameter (sigma <= 0, infeasible mesh size, bad config value).
class ParameterError : public Error {
public:
    using Error::Error;
};

class PartitionError : public Error {
public:
    using Error::Error;
};

/// Mismatched inputs to evaluation routines.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace crackdet
