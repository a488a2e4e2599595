#pragma once

#include <stdexcept>
#include <string>

namespace ideoforge {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid arguments or violated preconditions.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Filesystem failures; message carries the path.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed records, unparseable judge output, bad config.
class ParseError : public Error {
public:
    using Error::Error;
};

// Provider-side failures.
class ProviderError : public Error {
public:
    using Error::Error;
};

// Transient transport failure that survived all retries.
class TransportError : public ProviderError {
public:
    using ProviderError::ProviderError;
};

// Non-retryable provider rejection (auth, bad request, ...).
class PermanentError : public ProviderError {
public:
    using ProviderError::ProviderError;
};

}  // namespace ideoforge
