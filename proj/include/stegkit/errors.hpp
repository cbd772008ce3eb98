#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stegkit {

// Base class for every domain error the toolkit raises. The CLI maps these
// to exit code 1 (ConfigError to 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BadMagic : public Error {
public:
    using Error::Error;
};

class Truncated : public Error {
public:
    using Error::Error;
};

class UnsupportedVersion : public Error {
public:
    using Error::Error;
};

class InsufficientCapacity : public Error {
public:
    InsufficientCapacity(std::uint64_t required_bits, std::uint64_t available_bits)
        : Error("insufficient capacity: payload needs " + std::to_string(required_bits) +
                " bits, cover holds " + std::to_string(available_bits) + " bits"),
          required_bits(required_bits),
          available_bits(available_bits) {}

    std::uint64_t required_bits;
    std::uint64_t available_bits;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

class ImageTooSmall : public Error {
public:
    using Error::Error;
};

class UnsupportedFormat : public Error {
public:
    using Error::Error;
};

class CorruptFile : public Error {
public:
    using Error::Error;
};

class ZeroDimension : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

class MissingCounterpart : public Error {
public:
    using Error::Error;
};

// Bad bench config file or other misuse of the tool's own inputs.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace stegkit
