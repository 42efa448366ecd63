#pragma once

#include <stdexcept>
#include <string>

namespace rage {

// Base class for every error this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem-level failures: missing files, short writes.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed uncompressed image input (PPM/PAM).
class FormatError : public Error {
public:
    enum class Kind { malformed_header, truncated_data, unsupported_depth };

    FormatError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Corrupt or inconsistent compressed data.
class CorruptError : public Error {
public:
    enum class Kind {
        bad_magic,
        bad_version,
        bad_header_field,
        length_mismatch,
        stream_overrun,
        coverage_mismatch,
        bad_base_id,
        offset_mismatch,
    };

    CorruptError(Kind kind, const std::string& msg) : Error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Out-of-range coordinates or query rectangles.
class BoundsError : public Error {
public:
    using Error::Error;
};

// API misuse: invalid parameter values, broken preconditions.
class ArgumentError : public Error {
public:
    using Error::Error;
};

}  // namespace rage
