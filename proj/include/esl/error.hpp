#pragma once

#include <stdexcept>
#include <string>

namespace esl {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument or violated call precondition.
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(what) {}
};

/// Malformed file or stream contents (bad magic, bad header, bad PGM, ...).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(what) {}
};

/// Filesystem-level failure, with the offending path in the message.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

/// Entropy-coded packet payload that cannot be decoded. This is how a
/// corrupted-but-present packet is flagged; the receiver treats it as lost.
class DecodeError : public Error {
public:
    explicit DecodeError(const std::string& what) : Error(what) {}
};

/// Coefficient magnitude outside the range the entropy coder can represent.
class EncodeError : public Error {
public:
    explicit EncodeError(const std::string& what) : Error(what) {}
};

} // namespace esl
