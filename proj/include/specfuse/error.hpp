// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The specfuse Authors

#pragma once

#include <stdexcept>
#include <string>

namespace specfuse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed file contents (bad magic, truncated header, unsupported encoding).
class FormatError : public Error {
public:
    using Error::Error;
};

/// Dimension products that overflow or disagree with the payload.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Filesystem or stream failure; message carries the offending path.
class IoError : public Error {
public:
    using Error::Error;
};

/// Argument outside an operation's precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Operation applied to an object in the wrong state (e.g. centering twice).
class StateError : public Error {
public:
    using Error::Error;
};

/// A numerical self-check failed (e.g. non-negligible imaginary residue).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// A user-supplied callback broke its contract.
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace specfuse
