// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The todolens Authors

#pragma once

#include <stdexcept>
#include <string>

namespace todolens {

// Base of every exception thrown by the library. The CLI maps UsageError to
// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent input data (schema violations, missing commits).
class DataError : public Error {
public:
    using Error::Error;
};

class NotARepositoryError : public DataError {
public:
    using DataError::DataError;
};

class GitError : public DataError {
public:
    using DataError::DataError;
};

// Precondition violations on library calls (empty samples, bad k, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ProtocolError : public Error {
public:
    using Error::Error;
};

class TimeoutError : public ProtocolError {
public:
    using ProtocolError::ProtocolError;
};

class BrokenPipeError : public ProtocolError {
public:
    using ProtocolError::ProtocolError;
};

} // namespace todolens
