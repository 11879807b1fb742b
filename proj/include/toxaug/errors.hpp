#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toxaug {

// Exit codes used by the CLI. Library code throws; the tool maps exceptions
// onto these.
enum class ExitCode : int {
    ok = 0,
    failure = 1,
    config = 2,
    io = 3,
    backend_ceiling = 4,
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Invalid or out-of-bounds configuration, rejected before any work starts.
class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

// Malformed record in a line-delimited input.
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t line_number)
        : Error("line " + std::to_string(line_number) + ": " + message), line_number_(line_number) {}

    std::size_t line_number() const { return line_number_; }

  private:
    std::size_t line_number_;
};

// Precondition or invariant violation inside the pipeline.
class ContractError : public Error {
  public:
    using Error::Error;
};

// Per-sample scoring failure (recorded in the failure ledger).
class BackendError : public Error {
  public:
    using Error::Error;
};

// Text exceeds the backend's request size cap; raised before any request.
class OversizeError : public BackendError {
  public:
    using BackendError::BackendError;
};

// Backend answered but the response violates the wire contract.
class ProtocolError : public BackendError {
  public:
    using BackendError::BackendError;
};

// Scoring-run failure fraction exceeded the configured ceiling.
class CeilingError : public Error {
  public:
    using Error::Error;
};

} // namespace toxaug
