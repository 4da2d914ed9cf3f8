// Error types shared by all passes and the one-line diagnostic format.

#ifndef TPTPNC_DIAGNOSTICS_HPP_
#define TPTPNC_DIAGNOSTICS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

#include "tptpnc/ast.hpp"

namespace tptpnc {

enum class ErrorKind {
  ParseError,
  IncludeError,
  UnknownLogicName,
  UnknownProperty,
  UnknownValue,
  MissingLogicSpec,
  DuplicateLogicSpec,
  BadIndex,
  BadOverrideKey,
  ConnectiveNotInFamily,
  UnsupportedConstruct,
  TypeError,
  UninterpretedSymbol,
  ResourceLimit,
  InternalError,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, SourcePos pos, std::string message)
      : std::runtime_error(message), kind_(kind), pos_(pos), message_(std::move(message)) {}

  ErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
  std::string message_;
};

// Lexical and syntactic errors. `expected` lists what the parser could accept.
class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string expected, std::string found, std::string message)
      : Error(ErrorKind::ParseError, pos, std::move(message)),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string expected_;
  std::string found_;
};

// Logic specification and problem-level semantic errors.
class SpecError : public Error {
 public:
  using Error::Error;
};

// Constructs the embedding or the oracle cannot handle.
class EmbedError : public Error {
 public:
  using Error::Error;
};

// State space or ground size exceeded a configured cap.
class ResourceError : public Error {
 public:
  explicit ResourceError(std::string message) : Error(ErrorKind::ResourceLimit, {}, std::move(message)) {}
};

// FILE:LINE:COL: EKIND: message
std::string format_diagnostic(std::string_view file, const Error& e);

}  // namespace tptpnc

#endif  // TPTPNC_DIAGNOSTICS_HPP_
