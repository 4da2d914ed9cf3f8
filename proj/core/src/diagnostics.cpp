#include "tptpnc/diagnostics.hpp"

namespace tptpnc {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IncludeError: return "IncludeError";
    case ErrorKind::UnknownLogicName: return "UnknownLogicName";
    case ErrorKind::UnknownProperty: return "UnknownProperty";
    case ErrorKind::UnknownValue: return "UnknownValue";
    case ErrorKind::MissingLogicSpec: return "MissingLogicSpec";
    case ErrorKind::DuplicateLogicSpec: return "DuplicateLogicSpec";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::BadOverrideKey: return "BadOverrideKey";
    case ErrorKind::ConnectiveNotInFamily: return "ConnectiveNotInFamily";
    case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorKind::TypeError: return "TypeError";
    case ErrorKind::UninterpretedSymbol: return "UninterpretedSymbol";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Error";
}

std::string format_diagnostic(std::string_view file, const Error& e) {
  std::string out(file);
  out += ':' + std::to_string(e.pos().line) + ':' + std::to_string(e.pos().column) + ": ";
  out += error_kind_name(e.kind());
  out += ": ";
  out += e.message();
  return out;
}

}  // namespace tptpnc
