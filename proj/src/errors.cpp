#include "entb/errors.hpp"

#include <cstdio>

namespace entb {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::WeightSumError: return "WeightSumError";
    case ErrorKind::BadBasis: return "BadBasis";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotLOO: return "NotLOO";
    case ErrorKind::UnknownParam: return "UnknownParam";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::Diagnostics: return "Diagnostics";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Io: return "IoError";
  }
  return "Unknown";
}

bool is_domain_error(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian:
    case ErrorKind::TraceNotOne:
    case ErrorKind::NotPSD:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::NotNormalized:
    case ErrorKind::WeightSumError:
    case ErrorKind::NotLOO:
    case ErrorKind::Diagnostics:
      return true;
    default:
      return false;
  }
}

std::string format_magnitude(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  std::string s = buf;
  const auto e = s.find('e');
  if (e == std::string::npos) return s;  // inf, nan
  std::size_t digits = e + 2;
  while (digits + 1 < s.size() && s[digits] == '0') s.erase(digits, 1);
  if (s[e + 1] == '+') s.erase(e + 1, 1);
  return s;
}

}  // namespace entb
