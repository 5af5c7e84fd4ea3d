#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpoisson {

/// Exact rational scalar used everywhere in the library.
using Q = mpq_class;

/// Error categories raised by the library. The CLI maps them to exit codes.
enum class ErrorKind {
  NotASubspace,
  NotAComplex,
  MixedAlgebras,
  InfiniteSlice,
  InvalidCoalgebra,
  DegenerateForm,
  NotACycle,
  Parse,
  Usage,
};

inline const char *error_kind_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::NotASubspace: return "NotASubspace";
  case ErrorKind::NotAComplex: return "NotAComplex";
  case ErrorKind::MixedAlgebras: return "MixedAlgebras";
  case ErrorKind::InfiniteSlice: return "InfiniteSlice";
  case ErrorKind::InvalidCoalgebra: return "InvalidCoalgebra";
  case ErrorKind::DegenerateForm: return "DegenerateForm";
  case ErrorKind::NotACycle: return "NotACycle";
  case ErrorKind::Parse: return "Parse";
  case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

class AlgebraError : public std::runtime_error {
public:
  AlgebraError(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

/// (-1)^e as an int.
constexpr int parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

/// Parses "p", "-p", "p/q". Throws AlgebraError(Parse) on malformed input.
inline Q parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty())
    throw AlgebraError(ErrorKind::Parse, "empty rational literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_slash = false;
  bool digit_before = false, digit_after = false;
  for (std::size_t i = start; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/' && !seen_slash) {
      seen_slash = true;
    } else if (c >= '0' && c <= '9') {
      (seen_slash ? digit_after : digit_before) = true;
    } else {
      throw AlgebraError(ErrorKind::Parse, "bad rational literal '" + s + "'");
    }
  }
  if (!digit_before || (seen_slash && !digit_after))
    throw AlgebraError(ErrorKind::Parse, "bad rational literal '" + s + "'");
  if (s[0] == '+')
    s.erase(0, 1);
  Q q(s);
  if (q.get_den() == 0)
    throw AlgebraError(ErrorKind::Parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Q &q) { return q.get_str(); }

} // namespace dpoisson
