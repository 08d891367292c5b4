#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace photohdc {

enum class Scheme { Traditional, Record, Graph };
enum class Mode { Training, Inference, Combined };

// Invalid dimensions, mismatched inputs, out-of-range arguments.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files. `line` is 1-based, 0 when not applicable.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

std::string_view to_string(Scheme s);
std::string_view to_string(Mode m);
// Parsers accept any letter case.
Scheme parse_scheme(std::string_view s);
Mode parse_mode(std::string_view s);

std::string to_lower(std::string_view s);

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return (a + b - 1) / b;
}

// Round half away from zero, as integer.
inline std::int64_t round_half_away(double v) {
  return static_cast<std::int64_t>(std::round(v));
}

}  // namespace photohdc
