#include "photohdc/common.hpp"

#include <cctype>

namespace photohdc {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::Traditional: return "traditional";
    case Scheme::Record: return "record";
    case Scheme::Graph: return "graph";
  }
  return "?";
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Training: return "train";
    case Mode::Inference: return "infer";
    case Mode::Combined: return "combined";
  }
  return "?";
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return out;
}

Scheme parse_scheme(std::string_view text) {
  const std::string s = to_lower(text);
  if (s == "traditional") return Scheme::Traditional;
  if (s == "record") return Scheme::Record;
  if (s == "graph") return Scheme::Graph;
  throw ParameterError("unknown scheme '" + std::string(text) + "'");
}

Mode parse_mode(std::string_view text) {
  const std::string s = to_lower(text);
  if (s == "train" || s == "training") return Mode::Training;
  if (s == "infer" || s == "inference") return Mode::Inference;
  if (s == "combined") return Mode::Combined;
  throw ParameterError("unknown mode '" + std::string(text) + "'");
}

}  // namespace photohdc
