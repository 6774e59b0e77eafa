// Errors raised by the translation pipeline stages.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lfmt {

enum class PipelineErrorKind { token_unknown, no_parse, missing_sign, realization_gap, no_base_entry };

inline std::string_view to_string(PipelineErrorKind k) {
  switch (k) {
    case PipelineErrorKind::token_unknown: return "TokenUnknown";
    case PipelineErrorKind::no_parse: return "NoParse";
    case PipelineErrorKind::missing_sign: return "MissingSign";
    case PipelineErrorKind::realization_gap: return "RealizationGap";
    case PipelineErrorKind::no_base_entry: return "NoBaseEntry";
  }
  return "?";
}

class PipelineError : public std::runtime_error {
 public:
  PipelineError(PipelineErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  PipelineErrorKind kind() const { return kind_; }

 private:
  PipelineErrorKind kind_;
};

}  // namespace lfmt
