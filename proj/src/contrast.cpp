#include "catreg/contrast.hpp"

namespace catreg {

std::string_view to_string(ContrastKind kind) {
  switch (kind) {
    case ContrastKind::Treatment: return "treatment";
    case ContrastKind::Effect: return "effect";
    case ContrastKind::WeightedEffect: return "weighted";
  }
  return "treatment";
}

std::optional<ContrastKind> parse_contrast_kind(std::string_view text) {
  if (text == "treatment" || text == "dummy") return ContrastKind::Treatment;
  if (text == "effect") return ContrastKind::Effect;
  if (text == "weighted" || text == "weighted-effect") return ContrastKind::WeightedEffect;
  return std::nullopt;
}

}  // namespace catreg
