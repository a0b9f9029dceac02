#include "paraprod/sequence.hpp"

namespace paraprod {

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::parity_shift: return "parity_shift";
    case SequenceKind::modulated: return "modulated";
    case SequenceKind::constant: return "constant";
    case SequenceKind::basis_walk: return "basis_walk";
  }
  return "unknown";
}

std::optional<SequenceKind> parse_sequence_kind(std::string_view name) {
  if (name == "parity_shift") return SequenceKind::parity_shift;
  if (name == "modulated") return SequenceKind::modulated;
  if (name == "constant") return SequenceKind::constant;
  if (name == "basis_walk") return SequenceKind::basis_walk;
  return std::nullopt;
}

}  // namespace paraprod
