/**
 * @file sequence.hpp
 * @brief Descriptions of test sequences (x_n, y_n) fed to bilinear operators.
 */

#ifndef PARAPROD_SEQUENCE_HPP_INCLUDED_
#define PARAPROD_SEQUENCE_HPP_INCLUDED_

#include <optional>
#include <string>
#include <string_view>

namespace paraprod {

enum class SequenceKind {
  parity_shift,  ///< x_n = e_n x0, y_n = e_{-n+p(n)} y0, p(n) = n mod 2
  modulated,     ///< the modulated slots carry e_n times their base
  constant,      ///< x_n = x0, y_n = y0
  basis_walk,    ///< x_n = y_n = delta^n (coefficient-space operators only)
};

/// Which input slots a modulated sequence shifts.
enum class Slots { first, second, both };

struct SequenceSpec {
  SequenceKind kind = SequenceKind::modulated;
  Slots slots = Slots::first;
  long first_index = 1;  ///< n runs over first_index..n_max

  static SequenceSpec parity_shift() { return {SequenceKind::parity_shift, Slots::both, 1}; }
  static SequenceSpec modulated(Slots s) { return {SequenceKind::modulated, s, 1}; }
  static SequenceSpec constant() { return {SequenceKind::constant, Slots::both, 1}; }
  static SequenceSpec basis_walk() { return {SequenceKind::basis_walk, Slots::both, 1}; }
};

/// Parity of n: 1 for odd, 0 for even.
constexpr long parity(long n) noexcept { return n % 2 == 0 ? 0 : 1; }

std::string to_string(SequenceKind kind);
std::optional<SequenceKind> parse_sequence_kind(std::string_view name);

}  // namespace paraprod

#endif  // PARAPROD_SEQUENCE_HPP_INCLUDED_
