#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "absl/container/inlined_vector.h"

namespace ngstrat {

/// An exact dyadic rational in [0, 1).
///
/// Stored as the binary expansion after the point, 64 bits per limb, most
/// significant limb first, with no trailing zero limbs. Equal values have
/// identical representations, so comparison is lexicographic on limbs.
class Dyadic {
 public:
  Dyadic() = default;

  /// numerator / 2^exponent; requires numerator < 2^exponent.
  static Dyadic fraction(std::uint64_t numerator, unsigned exponent);

  /// The point splitting the interval between `low` and `high` into
  /// 2^log2_parts equal parts, at the given index (0 < index < 2^log2_parts).
  /// `high == nullptr` stands for 1. Requires low < high.
  static Dyadic interpolate(const Dyadic& low, const Dyadic* high, std::uint64_t index,
                            unsigned log2_parts);

  /// (low + high) / 2, `high == nullptr` meaning 1.
  static Dyadic midpoint(const Dyadic& low, const Dyadic* high) {
    return interpolate(low, high, 1, 1);
  }

  /// Largest multiple of 2^-bits not above this value.
  [[nodiscard]] Dyadic floor_to(unsigned bits) const;

  /// aligned + 2^-bits, or nullopt when that sum is 1. `aligned` must be a
  /// multiple of 2^-bits.
  static std::optional<Dyadic> step_up(const Dyadic& aligned, unsigned bits);

  [[nodiscard]] bool is_zero() const noexcept { return limbs_.empty(); }

  /// Smallest k such that the value is l / 2^k for an integer l.
  [[nodiscard]] unsigned exponent() const noexcept;

  [[nodiscard]] double to_double() const noexcept;

  /// "0", "3/4", or for exponents beyond 64 bits "0.b1b2...bk" in binary.
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) noexcept;

 private:
  absl::InlinedVector<std::uint64_t, 2> limbs_;
};

}  // namespace ngstrat
