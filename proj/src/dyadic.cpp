#include "ngstrat/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ngstrat {
namespace {

// Fixed-point big number: limb 0 is the integer part, the rest are fraction
// limbs, most significant first.
using Wide = std::vector<std::uint64_t>;

void sub_in_place(Wide& a, const Wide& b) {
  std::uint64_t borrow = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    const unsigned __int128 lhs = a[i];
    const unsigned __int128 rhs = static_cast<unsigned __int128>(b[i]) + borrow;
    borrow = lhs < rhs ? 1 : 0;
    a[i] = static_cast<std::uint64_t>(lhs - rhs);
  }
}

void add_in_place(Wide& a, const Wide& b) {
  std::uint64_t carry = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    const unsigned __int128 sum = static_cast<unsigned __int128>(a[i]) + b[i] + carry;
    a[i] = static_cast<std::uint64_t>(sum);
    carry = static_cast<std::uint64_t>(sum >> 64);
  }
}

void mul_in_place(Wide& a, std::uint64_t factor) {
  std::uint64_t carry = 0;
  for (std::size_t i = a.size(); i-- > 0;) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a[i]) * factor + carry;
    a[i] = static_cast<std::uint64_t>(prod);
    carry = static_cast<std::uint64_t>(prod >> 64);
  }
  if (carry != 0) throw std::overflow_error("dyadic interpolation overflow");
}

void shift_right_in_place(Wide& a, unsigned bits) {
  const std::size_t limbs = bits / 64;
  const unsigned rem = bits % 64;
  for (std::size_t i = a.size(); i-- > 0;) {
    const std::uint64_t hi = i >= limbs ? a[i - limbs] : 0;
    const std::uint64_t lo = i >= limbs + 1 ? a[i - limbs - 1] : 0;
    a[i] = rem == 0 ? hi : (hi >> rem) | (lo << (64 - rem));
  }
}

}  // namespace

Dyadic Dyadic::fraction(std::uint64_t numerator, unsigned exponent) {
  if (exponent < 64 && numerator >> exponent != 0) {
    throw std::invalid_argument("dyadic numerator must be below 2^exponent");
  }
  if (exponent > 64) throw std::invalid_argument("use interpolate for exponents above 64");
  Dyadic d;
  if (numerator != 0) d.limbs_.push_back(exponent == 64 ? numerator : numerator << (64 - exponent));
  return d;
}

Dyadic Dyadic::interpolate(const Dyadic& low, const Dyadic* high, std::uint64_t index,
                           unsigned log2_parts) {
  if (log2_parts == 0 || log2_parts > 64 || index == 0 ||
      (log2_parts < 64 && index >> log2_parts != 0)) {
    throw std::invalid_argument("interpolation index out of range");
  }
  if (high != nullptr && !(low < *high)) throw std::invalid_argument("empty interval");

  const std::size_t frac =
      std::max(low.limbs_.size(), high ? high->limbs_.size() : 0) + (log2_parts + 63) / 64;
  Wide a(frac + 1, 0);
  Wide b(frac + 1, 0);
  for (std::size_t i = 0; i < low.limbs_.size(); ++i) a[i + 1] = low.limbs_[i];
  if (high) {
    for (std::size_t i = 0; i < high->limbs_.size(); ++i) b[i + 1] = high->limbs_[i];
  } else {
    b[0] = 1;
  }

  sub_in_place(b, a);
  mul_in_place(b, index);
  shift_right_in_place(b, log2_parts);
  add_in_place(a, b);

  Dyadic out;
  std::size_t last = a.size();
  while (last > 1 && a[last - 1] == 0) --last;
  out.limbs_.assign(a.begin() + 1, a.begin() + static_cast<std::ptrdiff_t>(last));
  return out;
}

Dyadic Dyadic::floor_to(unsigned bits) const {
  Dyadic out;
  const std::size_t keep = std::min<std::size_t>(limbs_.size(), (bits + 63) / 64);
  out.limbs_.assign(limbs_.begin(), limbs_.begin() + static_cast<std::ptrdiff_t>(keep));
  if (keep == (bits + 63) / 64 && bits % 64 != 0 && keep > 0) {
    out.limbs_.back() &= ~std::uint64_t{0} << (64 - bits % 64);
  }
  while (!out.limbs_.empty() && out.limbs_.back() == 0) out.limbs_.pop_back();
  return out;
}

std::optional<Dyadic> Dyadic::step_up(const Dyadic& aligned, unsigned bits) {
  if (bits == 0) return std::nullopt;
  Dyadic out = aligned;
  const std::size_t limb = (bits - 1) / 64;
  if (out.limbs_.size() < limb + 1) out.limbs_.resize(limb + 1, 0);
  std::uint64_t carry = std::uint64_t{1} << (63 - (bits - 1) % 64);
  for (std::size_t i = limb + 1; i-- > 0 && carry != 0;) {
    const std::uint64_t sum = out.limbs_[i] + carry;
    carry = sum < out.limbs_[i] ? 1 : 0;
    out.limbs_[i] = sum;
  }
  if (carry != 0) return std::nullopt;
  while (!out.limbs_.empty() && out.limbs_.back() == 0) out.limbs_.pop_back();
  return out;
}

unsigned Dyadic::exponent() const noexcept {
  if (limbs_.empty()) return 0;
  return static_cast<unsigned>(64 * limbs_.size() - std::countr_zero(limbs_.back()));
}

double Dyadic::to_double() const noexcept {
  double value = 0;
  double scale = 1;
  for (std::uint64_t limb : limbs_) {
    scale /= 18446744073709551616.0;
    value += static_cast<double>(limb) * scale;
  }
  return value;
}

std::string Dyadic::to_string() const {
  if (limbs_.empty()) return "0";
  const unsigned e = exponent();
  if (e < 64) {
    const std::uint64_t numerator = limbs_.front() >> (64 - e);
    return std::to_string(numerator) + "/" + std::to_string(std::uint64_t{1} << e);
  }
  std::string out = "0.";
  for (unsigned bit = 0; bit < e; ++bit) {
    out += ((limbs_[bit / 64] >> (63 - bit % 64)) & 1u) ? '1' : '0';
  }
  return out;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) noexcept {
  const std::size_t n = std::min(a.limbs_.size(), b.limbs_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
  }
  return a.limbs_.size() <=> b.limbs_.size();
}

}  // namespace ngstrat
