#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "zapledger/errors.hpp"

namespace zapledger {

/// 20-byte account address, rendered as lowercase hex with a 0x prefix.
class AccountId {
 public:
  static constexpr std::size_t kSize = 20;
  using Bytes = std::array<std::uint8_t, kSize>;

  constexpr AccountId() = default;
  constexpr explicit AccountId(const Bytes& bytes) : bytes_(bytes) {}

  static AccountId from_hex(std::string_view hex);
  /// The reserved utility account: nineteen zero bytes followed by 0x01.
  static AccountId utility();
  /// Deterministic household address for simulator ordinal `ordinal`.
  static AccountId for_household(std::uint32_t ordinal);

  std::string to_hex() const;
  const Bytes& bytes() const noexcept { return bytes_; }

  auto operator<=>(const AccountId&) const = default;

 private:
  Bytes bytes_{};
};

/// Token ids are assigned sequentially from 1; 0 never names a minted token.
struct TokenId {
  std::uint64_t value = 0;

  constexpr bool valid() const noexcept { return value != 0; }
  auto operator<=>(const TokenId&) const = default;
};

namespace detail {
constexpr std::int64_t pow10(int n) {
  std::int64_t r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}
std::int64_t parse_fixed(std::string_view text, int decimals);
std::string format_fixed(std::int64_t raw, int decimals);
}  // namespace detail

// Signed fixed-point decimal with `Decimals` fractional digits. Serialized as a
// string with exactly `Decimals` places so no floating point ever touches
// metadata bytes.
template <int Decimals, class Tag>
class Fixed {
 public:
  static constexpr int kDecimals = Decimals;
  static constexpr std::int64_t kScale = detail::pow10(Decimals);

  constexpr Fixed() = default;
  static constexpr Fixed from_raw(std::int64_t raw) {
    Fixed f;
    f.raw_ = raw;
    return f;
  }
  static constexpr Fixed from_units(std::int64_t whole) { return from_raw(whole * kScale); }
  static Fixed parse(std::string_view text) {
    return from_raw(detail::parse_fixed(text, Decimals));
  }

  constexpr std::int64_t raw() const noexcept { return raw_; }
  std::string to_string() const { return detail::format_fixed(raw_, Decimals); }
  double to_double() const { return static_cast<double>(raw_) / static_cast<double>(kScale); }

  auto operator<=>(const Fixed&) const = default;

  constexpr Fixed& operator+=(Fixed o) {
    raw_ += o.raw_;
    return *this;
  }
  constexpr Fixed& operator-=(Fixed o) {
    raw_ -= o.raw_;
    return *this;
  }
  constexpr Fixed operator-() const { return from_raw(-raw_); }
  friend constexpr Fixed operator+(Fixed a, Fixed b) { return a += b; }
  friend constexpr Fixed operator-(Fixed a, Fixed b) { return a -= b; }

 private:
  std::int64_t raw_ = 0;
};

using Kwh = Fixed<3, struct KwhTag>;
using Kw = Fixed<3, struct KwTag>;
using Degrees = Fixed<6, struct DegreesTag>;

/// round-half-up(energy × unit price) in integer cents.
std::uint64_t value_cents(Kwh energy, std::uint64_t cents_per_kwh);

}  // namespace zapledger
