#include "zapledger/types.hpp"

#include <charconv>

namespace zapledger {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::self_approval: return "SelfApproval";
    case ErrorCode::length_mismatch: return "LengthMismatch";
    case ErrorCode::empty_batch: return "EmptyBatch";
    case ErrorCode::not_authorized: return "NotAuthorized";
    case ErrorCode::insufficient_balance: return "InsufficientBalance";
    case ErrorCode::non_positive_energy: return "NonPositiveEnergy";
    case ErrorCode::invariant_violation: return "InvariantViolation";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::hash_mismatch: return "HashMismatch";
    case ErrorCode::unexpected_payload: return "UnexpectedPayload";
    case ErrorCode::missing_payload: return "MissingPayload";
    case ErrorCode::not_owner: return "NotOwner";
    case ErrorCode::unknown_token: return "UnknownToken";
    case ErrorCode::unsupported_operation: return "UnsupportedOperation";
    case ErrorCode::unknown_event_kind: return "UnknownEventKind";
    case ErrorCode::mismatched_series: return "MismatchedSeries";
    case ErrorCode::wrong_profile: return "WrongProfile";
    case ErrorCode::incomplete_cycle: return "IncompleteCycle";
    case ErrorCode::invalid_scenario: return "InvalidScenario";
    case ErrorCode::invalid_profile: return "InvalidProfile";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what, std::optional<std::uint64_t> token)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), token_(token) {}

namespace {

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

AccountId AccountId::from_hex(std::string_view hex) {
  if (hex.size() != 2 + 2 * kSize || hex[0] != '0' || (hex[1] != 'x' && hex[1] != 'X')) {
    throw Error(ErrorCode::parse_error, "account id must be 0x followed by 40 hex digits");
  }
  Bytes out{};
  for (std::size_t i = 0; i < kSize; ++i) {
    int hi = hex_nibble(hex[2 + 2 * i]);
    int lo = hex_nibble(hex[3 + 2 * i]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::parse_error, "bad hex digit in account id");
    out[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return AccountId(out);
}

AccountId AccountId::utility() {
  Bytes b{};
  b[kSize - 1] = 0x01;
  return AccountId(b);
}

AccountId AccountId::for_household(std::uint32_t ordinal) {
  Bytes b{};
  b[0] = 0x48;  // 'H'
  std::uint32_t v = ordinal + 1;
  for (int i = 0; i < 4; ++i) b[kSize - 1 - i] = static_cast<std::uint8_t>(v >> (8 * i));
  return AccountId(b);
}

std::string AccountId::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s = "0x";
  s.reserve(2 + 2 * kSize);
  for (auto byte : bytes_) {
    s.push_back(kDigits[byte >> 4]);
    s.push_back(kDigits[byte & 0x0f]);
  }
  return s;
}

namespace detail {

std::int64_t parse_fixed(std::string_view text, int decimals) {
  auto fail = [&] {
    return Error(ErrorCode::parse_error, "malformed fixed-point value '" + std::string(text) + "'");
  };
  if (text.empty()) throw fail();
  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-') {
    negative = true;
    pos = 1;
  }
  auto dot = text.find('.', pos);
  std::string_view whole = text.substr(pos, dot == std::string_view::npos ? text.npos : dot - pos);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && frac.empty()) ||
      frac.size() > static_cast<std::size_t>(decimals)) {
    throw fail();
  }
  auto digits_only = [](std::string_view s) {
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (!digits_only(whole) || !digits_only(frac) || whole.size() > 12) throw fail();

  std::int64_t w = 0;
  std::from_chars(whole.data(), whole.data() + whole.size(), w);
  std::int64_t f = 0;
  if (!frac.empty()) std::from_chars(frac.data(), frac.data() + frac.size(), f);
  f *= pow10(decimals - static_cast<int>(frac.size()));
  std::int64_t raw = w * pow10(decimals) + f;
  return negative ? -raw : raw;
}

std::string format_fixed(std::int64_t raw, int decimals) {
  const std::int64_t scale = pow10(decimals);
  std::uint64_t mag = raw < 0 ? static_cast<std::uint64_t>(-(raw + 1)) + 1 : static_cast<std::uint64_t>(raw);
  std::string frac = std::to_string(mag % static_cast<std::uint64_t>(scale));
  frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
  std::string out = raw < 0 ? "-" : "";
  out += std::to_string(mag / static_cast<std::uint64_t>(scale));
  out += '.';
  out += frac;
  return out;
}

}  // namespace detail

std::uint64_t value_cents(Kwh energy, std::uint64_t cents_per_kwh) {
  if (energy.raw() < 0) throw Error(ErrorCode::invalid_argument, "negative energy has no value");
  __extension__ typedef unsigned __int128 u128;
  const auto milli = static_cast<u128>(energy.raw()) * cents_per_kwh;
  return static_cast<std::uint64_t>((milli + Kwh::kScale / 2) / Kwh::kScale);
}

}  // namespace zapledger
