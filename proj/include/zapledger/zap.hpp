#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zapledger/types.hpp"

namespace zapledger {

enum class EnergySource { photovoltaic, wind, biodiesel, hydro, fossil, other };

std::string_view to_string(EnergySource source);
std::optional<EnergySource> energy_source_from_string(std::string_view name);

struct GeoPoint {
  Degrees lat;
  Degrees lon;

  /// Throws InvariantViolation outside [-90, 90] × [-180, 180].
  void validate() const;
  bool operator==(const GeoPoint&) const = default;
};

/// Owner and location histories never hold more than this many entries.
inline constexpr std::size_t kMaxHistory = 5;

/// Zaps are minted once per 5-minute window, so average power is 12× the energy.
inline constexpr std::int64_t kWindowsPerHour = 12;

// Energy token metadata. Histories are oldest first; the last owner is the
// current holder and every ownership change appends exactly one location.
struct Zap {
  TokenId token_id;
  std::int64_t created_at = 0;
  Kwh energy;
  Kw power;
  std::uint64_t value_usd_cents = 0;
  std::uint64_t generator_id = 0;
  EnergySource source = EnergySource::other;
  std::vector<AccountId> owner_history;
  std::vector<GeoPoint> location_history;

  void validate() const;
  const AccountId& current_owner() const { return owner_history.back(); }
  bool operator==(const Zap&) const = default;
};

Zap new_zap(std::uint64_t generator_id, std::int64_t created_at, Kwh energy, EnergySource source,
            const AccountId& owner, const GeoPoint& location,
            std::uint64_t unit_price_cents_per_kwh);

/// Minified JSON with a fixed key order and fixed-decimal strings for every
/// fractional field. Bit-exact external format; see README for the layout.
std::string canonical_bytes(const Zap& zap);

/// Inverse of canonical_bytes. Throws ParseError on malformed input and
/// InvariantViolation when the decoded record is not a valid Zap.
Zap parse_zap(std::string_view bytes);

struct MetadataHash {
  std::array<std::uint8_t, 32> digest{};

  std::string to_hex() const;
  static MetadataHash from_hex(std::string_view hex);
  auto operator<=>(const MetadataHash&) const = default;
};

/// SHA-256 of exactly `bytes`.
MetadataHash metadata_hash(std::string_view bytes);

/// Appends one ownership change. Full histories drop their oldest entry.
Zap append_history(Zap zap, const AccountId& new_owner, const GeoPoint& new_location);

}  // namespace zapledger
