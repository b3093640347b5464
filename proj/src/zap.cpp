#include "zapledger/zap.hpp"

#include <openssl/evp.h>

#include <array>
#include <json.hpp>

namespace zapledger {

namespace {

constexpr std::array<std::string_view, 6> kSourceNames = {
    "photovoltaic", "wind", "biodiesel", "hydro", "fossil", "other",
};

constexpr std::array<std::string_view, 10> kKeyOrder = {
    "version",         "token_id",     "created_at", "energy_kwh",    "power_kw",
    "value_usd_cents", "generator_id", "source",     "owner_history", "location_history",
};

constexpr int kFormatVersion = 1;

const Degrees kMaxLat = Degrees::from_units(90);
const Degrees kMaxLon = Degrees::from_units(180);

Error invalid(const std::string& what) { return Error(ErrorCode::invariant_violation, what); }

void append_quoted(std::string& out, std::string_view s) {
  out += '"';
  out += s;
  out += '"';
}

}  // namespace

std::string_view to_string(EnergySource source) {
  return kSourceNames.at(static_cast<std::size_t>(source));
}

std::optional<EnergySource> energy_source_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kSourceNames.size(); ++i)
    if (kSourceNames[i] == name) return static_cast<EnergySource>(i);
  return std::nullopt;
}

void GeoPoint::validate() const {
  if (lat < -kMaxLat || lat > kMaxLat) throw invalid("latitude " + lat.to_string() + " out of range");
  if (lon < -kMaxLon || lon > kMaxLon) throw invalid("longitude " + lon.to_string() + " out of range");
}

void Zap::validate() const {
  if (owner_history.empty() || owner_history.size() > kMaxHistory)
    throw invalid("owner history must hold 1.." + std::to_string(kMaxHistory) + " entries");
  if (location_history.size() != owner_history.size())
    throw invalid("owner and location histories differ in length");
  if (energy.raw() <= 0) throw invalid("energy must be positive");
  if (power.raw() <= 0) throw invalid("power must be positive");
  if (static_cast<std::size_t>(source) >= kSourceNames.size()) throw invalid("unknown energy source");
  for (const auto& p : location_history) p.validate();
}

Zap new_zap(std::uint64_t generator_id, std::int64_t created_at, Kwh energy, EnergySource source,
            const AccountId& owner, const GeoPoint& location,
            std::uint64_t unit_price_cents_per_kwh) {
  if (energy.raw() <= 0)
    throw Error(ErrorCode::non_positive_energy, "energy " + energy.to_string() + " kWh");
  location.validate();
  Zap z;
  z.created_at = created_at;
  z.energy = energy;
  z.power = Kw::from_raw(energy.raw() * kWindowsPerHour);
  z.value_usd_cents = value_cents(energy, unit_price_cents_per_kwh);
  z.generator_id = generator_id;
  z.source = source;
  z.owner_history = {owner};
  z.location_history = {location};
  return z;
}

std::string canonical_bytes(const Zap& zap) {
  zap.validate();
  std::string out;
  out.reserve(256 + 96 * zap.owner_history.size());
  out += "{\"version\":";
  out += std::to_string(kFormatVersion);
  out += ",\"token_id\":";
  out += std::to_string(zap.token_id.value);
  out += ",\"created_at\":";
  out += std::to_string(zap.created_at);
  out += ",\"energy_kwh\":";
  append_quoted(out, zap.energy.to_string());
  out += ",\"power_kw\":";
  append_quoted(out, zap.power.to_string());
  out += ",\"value_usd_cents\":";
  out += std::to_string(zap.value_usd_cents);
  out += ",\"generator_id\":";
  out += std::to_string(zap.generator_id);
  out += ",\"source\":";
  append_quoted(out, to_string(zap.source));
  out += ",\"owner_history\":[";
  for (std::size_t i = 0; i < zap.owner_history.size(); ++i) {
    if (i) out += ',';
    append_quoted(out, zap.owner_history[i].to_hex());
  }
  out += "],\"location_history\":[";
  for (std::size_t i = 0; i < zap.location_history.size(); ++i) {
    if (i) out += ',';
    out += "{\"lat\":";
    append_quoted(out, zap.location_history[i].lat.to_string());
    out += ",\"lon\":";
    append_quoted(out, zap.location_history[i].lon.to_string());
    out += '}';
  }
  out += "]}";
  return out;
}

Zap parse_zap(std::string_view bytes) {
  using nlohmann::ordered_json;
  ordered_json doc;
  try {
    doc = ordered_json::parse(bytes.begin(), bytes.end());
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }

  auto fail = [](const std::string& what) { return Error(ErrorCode::parse_error, what); };
  if (!doc.is_object() || doc.size() != kKeyOrder.size()) throw fail("zap must be an object with 10 keys");
  std::size_t i = 0;
  for (const auto& [key, _] : doc.items()) {
    if (key != kKeyOrder[i++]) throw fail("unexpected key '" + key + "'");
  }

  auto u64 = [&](const char* key) {
    const auto& v = doc.at(key);
    if (!v.is_number_unsigned()) throw fail(std::string(key) + " must be an unsigned integer");
    return v.get<std::uint64_t>();
  };
  auto str = [&](const ordered_json& v, const char* what) {
    if (!v.is_string()) throw fail(std::string(what) + " must be a string");
    return v.get<std::string>();
  };

  if (u64("version") != kFormatVersion) throw fail("unsupported version");
  Zap z;
  z.token_id = TokenId{u64("token_id")};
  const auto& created = doc.at("created_at");
  if (!created.is_number_integer()) throw fail("created_at must be an integer");
  z.created_at = created.get<std::int64_t>();
  z.energy = Kwh::parse(str(doc.at("energy_kwh"), "energy_kwh"));
  z.power = Kw::parse(str(doc.at("power_kw"), "power_kw"));
  z.value_usd_cents = u64("value_usd_cents");
  z.generator_id = u64("generator_id");
  auto source = energy_source_from_string(str(doc.at("source"), "source"));
  if (!source) throw fail("unknown energy source");
  z.source = *source;

  const auto& owners = doc.at("owner_history");
  const auto& locations = doc.at("location_history");
  if (!owners.is_array() || !locations.is_array()) throw fail("histories must be arrays");
  for (const auto& o : owners) z.owner_history.push_back(AccountId::from_hex(str(o, "owner")));
  for (const auto& l : locations) {
    if (!l.is_object() || l.size() != 2 || !l.contains("lat") || !l.contains("lon"))
      throw fail("location must be {lat, lon}");
    z.location_history.push_back(
        {Degrees::parse(str(l.at("lat"), "lat")), Degrees::parse(str(l.at("lon"), "lon"))});
  }
  z.validate();
  return z;
}

std::string MetadataHash::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(64);
  for (auto b : digest) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0x0f]);
  }
  return s;
}

MetadataHash MetadataHash::from_hex(std::string_view hex) {
  if (hex.size() != 64) throw Error(ErrorCode::parse_error, "digest must be 64 hex digits");
  MetadataHash h;
  auto nib = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error(ErrorCode::parse_error, "digest must be lowercase hex");
  };
  for (std::size_t i = 0; i < 32; ++i)
    h.digest[i] = static_cast<std::uint8_t>(nib(hex[2 * i]) * 16 + nib(hex[2 * i + 1]));
  return h;
}

MetadataHash metadata_hash(std::string_view bytes) {
  MetadataHash h;
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), h.digest.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != h.digest.size()) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  return h;
}

Zap append_history(Zap zap, const AccountId& new_owner, const GeoPoint& new_location) {
  new_location.validate();
  if (zap.owner_history.size() >= kMaxHistory) {
    zap.owner_history.erase(zap.owner_history.begin());
    zap.location_history.erase(zap.location_history.begin());
  }
  zap.owner_history.push_back(new_owner);
  zap.location_history.push_back(new_location);
  return zap;
}

}  // namespace zapledger
