#include "zapledger/profile.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "zapledger/types.hpp"

namespace zapledger {

namespace {

using Usd = Fixed<2, struct UsdTag>;
using Seconds = Fixed<3, struct SecondsTag>;
using nlohmann::ordered_json;

constexpr std::array<std::string_view, 3> kStrategyNames = {"heavyweight", "featherweight",
                                                            "lightweight"};

Error bad(const std::string& what) { return Error(ErrorCode::invalid_profile, what); }

std::uint64_t get_u64(const ordered_json& obj, const char* key) {
  if (!obj.contains(key)) throw bad(std::string("missing key '") + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_unsigned()) throw bad(std::string("'") + key + "' must be an unsigned integer");
  return v.get<std::uint64_t>();
}

template <class F>
F get_fixed(const ordered_json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_string())
    throw bad(std::string("'") + key + "' must be a fixed-decimal string");
  try {
    return F::parse(obj.at(key).get<std::string>());
  } catch (const Error& e) {
    throw bad(std::string("'") + key + "': " + e.what());
  }
}

ordered_json prices_to_json(const PriceTable& p) {
  return ordered_json{
      {"tx_base", p.tx_base},
      {"storage_write_new", p.storage_write_new},
      {"storage_write_update", p.storage_write_update},
      {"storage_read", p.storage_read},
      {"hash_base", p.hash_base},
      {"hash_per_word", p.hash_per_word},
      {"calldata_per_byte", p.calldata_per_byte},
      {"memory_per_word", p.memory_per_word},
      {"memory_quad_divisor", p.memory_quad_divisor},
      {"deploy_base", p.deploy_base},
      {"code_rate", p.code_rate},
      {"exec_per_unit", p.exec_per_unit},
  };
}

PriceTable prices_from_json(const ordered_json& j) {
  PriceTable p;
  p.tx_base = get_u64(j, "tx_base");
  p.storage_write_new = get_u64(j, "storage_write_new");
  p.storage_write_update = get_u64(j, "storage_write_update");
  p.storage_read = get_u64(j, "storage_read");
  p.hash_base = get_u64(j, "hash_base");
  p.hash_per_word = get_u64(j, "hash_per_word");
  p.calldata_per_byte = get_u64(j, "calldata_per_byte");
  p.memory_per_word = get_u64(j, "memory_per_word");
  p.memory_quad_divisor = get_u64(j, "memory_quad_divisor");
  p.deploy_base = get_u64(j, "deploy_base");
  p.code_rate = get_u64(j, "code_rate");
  p.exec_per_unit = get_u64(j, "exec_per_unit");
  return p;
}

ordered_json calibration_to_json(const StrategyCalibration& c) {
  return ordered_json{
      {"code_size_bytes", c.code_size_bytes},
      {"constructor_gas", c.constructor_gas},
      {"mint_base", c.mint_base},
      {"mint_per_token", c.mint_per_token},
      {"transfer_base", c.transfer_base},
      {"transfer_per_token", c.transfer_per_token},
      {"modify_base", c.modify_base},
      {"typed_calldata_bytes", c.typed_calldata_bytes},
      {"record_memory_words", c.record_memory_words},
  };
}

StrategyCalibration calibration_from_json(const ordered_json& j) {
  StrategyCalibration c;
  c.code_size_bytes = get_u64(j, "code_size_bytes");
  c.constructor_gas = get_u64(j, "constructor_gas");
  c.mint_base = get_u64(j, "mint_base");
  c.mint_per_token = get_u64(j, "mint_per_token");
  c.transfer_base = get_u64(j, "transfer_base");
  c.transfer_per_token = get_u64(j, "transfer_per_token");
  c.modify_base = get_u64(j, "modify_base");
  c.typed_calldata_bytes = get_u64(j, "typed_calldata_bytes");
  c.record_memory_words = get_u64(j, "record_memory_words");
  return c;
}

}  // namespace

std::string_view to_string(StrategyKind kind) {
  return kStrategyNames.at(static_cast<std::size_t>(kind));
}

std::optional<StrategyKind> strategy_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kStrategyNames.size(); ++i)
    if (kStrategyNames[i] == name) return static_cast<StrategyKind>(i);
  return std::nullopt;
}

std::array<StrategyCalibration, 3> default_calibration() {
  StrategyCalibration heavy;
  heavy.code_size_bytes = 29359;
  heavy.mint_base = 3000;
  heavy.mint_per_token = 1000;
  heavy.transfer_base = 400000;
  heavy.transfer_per_token = 1072165;
  heavy.typed_calldata_bytes = 320;
  heavy.record_memory_words = 2447;

  StrategyCalibration feather;
  feather.code_size_bytes = 18249;
  feather.constructor_gas = 177;
  feather.mint_base = 38019;
  feather.mint_per_token = 54969;
  feather.transfer_base = 6206;
  feather.transfer_per_token = 19238;
  feather.modify_base = 2500;

  StrategyCalibration light;
  light.code_size_bytes = 22698;
  light.constructor_gas = 180;
  light.mint_base = 4677;
  light.mint_per_token = 94880;
  light.transfer_base = 4713;
  light.transfer_per_token = 108042;

  return {heavy, feather, light};
}

ChainProfile ChainProfile::ethereum() {
  ChainProfile p;
  p.name = "ethereum";
  p.confirmation = {180'000, 300'000};
  p.gas_priced = true;
  p.node_monthly_usd_cents = 0;
  p.calibration = default_calibration();
  return p;
}

ChainProfile ChainProfile::quorum() {
  ChainProfile p = ethereum();
  p.name = "quorum";
  p.confirmation = {10, 1'000};
  p.gas_priced = false;
  p.node_monthly_usd_cents = 8000;
  return p;
}

void ChainProfile::validate() const {
  if (name.empty()) throw bad("profile needs a name");
  if (prices.memory_quad_divisor == 0) throw bad("memory_quad_divisor must be positive");
  if (confirmation.min_ms > confirmation.max_ms) throw bad("confirmation min exceeds max");
  if (throughput_gas_per_s == 0) throw bad("throughput must be positive");
}

std::string profile_to_json(const ChainProfile& p) {
  ordered_json cal = ordered_json::object();
  for (auto kind : kAllStrategies)
    cal[std::string(to_string(kind))] = calibration_to_json(p.calibration_for(kind));
  ordered_json doc{
      {"name", p.name},
      {"gas_priced", p.gas_priced},
      {"prices", prices_to_json(p.prices)},
      {"gwei_per_gas", ordered_json{{"fast", p.gwei_per_gas_fast},
                                    {"standard", p.gwei_per_gas_standard}}},
      {"usd_per_eth", Usd::from_raw(static_cast<std::int64_t>(p.usd_per_eth_cents)).to_string()},
      {"confirmation_seconds",
       ordered_json{
           {"min", Seconds::from_raw(static_cast<std::int64_t>(p.confirmation.min_ms)).to_string()},
           {"max", Seconds::from_raw(static_cast<std::int64_t>(p.confirmation.max_ms)).to_string()}}},
      {"node_monthly_usd",
       Usd::from_raw(static_cast<std::int64_t>(p.node_monthly_usd_cents)).to_string()},
      {"throughput_gas_per_s", p.throughput_gas_per_s},
      {"calibration", cal},
  };
  return doc.dump(2) + "\n";
}

ChainProfile profile_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw bad(e.what());
  }
  if (!doc.is_object()) throw bad("profile must be a JSON object");

  auto object = [&](const ordered_json& parent, const char* key) -> const ordered_json& {
    if (!parent.contains(key) || !parent.at(key).is_object())
      throw bad(std::string("'") + key + "' must be an object");
    return parent.at(key);
  };
  auto non_negative = [](auto f, const char* key) {
    if (f.raw() < 0) throw bad(std::string("'") + key + "' must be non-negative");
    return static_cast<std::uint64_t>(f.raw());
  };

  ChainProfile p;
  if (!doc.contains("name") || !doc.at("name").is_string()) throw bad("'name' must be a string");
  p.name = doc.at("name").get<std::string>();
  if (!doc.contains("gas_priced") || !doc.at("gas_priced").is_boolean())
    throw bad("'gas_priced' must be a boolean");
  p.gas_priced = doc.at("gas_priced").get<bool>();
  p.prices = prices_from_json(object(doc, "prices"));
  const auto& gwei = object(doc, "gwei_per_gas");
  p.gwei_per_gas_fast = get_u64(gwei, "fast");
  p.gwei_per_gas_standard = get_u64(gwei, "standard");
  p.usd_per_eth_cents = non_negative(get_fixed<Usd>(doc, "usd_per_eth"), "usd_per_eth");
  const auto& conf = object(doc, "confirmation_seconds");
  p.confirmation.min_ms = non_negative(get_fixed<Seconds>(conf, "min"), "min");
  p.confirmation.max_ms = non_negative(get_fixed<Seconds>(conf, "max"), "max");
  p.node_monthly_usd_cents =
      non_negative(get_fixed<Usd>(doc, "node_monthly_usd"), "node_monthly_usd");
  p.throughput_gas_per_s = get_u64(doc, "throughput_gas_per_s");
  const auto& cal = object(doc, "calibration");
  for (auto kind : kAllStrategies) {
    const std::string key(to_string(kind));
    p.calibration[static_cast<std::size_t>(kind)] = calibration_from_json(object(cal, key.c_str()));
  }
  p.validate();
  return p;
}

ChainProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bad("cannot open profile '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return profile_from_json(ss.str());
}

ChainProfile resolve_profile(std::string_view name_or_path) {
  if (name_or_path == "ethereum") return ChainProfile::ethereum();
  if (name_or_path == "quorum") return ChainProfile::quorum();
  return load_profile(std::filesystem::path(std::string(name_or_path)));
}

}  // namespace zapledger
