#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace zapledger {

enum class StrategyKind { heavyweight, featherweight, lightweight };

inline constexpr std::array<StrategyKind, 3> kAllStrategies = {
    StrategyKind::heavyweight, StrategyKind::featherweight, StrategyKind::lightweight};

std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> strategy_from_string(std::string_view name);

/// Gas per resource unit. Hashing and code deployment carry a per-event base
/// on top of the per-unit rate; memory adds words²/memory_quad_divisor.
struct PriceTable {
  std::uint64_t tx_base = 21000;
  std::uint64_t storage_write_new = 20000;
  std::uint64_t storage_write_update = 5000;
  std::uint64_t storage_read = 800;
  std::uint64_t hash_base = 30;
  std::uint64_t hash_per_word = 6;
  std::uint64_t calldata_per_byte = 16;
  std::uint64_t memory_per_word = 3;
  std::uint64_t memory_quad_divisor = 512;
  std::uint64_t deploy_base = 32000;
  std::uint64_t code_rate = 200;
  std::uint64_t exec_per_unit = 1;

  bool operator==(const PriceTable&) const = default;
};

// Per-strategy constants tuned once against the measured single-op and
// 10-token batch costs, then frozen in the shipped profiles. `*_base` is
// charged once per transaction, `*_per_token` once per token in the batch.
struct StrategyCalibration {
  std::uint64_t code_size_bytes = 0;
  std::uint64_t constructor_gas = 0;
  std::uint64_t mint_base = 0;
  std::uint64_t mint_per_token = 0;
  std::uint64_t transfer_base = 0;
  std::uint64_t transfer_per_token = 0;
  std::uint64_t modify_base = 0;
  /// Heavyweight only: ABI-encoded typed metadata arguments per minted token.
  std::uint64_t typed_calldata_bytes = 0;
  /// Heavyweight only: in-memory record buffer per transferred token.
  std::uint64_t record_memory_words = 0;

  bool operator==(const StrategyCalibration&) const = default;
};

/// Uniform confirmation delay, in milliseconds.
struct LatencyModel {
  std::uint64_t min_ms = 0;
  std::uint64_t max_ms = 0;

  bool operator==(const LatencyModel&) const = default;
};

struct ChainProfile {
  std::string name;
  PriceTable prices;
  std::uint64_t gwei_per_gas_fast = 30;
  std::uint64_t gwei_per_gas_standard = 26;
  std::uint64_t usd_per_eth_cents = 24000;
  LatencyModel confirmation;
  bool gas_priced = true;
  std::uint64_t node_monthly_usd_cents = 0;
  std::uint64_t throughput_gas_per_s = 1'000'000;
  std::array<StrategyCalibration, 3> calibration{};

  const StrategyCalibration& calibration_for(StrategyKind kind) const {
    return calibration[static_cast<std::size_t>(kind)];
  }

  /// Throws InvalidProfile on inconsistent settings.
  void validate() const;

  static ChainProfile ethereum();
  static ChainProfile quorum();

  bool operator==(const ChainProfile&) const = default;
};

std::array<StrategyCalibration, 3> default_calibration();

/// Profile document: same fixed-decimal string conventions as Zap metadata.
std::string profile_to_json(const ChainProfile& profile);
ChainProfile profile_from_json(std::string_view text);
ChainProfile load_profile(const std::filesystem::path& path);

/// "ethereum" and "quorum" select the built-in profiles; anything else is
/// read as a profile file path.
ChainProfile resolve_profile(std::string_view name_or_path);

}  // namespace zapledger
