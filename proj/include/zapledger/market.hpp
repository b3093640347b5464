#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zapledger/gas.hpp"
#include "zapledger/profile.hpp"
#include "zapledger/strategy.hpp"
#include "zapledger/zap.hpp"

namespace zapledger {

inline constexpr std::int64_t kSecondsPerDay = 86'400;
/// Generator id stamped on utility-issued Zaps.
inline constexpr std::uint64_t kUtilityGeneratorId = 0;

struct Household {
  AccountId account;
  GeoPoint location;
  std::uint64_t generator_id = 0;  ///< 0 = no generator
  EnergySource source = EnergySource::photovoltaic;
  Kwh generation_per_tick;
  Kwh consumption_per_tick;
  /// Price stamped on this household's Zaps; defaults to the utility rate.
  std::optional<std::uint64_t> price_cents_per_kwh;
  /// When false the household sells everything it generates and covers its
  /// own demand from peers.
  bool self_consume = true;
};

struct GridScenario {
  std::vector<Household> households;
  std::int64_t tick_seconds = 300;
  std::uint64_t ticks_per_day = 288;
  std::uint64_t days = 1;
  std::uint64_t cycle_days = 1;
  std::uint64_t utility_rate_cents_per_kwh = 30;
  std::uint64_t seed = 0;
  std::int64_t start_unix = 1'600'000'000;
  /// Stop early after this many ticks (0 = run every day). The open cycle is
  /// settled when the run stops.
  std::uint64_t max_ticks = 0;
  GeoPoint utility_location;

  /// Throws InvalidScenario.
  void validate() const;
  std::uint64_t total_ticks() const;
  std::uint64_t ticks_per_cycle() const { return cycle_days * ticks_per_day; }
};

// --- consumption --------------------------------------------------------

struct Holding {
  TokenId token;
  std::int64_t created_at = 0;
  Kwh remaining;

  bool operator==(const Holding&) const = default;
};

struct Drain {
  TokenId token;
  Kwh amount;

  bool operator==(const Drain&) const = default;
};

struct ConsumeResult {
  std::vector<Holding> holdings;  ///< oldest first; fully spent Zaps removed
  Kwh deficit;
  std::vector<Drain> drained;
};

/// Drains `holdings` oldest-created first until `demand` is met.
ConsumeResult consume_step(std::vector<Holding> holdings, Kwh demand);

// --- settlement ---------------------------------------------------------

struct CycleActivity {
  struct Produced {
    AccountId account;
    Kwh amount;
  };
  struct Purchased {
    AccountId buyer;
    AccountId producer;
    TokenId token;
    std::uint64_t value_cents = 0;
  };
  struct Consumed {
    AccountId account;
    Kwh from_zaps;
    Kwh deficit;
  };

  std::uint64_t cycle_index = 0;
  std::uint64_t ticks_expected = 0;
  std::uint64_t ticks_recorded = 0;
  std::vector<Produced> produced;
  std::vector<Purchased> purchased;
  std::vector<Consumed> consumed;
};

struct BillingStatement {
  AccountId account;
  std::uint64_t cycle_index = 0;
  Kwh produced;
  Kwh consumed;
  std::uint64_t revenue_cents = 0;
  std::uint64_t purchases_cents = 0;
  std::uint64_t utility_charge_cents = 0;
  std::uint64_t zaps_received_from_utility = 0;
  /// Consumption no peer Zap covered; billed at the utility rate.
  Kwh deficit;

  bool operator==(const BillingStatement&) const = default;
};

/// One statement per account, in `accounts` order. Buyers pay each producer
/// the mint-time value of every Zap they received this cycle; uncovered
/// consumption is billed at the utility rate. Throws IncompleteCycle when
/// fewer ticks were recorded than the cycle spans.
std::vector<BillingStatement> settle_cycle(const CycleActivity& cycle,
                                           std::span<const AccountId> accounts,
                                           std::uint64_t utility_rate_cents_per_kwh);

// --- simulation ---------------------------------------------------------

struct SimEvent {
  std::uint64_t seq = 0;
  std::int64_t time = 0;
  std::uint64_t tick = 0;
  std::uint64_t cycle = 0;
  /// deploy, mint, transfer, modify, consume, deficit, utility_mint,
  /// utility_transfer, settle
  std::string kind;
  AccountId account;
  std::optional<AccountId> counterparty;
  std::optional<TokenId> token;
  Kwh kwh;
  std::uint64_t value_cents = 0;
  std::optional<std::size_t> receipt;
};

struct SimResult {
  StrategyKind strategy = StrategyKind::lightweight;
  std::string profile_name;
  std::uint64_t seed = 0;
  std::uint64_t ticks = 0;
  std::vector<SimEvent> events;
  std::vector<OpReceipt> receipts;
  std::vector<BillingStatement> statements;
  /// Unconsumed energy left on every Zap ever minted.
  std::map<TokenId, Kwh> spent_registry;
  /// Latest metadata of every Zap as the simulator tracks it off-ledger.
  std::map<TokenId, Zap> records;
};

/// Deterministic: identical inputs give identical results. `seed` overrides
/// the scenario's seed.
SimResult run(const GridScenario& scenario, StrategyKind kind, const ChainProfile& profile,
              std::optional<std::uint64_t> seed = std::nullopt);

/// The ledger the run used is rebuilt on request so callers can audit it.
struct AuditedRun {
  SimResult result;
  ZapLedger ledger;
};
AuditedRun run_audited(const GridScenario& scenario, StrategyKind kind, const ChainProfile& profile,
                       std::optional<std::uint64_t> seed = std::nullopt);

// --- analysis -----------------------------------------------------------

struct ViabilityReport {
  std::uint64_t mint_cents_per_house_day = 0;
  std::uint64_t transfer_cents_per_house_day = 0;
  MoneyAmount monthly_total;
};

inline constexpr std::uint64_t kTicksPerDay = 288;

/// Worst case: every house mints and transfers once per 5-minute window,
/// individually.
ViabilityReport viability_report(std::uint64_t houses, std::uint64_t mint_cents,
                                 std::uint64_t transfer_cents, std::uint64_t days);

struct FeasibilityRow {
  std::string op;
  std::uint64_t count = 0;
  std::uint64_t max_gas = 0;
  double max_processing_s = 0.0;
  double max_confirmation_s = 0.0;
  double max_total_s = 0.0;
  std::uint64_t fits = 0;  ///< ops whose total latency stayed inside the window
  bool processing_fits = true;
  bool all_fit = true;
};

/// Processing = gas / throughput; confirmation drawn per op from the profile's
/// uniform model with the result's seed. Rows in first-seen op order;
/// deployment is excluded.
std::vector<FeasibilityRow> schedule_feasibility(const SimResult& result, const ChainProfile& profile,
                                                 double window_seconds = 300.0);

}  // namespace zapledger
