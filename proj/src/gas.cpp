#include "zapledger/gas.hpp"

#include <array>

namespace zapledger {

std::uint64_t price_event(const ResourceEvent& e, const PriceTable& p) {
  switch (e.kind) {
    case ResourceKind::tx_base: return e.count * p.tx_base;
    case ResourceKind::storage_write_new: return e.count * p.storage_write_new;
    case ResourceKind::storage_write_update: return e.count * p.storage_write_update;
    case ResourceKind::storage_read: return e.count * p.storage_read;
    case ResourceKind::hash_words: return p.hash_base + e.count * p.hash_per_word;
    case ResourceKind::calldata_bytes: return e.count * p.calldata_per_byte;
    case ResourceKind::memory_words:
      return e.count * p.memory_per_word + e.count * e.count / p.memory_quad_divisor;
    case ResourceKind::exec_base: return e.count * p.exec_per_unit;
    case ResourceKind::deploy_code_bytes: return p.deploy_base + e.count * p.code_rate;
  }
  throw Error(ErrorCode::unknown_event_kind,
              "no price for resource kind #" + std::to_string(static_cast<int>(e.kind)));
}

GasReceipt price_trace(const ResourceTrace& trace, const PriceTable& prices) {
  if (trace.empty()) throw Error(ErrorCode::invalid_argument, "cannot price an empty trace");
  std::array<std::uint64_t, kResourceKindCount> per_kind{};
  std::array<bool, kResourceKindCount> seen{};
  GasReceipt r;
  for (const auto& e : trace) {
    const auto units = price_event(e, prices);
    const auto k = static_cast<std::size_t>(e.kind);
    per_kind[k] += units;
    seen[k] = true;
    r.gas_units += units;
  }
  for (std::size_t k = 0; k < kResourceKindCount; ++k)
    if (seen[k]) r.breakdown.push_back({static_cast<ResourceKind>(k), per_kind[k]});
  return r;
}

std::string_view to_string(Rate rate) { return rate == Rate::fast ? "fast" : "standard"; }

std::optional<Rate> rate_from_string(std::string_view name) {
  if (name == "fast") return Rate::fast;
  if (name == "standard") return Rate::standard;
  return std::nullopt;
}

MoneyAmount gas_to_money(std::uint64_t gas_units, Rate rate, const ChainProfile& profile) {
  if (!profile.gas_priced) return {};
  MoneyAmount m;
  m.gwei = gas_units *
           (rate == Rate::fast ? profile.gwei_per_gas_fast : profile.gwei_per_gas_standard);
  // cents = gwei × 1e-9 ETH/gwei × usd_per_eth_cents, half up.
  __extension__ typedef unsigned __int128 u128;
  constexpr u128 kGweiPerEth = 1'000'000'000;
  const u128 scaled = static_cast<u128>(m.gwei) * profile.usd_per_eth_cents;
  m.usd_cents = static_cast<std::uint64_t>((scaled + kGweiPerEth / 2) / kGweiPerEth);
  return m;
}

MoneyAmount gasfree_cost(std::uint64_t nodes, std::uint64_t months, const ChainProfile& profile) {
  if (profile.gas_priced)
    throw Error(ErrorCode::wrong_profile, "node hosting applies to gas-free profiles, not '" +
                                              profile.name + "'");
  return {0, nodes * months * profile.node_monthly_usd_cents};
}

std::string format_usd(std::uint64_t cents) {
  std::string frac = std::to_string(cents % 100);
  if (frac.size() < 2) frac.insert(0, 1, '0');
  return std::to_string(cents / 100) + "." + frac;
}

}  // namespace zapledger
