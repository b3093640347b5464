#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zapledger/ledger.hpp"
#include "zapledger/profile.hpp"

namespace zapledger {

struct ReceiptLine {
  ResourceKind kind;
  std::uint64_t units;

  bool operator==(const ReceiptLine&) const = default;
};

/// Priced trace: total plus per-kind subtotals in ResourceKind order.
struct GasReceipt {
  std::uint64_t gas_units = 0;
  std::vector<ReceiptLine> breakdown;

  bool operator==(const GasReceipt&) const = default;
};

std::uint64_t price_event(const ResourceEvent& event, const PriceTable& prices);
GasReceipt price_trace(const ResourceTrace& trace, const PriceTable& prices);
inline GasReceipt price_trace(const ResourceTrace& trace, const ChainProfile& profile) {
  return price_trace(trace, profile.prices);
}

enum class Rate { fast, standard };
std::string_view to_string(Rate rate);
std::optional<Rate> rate_from_string(std::string_view name);

struct MoneyAmount {
  std::uint64_t gwei = 0;
  std::uint64_t usd_cents = 0;

  bool operator==(const MoneyAmount&) const = default;
};

/// gwei = gas × rate; cents rounded half up once, at the end. Gas-free
/// profiles always yield zero.
MoneyAmount gas_to_money(std::uint64_t gas_units, Rate rate, const ChainProfile& profile);

/// Node hosting for gas-free chains. Throws WrongProfile on a gas-priced profile.
MoneyAmount gasfree_cost(std::uint64_t nodes, std::uint64_t months, const ChainProfile& profile);

/// "1234.56" for 123456 cents.
std::string format_usd(std::uint64_t cents);

}  // namespace zapledger
