#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zapledger/profile.hpp"
#include "zapledger/strategy.hpp"
#include "zapledger/zap.hpp"

namespace zapledger {

// Benchmark fixture: token i is a 0.250 kWh photovoltaic Zap created 300 s
// after token i-1, priced at 30 cents/kWh.
AccountId fixture_sender();
AccountId fixture_receiver();
GeoPoint fixture_origin();
GeoPoint fixture_destination();
Zap fixture_zap(std::uint64_t index, const AccountId& owner = fixture_sender());

enum class CurveOp { mint, transfer, transfer_with_modify };

std::string_view to_string(CurveOp op);
std::optional<CurveOp> curve_op_from_string(std::string_view name);

/// Runs one batch of `n` on a freshly deployed fixture ledger. For
/// transfer_with_modify the featherweight receipt also carries the holder's
/// per-token modify calls; other strategies update metadata inside the
/// transfer, so it equals the plain transfer.
OpReceipt run_batch(StrategyKind kind, CurveOp op, std::uint64_t n, const ChainProfile& profile);

struct CurvePoint {
  std::uint64_t n = 0;
  std::uint64_t gas_units = 0;
  double gas_per_token = 0.0;
};

/// Per-token gas for every batch size 1..n_max.
std::vector<CurvePoint> per_token_curve(StrategyKind kind, CurveOp op, std::uint64_t n_max,
                                        const ChainProfile& profile);

struct ReductionRow {
  std::string op;
  std::uint64_t n = 0;
  std::uint64_t baseline_gas = 0;
  std::uint64_t candidate_gas = 0;
  /// 1 − candidate/baseline.
  double reduction = 0.0;
};

/// Pairs receipts positionally; op names and batch sizes must match.
std::vector<ReductionRow> reduction_report(std::span<const OpReceipt> baseline,
                                           std::span<const OpReceipt> candidate);

}  // namespace zapledger
