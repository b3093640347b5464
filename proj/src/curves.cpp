#include "zapledger/curves.hpp"

namespace zapledger {

namespace {

constexpr std::int64_t kFixtureEpoch = 1'600'000'000;
constexpr std::int64_t kFixtureSpacing = 300;
constexpr std::uint64_t kFixturePrice = 30;

AccountId repeated(std::uint8_t byte) {
  AccountId::Bytes b;
  b.fill(byte);
  return AccountId(b);
}

}  // namespace

AccountId fixture_sender() { return repeated(0x11); }
AccountId fixture_receiver() { return repeated(0x22); }
GeoPoint fixture_origin() { return {Degrees::parse("45.508800"), Degrees::parse("-73.587400")}; }
GeoPoint fixture_destination() {
  return {Degrees::parse("45.501700"), Degrees::parse("-73.567300")};
}

Zap fixture_zap(std::uint64_t index, const AccountId& owner) {
  Zap z = new_zap(1, kFixtureEpoch + kFixtureSpacing * static_cast<std::int64_t>(index - 1),
                  Kwh::parse("0.250"), EnergySource::photovoltaic, owner, fixture_origin(),
                  kFixturePrice);
  z.token_id = TokenId{index};
  return z;
}

std::string_view to_string(CurveOp op) {
  switch (op) {
    case CurveOp::mint: return "mint";
    case CurveOp::transfer: return "transfer";
    case CurveOp::transfer_with_modify: return "transfer+modify";
  }
  return "?";
}

std::optional<CurveOp> curve_op_from_string(std::string_view name) {
  for (auto op : {CurveOp::mint, CurveOp::transfer, CurveOp::transfer_with_modify})
    if (to_string(op) == name) return op;
  return std::nullopt;
}

OpReceipt run_batch(StrategyKind kind, CurveOp op, std::uint64_t n, const ChainProfile& profile) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "batch size must be at least 1");
  auto ledger = ZapLedger::deploy(kind, profile).ledger;
  std::vector<Zap> zaps;
  zaps.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) zaps.push_back(fixture_zap(i));
  auto minted = ledger.mint_zaps(fixture_sender(), std::move(zaps));
  if (op == CurveOp::mint) return std::move(minted.receipt);

  std::optional<std::vector<std::string>> payloads;
  if (kind == StrategyKind::lightweight) payloads = minted.payloads;
  auto moved = ledger.transfer_zaps(fixture_sender(), fixture_sender(), fixture_receiver(),
                                    minted.ids, fixture_destination(), payloads);
  if (op == CurveOp::transfer) return std::move(moved.receipt);

  ResourceTrace trace = std::move(moved.receipt.trace);
  if (kind == StrategyKind::featherweight) {
    for (const auto& z : minted.zaps) {
      const auto next = append_history(z, fixture_receiver(), fixture_destination());
      auto modified = ledger.modify_zap(fixture_receiver(), z.token_id,
                                        metadata_hash(canonical_bytes(next)));
      trace.insert(trace.end(), modified.trace.begin(), modified.trace.end());
    }
  }
  return make_receipt(std::string(to_string(op)), kind, n, std::move(trace), profile.prices);
}

std::vector<CurvePoint> per_token_curve(StrategyKind kind, CurveOp op, std::uint64_t n_max,
                                        const ChainProfile& profile) {
  if (n_max == 0) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  std::vector<CurvePoint> curve;
  curve.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const auto gas = run_batch(kind, op, n, profile).gas_units;
    curve.push_back({n, gas, static_cast<double>(gas) / static_cast<double>(n)});
  }
  return curve;
}

std::vector<ReductionRow> reduction_report(std::span<const OpReceipt> baseline,
                                           std::span<const OpReceipt> candidate) {
  if (baseline.size() != candidate.size())
    throw Error(ErrorCode::mismatched_series, "series lengths differ");
  std::vector<ReductionRow> rows;
  rows.reserve(baseline.size());
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    const auto& b = baseline[i];
    const auto& c = candidate[i];
    if (b.op != c.op || b.batch_size != c.batch_size)
      throw Error(ErrorCode::mismatched_series, "row " + std::to_string(i) + ": " + b.op + "/" +
                                                    std::to_string(b.batch_size) + " vs " + c.op +
                                                    "/" + std::to_string(c.batch_size));
    if (b.gas_units == 0) throw Error(ErrorCode::mismatched_series, "baseline gas is zero");
    rows.push_back({b.op, b.batch_size, b.gas_units, c.gas_units,
                    1.0 - static_cast<double>(c.gas_units) / static_cast<double>(b.gas_units)});
  }
  return rows;
}

}  // namespace zapledger
