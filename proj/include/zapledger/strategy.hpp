#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zapledger/gas.hpp"
#include "zapledger/ledger.hpp"
#include "zapledger/profile.hpp"
#include "zapledger/zap.hpp"

namespace zapledger {

/// Storage words a heavyweight Zap occupies: 6 scalars, 5 owner slots and 5
/// packed location slots.
inline constexpr std::uint64_t kHeavyRecordWords = 16;
/// Words rewritten when a heavyweight history array pair is updated.
inline constexpr std::uint64_t kHeavyHistoryWords = 10;

inline constexpr std::uint64_t words_for(std::uint64_t bytes) { return (bytes + 31) / 32; }

struct OpReceipt {
  std::string op;
  StrategyKind strategy = StrategyKind::lightweight;
  std::uint64_t batch_size = 1;
  std::uint64_t gas_units = 0;
  std::vector<ReceiptLine> breakdown;
  /// Unpriced events the receipt was computed from.
  ResourceTrace trace;

  bool operator==(const OpReceipt&) const = default;
};

OpReceipt make_receipt(std::string op, StrategyKind strategy, std::uint64_t batch_size,
                       ResourceTrace trace, const PriceTable& prices);

using FullStore = std::map<TokenId, Zap>;
using HashedStore = std::map<TokenId, MetadataHash>;
using MetadataStore = std::variant<FullStore, HashedStore>;

// A deployed energy-token contract. Heavyweight keeps every Zap on the ledger;
// featherweight and lightweight keep only the SHA-256 of its canonical bytes.
// The gas-free ("weightless") deployment is lightweight under a gas-free
// profile, not a separate code path.
class ZapLedger {
 public:
  struct Deployed;

  static Deployed deploy(StrategyKind kind, const ChainProfile& profile);

  struct MintOutcome {
    std::vector<TokenId> ids;
    /// The minted records with their assigned ids.
    std::vector<Zap> zaps;
    /// canonical_bytes of each minted record; callers of hashed strategies
    /// keep these off-ledger.
    std::vector<std::string> payloads;
    OpReceipt receipt;
  };
  /// Token ids in `zaps` are ignored and assigned here. Every Zap must be
  /// valid and currently owned by `to`.
  MintOutcome mint_zaps(const AccountId& to, std::vector<Zap> zaps);

  struct TransferOutcome {
    OpReceipt receipt;
    /// Lightweight only: re-serialized records after the history append.
    std::optional<std::vector<std::string>> updated_payloads;
  };
  /// Moves every id from `from` to `to`. Lightweight requires the current
  /// canonical bytes of each id in `payloads`; the other strategies reject
  /// them. All-or-nothing.
  TransferOutcome transfer_zaps(const AccountId& op, const AccountId& from, const AccountId& to,
                                std::span<const TokenId> ids, const GeoPoint& new_location,
                                const std::optional<std::vector<std::string>>& payloads = std::nullopt);

  /// Featherweight holder-driven digest update. Accepts any digest from the
  /// current holder; the preimage is not checked.
  OpReceipt modify_zap(const AccountId& caller, TokenId id, const MetadataHash& new_hash);

  Zap read_zap(TokenId id, std::optional<std::string_view> payload = std::nullopt) const;

  void set_approval_for_all(const AccountId& owner, const AccountId& op, bool approved) {
    core_.set_approval_for_all(owner, op, approved);
  }

  StrategyKind kind() const noexcept { return kind_; }
  const LedgerState& balances() const noexcept { return core_; }
  const MetadataStore& store() const noexcept { return store_; }
  std::optional<MetadataHash> stored_hash(TokenId id) const;

  bool operator==(const ZapLedger&) const = default;

 private:
  ZapLedger(StrategyKind kind, const ChainProfile& profile);

  OpReceipt receipt(std::string op, std::uint64_t n, ResourceTrace trace) const {
    return make_receipt(std::move(op), kind_, n, std::move(trace), prices_);
  }

  StrategyKind kind_;
  PriceTable prices_;
  StrategyCalibration calibration_;
  LedgerState core_;
  MetadataStore store_;
};

struct ZapLedger::Deployed {
  ZapLedger ledger;
  OpReceipt receipt;
};

}  // namespace zapledger
