#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "zapledger/types.hpp"

namespace zapledger {

/// Raw resource classes a ledger operation consumes. The gas meter owns the
/// prices; the ledger only counts.
enum class ResourceKind {
  tx_base,
  storage_write_new,
  storage_write_update,
  storage_read,
  hash_words,
  calldata_bytes,
  memory_words,
  exec_base,
  deploy_code_bytes,
};

inline constexpr std::size_t kResourceKindCount = 9;

std::string_view to_string(ResourceKind kind);
std::optional<ResourceKind> resource_kind_from_string(std::string_view name);

// `count` is the event's size: slots for storage kinds, words for hashing and
// memory, bytes for calldata and code, raw gas for exec_base.
struct ResourceEvent {
  ResourceKind kind;
  std::uint64_t count;

  bool operator==(const ResourceEvent&) const = default;
};

using ResourceTrace = std::vector<ResourceEvent>;

/// Memory words a batch transfer touches per token (id and amount, once in the
/// call payload and once in the emitted batch log).
inline constexpr std::uint64_t kTransferMemoryWordsPerToken = 4;

// ERC-1155 style balance book shared by every metadata strategy. Single writer:
// mutate from one thread; const access is safe to share once published.
class LedgerState {
 public:
  using BalanceKey = std::pair<AccountId, TokenId>;

  /// Stored balance, or 0 when the slot is empty. Appends one storage_read to
  /// `trace` when metered.
  std::uint64_t balance_of(const AccountId& account, TokenId token,
                           ResourceTrace* trace = nullptr) const;

  void set_approval_for_all(const AccountId& owner, const AccountId& op, bool approved);
  bool is_approved_for_all(const AccountId& owner, const AccountId& op) const;

  /// Atomic batch move. Throws without touching state on LengthMismatch,
  /// EmptyBatch, NotAuthorized or InsufficientBalance(id).
  ResourceTrace transfer_balances(const AccountId& op, const AccountId& from, const AccountId& to,
                                  std::span<const TokenId> ids,
                                  std::span<const std::uint64_t> amounts);

  /// Runs every transfer_balances check without mutating anything.
  void check_transfer(const AccountId& op, const AccountId& from,
                      std::span<const TokenId> ids, std::span<const std::uint64_t> amounts) const;

  struct Minted {
    std::vector<TokenId> ids;
    ResourceTrace trace;
  };
  /// Mints `count` fresh non-fungible ids (supply 1 each) to `to`.
  Minted mint_balances(const AccountId& to, std::uint64_t count);

  std::uint64_t total_supply(TokenId token) const;
  TokenId next_token_id() const noexcept { return next_; }
  bool exists(TokenId token) const noexcept { return token.valid() && token < next_; }

  const std::map<BalanceKey, std::uint64_t>& balances() const noexcept { return balances_; }

  bool operator==(const LedgerState&) const = default;

 private:
  // Empty slots are never stored: a zero balance erases its key.
  std::map<BalanceKey, std::uint64_t> balances_;
  std::set<std::pair<AccountId, AccountId>> approvals_;
  std::map<TokenId, std::uint64_t> supply_;
  TokenId next_{1};
};

}  // namespace zapledger
