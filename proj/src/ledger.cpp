#include "zapledger/ledger.hpp"

#include <array>
#include <string>

namespace zapledger {

namespace {

constexpr std::array<std::string_view, kResourceKindCount> kKindNames = {
    "tx_base",     "storage_write_new", "storage_write_update",
    "storage_read", "hash_words",        "calldata_bytes",
    "memory_words", "exec_base",         "deploy_code_bytes",
};

}  // namespace

std::string_view to_string(ResourceKind kind) {
  auto i = static_cast<std::size_t>(kind);
  if (i >= kKindNames.size()) throw Error(ErrorCode::unknown_event_kind, "kind #" + std::to_string(i));
  return kKindNames[i];
}

std::optional<ResourceKind> resource_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == name) return static_cast<ResourceKind>(i);
  return std::nullopt;
}

std::uint64_t LedgerState::balance_of(const AccountId& account, TokenId token,
                                      ResourceTrace* trace) const {
  if (trace) trace->push_back({ResourceKind::storage_read, 1});
  auto it = balances_.find({account, token});
  return it == balances_.end() ? 0 : it->second;
}

void LedgerState::set_approval_for_all(const AccountId& owner, const AccountId& op, bool approved) {
  if (owner == op) throw Error(ErrorCode::self_approval, "owner cannot approve itself");
  if (approved)
    approvals_.insert({owner, op});
  else
    approvals_.erase({owner, op});
}

bool LedgerState::is_approved_for_all(const AccountId& owner, const AccountId& op) const {
  return approvals_.contains({owner, op});
}

void LedgerState::check_transfer(const AccountId& op, const AccountId& from,
                                 std::span<const TokenId> ids,
                                 std::span<const std::uint64_t> amounts) const {
  if (ids.size() != amounts.size())
    throw Error(ErrorCode::length_mismatch, std::to_string(ids.size()) + " ids vs " +
                                                std::to_string(amounts.size()) + " amounts");
  if (ids.empty()) throw Error(ErrorCode::empty_batch, "transfer needs at least one id");
  if (op != from && !is_approved_for_all(from, op))
    throw Error(ErrorCode::not_authorized, op.to_hex() + " may not move tokens of " + from.to_hex());

  // Repeated ids draw on the same slot, so debits accumulate.
  std::map<TokenId, std::uint64_t> pending;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    auto& debit = pending[ids[k]];
    debit += amounts[k];
    if (balance_of(from, ids[k]) < debit)
      throw Error(ErrorCode::insufficient_balance,
                  "token " + std::to_string(ids[k].value) + " at position " + std::to_string(k),
                  ids[k].value);
  }
}

ResourceTrace LedgerState::transfer_balances(const AccountId& op, const AccountId& from,
                                             const AccountId& to, std::span<const TokenId> ids,
                                             std::span<const std::uint64_t> amounts) {
  check_transfer(op, from, ids, amounts);

  ResourceTrace trace;
  trace.push_back({ResourceKind::tx_base, 1});
  trace.push_back({ResourceKind::memory_words, kTransferMemoryWordsPerToken * ids.size()});
  for (std::size_t k = 0; k < ids.size(); ++k) {
    const TokenId id = ids[k];
    const std::uint64_t amount = amounts[k];

    if (amount > 0) {
      auto src = balances_.find({from, id});
      src->second -= amount;
      if (src->second == 0) balances_.erase(src);
    }
    trace.push_back({ResourceKind::storage_write_update, 1});

    const bool fresh = !balances_.contains({to, id});
    if (amount > 0) balances_[{to, id}] += amount;
    trace.push_back({fresh && amount > 0 ? ResourceKind::storage_write_new
                                         : ResourceKind::storage_write_update,
                     1});
  }
  return trace;
}

LedgerState::Minted LedgerState::mint_balances(const AccountId& to, std::uint64_t count) {
  if (count == 0) throw Error(ErrorCode::empty_batch, "mint needs at least one token");
  Minted out;
  out.ids.reserve(count);
  out.trace.push_back({ResourceKind::tx_base, 1});
  for (std::uint64_t i = 0; i < count; ++i) {
    const TokenId id = next_;
    next_.value += 1;
    balances_[{to, id}] = 1;
    supply_[id] = 1;
    out.ids.push_back(id);
    out.trace.push_back({ResourceKind::storage_write_new, 1});
  }
  return out;
}

std::uint64_t LedgerState::total_supply(TokenId token) const {
  auto it = supply_.find(token);
  return it == supply_.end() ? 0 : it->second;
}

}  // namespace zapledger
