#include "zapledger/strategy.hpp"

#include <algorithm>

namespace zapledger {

namespace {

void push_nonzero(ResourceTrace& trace, ResourceKind kind, std::uint64_t count) {
  if (count > 0) trace.push_back({kind, count});
}

}  // namespace

OpReceipt make_receipt(std::string op, StrategyKind strategy, std::uint64_t batch_size,
                       ResourceTrace trace, const PriceTable& prices) {
  auto priced = price_trace(trace, prices);
  OpReceipt r;
  r.op = std::move(op);
  r.strategy = strategy;
  r.batch_size = batch_size;
  r.gas_units = priced.gas_units;
  r.breakdown = std::move(priced.breakdown);
  r.trace = std::move(trace);
  return r;
}

ZapLedger::ZapLedger(StrategyKind kind, const ChainProfile& profile)
    : kind_(kind),
      prices_(profile.prices),
      calibration_(profile.calibration_for(kind)),
      store_(kind == StrategyKind::heavyweight ? MetadataStore{FullStore{}}
                                               : MetadataStore{HashedStore{}}) {}

ZapLedger::Deployed ZapLedger::deploy(StrategyKind kind, const ChainProfile& profile) {
  ZapLedger ledger(kind, profile);
  ResourceTrace trace{{ResourceKind::tx_base, 1},
                      {ResourceKind::deploy_code_bytes, ledger.calibration_.code_size_bytes}};
  push_nonzero(trace, ResourceKind::exec_base, ledger.calibration_.constructor_gas);
  auto r = ledger.receipt("deploy", 1, std::move(trace));
  return {std::move(ledger), std::move(r)};
}

std::optional<MetadataHash> ZapLedger::stored_hash(TokenId id) const {
  if (const auto* hashed = std::get_if<HashedStore>(&store_)) {
    auto it = hashed->find(id);
    if (it != hashed->end()) return it->second;
  }
  return std::nullopt;
}

ZapLedger::MintOutcome ZapLedger::mint_zaps(const AccountId& to, std::vector<Zap> zaps) {
  if (zaps.empty()) throw Error(ErrorCode::empty_batch, "mint needs at least one zap");
  for (const auto& z : zaps) {
    z.validate();
    if (z.current_owner() != to)
      throw Error(ErrorCode::invariant_violation, "zap owner must be the mint recipient");
  }

  const std::uint64_t n = zaps.size();
  auto minted = core_.mint_balances(to, n);
  ResourceTrace trace = std::move(minted.trace);
  push_nonzero(trace, ResourceKind::exec_base, calibration_.mint_base);

  MintOutcome out;
  out.payloads.reserve(n);
  std::uint64_t memory_words = 0;
  for (std::size_t k = 0; k < zaps.size(); ++k) {
    zaps[k].token_id = minted.ids[k];
    std::string bytes = canonical_bytes(zaps[k]);
    if (kind_ == StrategyKind::heavyweight) {
      push_nonzero(trace, ResourceKind::calldata_bytes, calibration_.typed_calldata_bytes);
      trace.push_back({ResourceKind::storage_write_new, kHeavyRecordWords});
      memory_words += kHeavyRecordWords;
      std::get<FullStore>(store_).emplace(zaps[k].token_id, zaps[k]);
    } else {
      const auto words = words_for(bytes.size());
      trace.push_back({ResourceKind::calldata_bytes, bytes.size()});
      trace.push_back({ResourceKind::hash_words, words});
      trace.push_back({ResourceKind::storage_write_new, 1});
      memory_words += words;
      std::get<HashedStore>(store_).emplace(zaps[k].token_id, metadata_hash(bytes));
    }
    push_nonzero(trace, ResourceKind::exec_base, calibration_.mint_per_token);
    out.payloads.push_back(std::move(bytes));
  }
  trace.push_back({ResourceKind::memory_words, memory_words});

  out.ids = std::move(minted.ids);
  out.zaps = std::move(zaps);
  out.receipt = receipt("mint", n, std::move(trace));
  return out;
}

ZapLedger::TransferOutcome ZapLedger::transfer_zaps(
    const AccountId& op, const AccountId& from, const AccountId& to, std::span<const TokenId> ids,
    const GeoPoint& new_location, const std::optional<std::vector<std::string>>& payloads) {
  if (kind_ == StrategyKind::lightweight) {
    if (!payloads) throw Error(ErrorCode::missing_payload, "lightweight transfers carry metadata");
    if (payloads->size() != ids.size())
      throw Error(ErrorCode::length_mismatch, "one payload per transferred id");
  } else if (payloads) {
    throw Error(ErrorCode::unexpected_payload,
                std::string(to_string(kind_)) + " transfers take no metadata");
  }
  new_location.validate();
  const std::vector<std::uint64_t> amounts(ids.size(), 1);
  core_.check_transfer(op, from, ids, amounts);

  // Everything that can fail is computed before the first mutation.
  std::vector<Zap> updated;
  std::vector<std::string> updated_bytes;
  if (kind_ == StrategyKind::heavyweight) {
    const auto& full = std::get<FullStore>(store_);
    for (auto id : ids) {
      auto it = full.find(id);
      if (it == full.end())
        throw Error(ErrorCode::unknown_token, "no record for token " + std::to_string(id.value), id.value);
      updated.push_back(append_history(it->second, to, new_location));
    }
  } else if (kind_ == StrategyKind::lightweight) {
    const auto& hashed = std::get<HashedStore>(store_);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      auto it = hashed.find(ids[k]);
      if (it == hashed.end() || metadata_hash((*payloads)[k]) != it->second)
        throw Error(ErrorCode::hash_mismatch,
                    "payload does not match stored digest of token " + std::to_string(ids[k].value),
                    ids[k].value);
      updated.push_back(append_history(parse_zap((*payloads)[k]), to, new_location));
      updated_bytes.push_back(canonical_bytes(updated.back()));
    }
  }

  ResourceTrace trace = core_.transfer_balances(op, from, to, ids, amounts);
  push_nonzero(trace, ResourceKind::exec_base, calibration_.transfer_base);
  std::uint64_t memory_words = 0;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    switch (kind_) {
      case StrategyKind::heavyweight:
        trace.push_back({ResourceKind::storage_read, kHeavyRecordWords});
        trace.push_back({ResourceKind::storage_write_update, kHeavyHistoryWords});
        std::get<FullStore>(store_)[ids[k]] = std::move(updated[k]);
        memory_words += calibration_.record_memory_words;
        break;
      case StrategyKind::featherweight:
        break;
      case StrategyKind::lightweight: {
        const auto& old_bytes = (*payloads)[k];
        const auto old_words = words_for(old_bytes.size());
        const auto new_words = words_for(updated_bytes[k].size());
        trace.push_back({ResourceKind::storage_read, 1});
        trace.push_back({ResourceKind::calldata_bytes, old_bytes.size()});
        trace.push_back({ResourceKind::hash_words, old_words});
        trace.push_back({ResourceKind::hash_words, new_words});
        trace.push_back({ResourceKind::storage_write_update, 1});
        memory_words += old_words + new_words;
        std::get<HashedStore>(store_)[ids[k]] = metadata_hash(updated_bytes[k]);
        break;
      }
    }
    push_nonzero(trace, ResourceKind::exec_base, calibration_.transfer_per_token);
  }
  push_nonzero(trace, ResourceKind::memory_words, memory_words);

  TransferOutcome out;
  out.receipt = receipt("transfer", ids.size(), std::move(trace));
  if (kind_ == StrategyKind::lightweight) out.updated_payloads = std::move(updated_bytes);
  return out;
}

OpReceipt ZapLedger::modify_zap(const AccountId& caller, TokenId id, const MetadataHash& new_hash) {
  if (kind_ != StrategyKind::featherweight)
    throw Error(ErrorCode::unsupported_operation, "modify is a featherweight operation");
  auto& hashed = std::get<HashedStore>(store_);
  auto it = hashed.find(id);
  if (it == hashed.end())
    throw Error(ErrorCode::unknown_token, "token " + std::to_string(id.value), id.value);
  if (core_.balance_of(caller, id) != 1)
    throw Error(ErrorCode::not_owner, caller.to_hex() + " does not hold token " + std::to_string(id.value),
                id.value);
  it->second = new_hash;
  ResourceTrace trace{{ResourceKind::tx_base, 1}};
  push_nonzero(trace, ResourceKind::exec_base, calibration_.modify_base);
  trace.push_back({ResourceKind::storage_write_update, 1});
  return receipt("modify", 1, std::move(trace));
}

Zap ZapLedger::read_zap(TokenId id, std::optional<std::string_view> payload) const {
  if (!core_.exists(id))
    throw Error(ErrorCode::unknown_token, "token " + std::to_string(id.value), id.value);
  if (const auto* full = std::get_if<FullStore>(&store_)) {
    if (payload) throw Error(ErrorCode::unexpected_payload, "heavyweight stores records on-ledger");
    return full->at(id);
  }
  if (!payload) throw Error(ErrorCode::missing_payload, "hashed strategies need the record bytes");
  if (metadata_hash(*payload) != std::get<HashedStore>(store_).at(id))
    throw Error(ErrorCode::hash_mismatch, "payload does not match token " + std::to_string(id.value),
                id.value);
  return parse_zap(*payload);
}

}  // namespace zapledger
