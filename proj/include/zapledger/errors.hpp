#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zapledger {

enum class ErrorCode {
  self_approval,
  length_mismatch,
  empty_batch,
  not_authorized,
  insufficient_balance,
  non_positive_energy,
  invariant_violation,
  parse_error,
  hash_mismatch,
  unexpected_payload,
  missing_payload,
  not_owner,
  unknown_token,
  unsupported_operation,
  unknown_event_kind,
  mismatched_series,
  wrong_profile,
  incomplete_cycle,
  invalid_scenario,
  invalid_profile,
  invalid_argument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. Token-scoped errors (InsufficientBalance,
// HashMismatch, ...) carry the offending id.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::uint64_t> token = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::uint64_t> token() const noexcept { return token_; }

 private:
  ErrorCode code_;
  std::optional<std::uint64_t> token_;
};

}  // namespace zapledger
