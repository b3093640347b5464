#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zapledger/curves.hpp"
#include "zapledger/market.hpp"
#include "zapledger/strategy.hpp"

namespace zapledger {

// Receipts: one minified JSON object per line,
//   {"op":..,"strategy":..,"n":..,"gas_units":..,"breakdown":[{"kind":..,"units":..},..]}
std::string receipt_to_json(const OpReceipt& receipt);
std::string receipts_to_jsonl(std::span<const OpReceipt> receipts);
/// Blank lines are skipped. Throws ParseError on malformed lines,
/// UnknownEventKind on unknown breakdown kinds and InvariantViolation when
/// gas_units differs from the breakdown sum. Parsed receipts carry no trace.
std::vector<OpReceipt> receipts_from_jsonl(std::string_view text);

std::string event_to_json(const SimEvent& event);
std::string events_to_jsonl(std::span<const SimEvent> events);

std::string statements_to_csv(std::span<const BillingStatement> statements);
std::string feasibility_to_csv(std::span<const FeasibilityRow> rows);
std::string curve_to_csv(std::span<const CurvePoint> curve);

/// Scenario document. Households default their account to
/// AccountId::for_household(index) and their price to the utility rate.
GridScenario scenario_from_json(std::string_view text);
std::string scenario_to_json(const GridScenario& scenario);
GridScenario load_scenario(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace zapledger
