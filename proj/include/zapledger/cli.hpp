#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "zapledger/gas.hpp"
#include "zapledger/profile.hpp"

namespace zapledger::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRuntime = 3;

struct RunConfig {
  std::optional<StrategyKind> strategy;
  std::string profile = "ethereum";
  std::filesystem::path scenario;
  std::filesystem::path receipts;
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::uint64_t n_max = 100;
  Rate rate = Rate::standard;
};

int cmd_bench(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_report(const RunConfig& config, std::ostream& out);

/// Parses argv, applies ZAPLEDGER_OUT, dispatches, and maps failures to exit
/// codes: 2 for validation problems, 3 for anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zapledger::cli
