#include <cstdlib>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "zapledger/artifacts.hpp"
#include "zapledger/cli.hpp"

using namespace zapledger;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "zapledger");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = zapledger::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scenario(const char* name) { return source_path(std::string("scenarios/") + name + ".json").string(); }

}  // namespace

TEST(Cli, BenchWritesCurvesAndReceipts) {
  const auto dir = scratch_dir("bench");
  const auto r = invoke({"bench", "--strategy", "featherweight", "--n-max", "10", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto curve = read_file(dir / "curve_featherweight_transfer.csv");
  const auto last = curve.substr(curve.rfind("\n10,") + 1);
  const double per_token = std::stod(last.substr(last.rfind(',') + 1));
  EXPECT_NEAR(per_token, 46971.1, 0.05 * 46971.1);

  const auto receipts = receipts_from_jsonl(read_file(dir / "receipts.jsonl"));
  ASSERT_FALSE(receipts.empty());
  EXPECT_EQ(receipts.front().op, "deploy");
  EXPECT_EQ(receipts.front().gas_units, 3702977u);

  const auto norm = read_file(dir / "normalized_featherweight_transfer_modify.csv");
  EXPECT_EQ(norm.substr(0, norm.find('\n')), "n,baseline_gas,candidate_gas,normalized,reduction");
}

TEST(Cli, BenchSingleRowEqualsSingleOp) {
  const auto dir = scratch_dir("bench1");
  ASSERT_EQ(invoke({"bench", "--n-max", "1", "--out", dir.string()}).code, 0);
  for (auto kind : kAllStrategies) {
    const std::string name(to_string(kind));
    const auto curve = read_file(dir / ("curve_" + name + "_mint.csv"));
    const auto gas = run_batch(kind, CurveOp::mint, 1, ChainProfile::ethereum()).gas_units;
    EXPECT_NE(curve.find("\n1," + std::to_string(gas) + ","), std::string::npos) << name;
    EXPECT_EQ(std::count(curve.begin(), curve.end(), '\n'), 2);
  }
  const auto self = read_file(dir / "normalized_heavyweight_transfer.csv");
  EXPECT_NE(self.find(",1.000000,0.000000\n"), std::string::npos);
}

TEST(Cli, SimulateMicroScenarioSpend) {
  const auto dir = scratch_dir("micro");
  const auto r = invoke({"simulate", "--scenario", scenario("micro_2house_30day"), "--strategy", "lightweight",
                      "--rate", "standard", "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = read_file(dir / "summary.txt");
  EXPECT_NE(summary.find("total op spend: 36115.20 USD\n"), std::string::npos) << summary;
  for (const char* f : {"events.jsonl", "statements.csv", "receipts.jsonl", "feasibility.csv"})
    EXPECT_TRUE(std::filesystem::exists(dir / f)) << f;
}

TEST(Cli, SimulateIsByteIdenticalAcrossReruns) {
  const auto a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
  for (const auto& d : {a, b})
    ASSERT_EQ(invoke({"simulate", "--scenario", scenario("neighbourhood_4house"), "--strategy", "featherweight",
                   "--seed", "42", "--out", d.string()})
                  .code,
              0);
  for (const char* f : {"events.jsonl", "statements.csv", "receipts.jsonl", "feasibility.csv", "summary.txt"})
    EXPECT_EQ(read_file(a / f), read_file(b / f)) << f;
}

TEST(Cli, SimulateQuorumHosting) {
  const auto dir = scratch_dir("quorum");
  const auto r = invoke({"simulate", "--scenario", scenario("single_household"), "--profile", "quorum", "--out",
                      dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total op spend: 0.00 USD\n"), std::string::npos);
  EXPECT_NE(r.out.find("hosting: 80.00 USD/node-month\n"), std::string::npos);
}

TEST(Cli, ReportPricesReceipts) {
  const auto dir = scratch_dir("report");
  std::vector<OpReceipt> rs{ZapLedger::deploy(StrategyKind::featherweight, ChainProfile::ethereum()).receipt};
  OpReceipt lw;
  lw.op = "transfer";
  lw.strategy = StrategyKind::lightweight;
  lw.gas_units = 169077;
  lw.breakdown = {{ResourceKind::tx_base, 21000}, {ResourceKind::exec_base, 148077}};
  rs.push_back(lw);
  write_file(dir / "in.jsonl", receipts_to_jsonl(rs));
  const auto r = invoke({"report", "--receipts", (dir / "in.jsonl").string(), "--out", dir.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = read_file(dir / "report.csv");
  EXPECT_NE(csv.find("featherweight,deploy,1,3702977,111089310,26.66,96277402,23.11\n"), std::string::npos);
  EXPECT_NE(csv.find("lightweight,transfer,1,169077,5072310,1.22,4396002,1.06\n"), std::string::npos);

  write_file(dir / "empty.jsonl", "");
  const auto e = invoke({"report", "--receipts", (dir / "empty.jsonl").string(), "--out", dir.string()});
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(std::count(e.out.begin(), e.out.end(), '\n'), 1);
}

TEST(Cli, ExitCodes) {
  const auto dir = scratch_dir("errors");
  EXPECT_EQ(invoke({}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"bench", "--strategy", "middleweight"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"bench", "--n-max", "0", "--out", dir.string()}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"simulate", "--scenario", "/nonexistent.json"}).code, cli::kExitValidation);
  EXPECT_EQ(invoke({"simulate", "--scenario", scenario("single_household"), "--rate", "slow"}).code,
            cli::kExitValidation);
  EXPECT_EQ(invoke({"bench", "--profile", "/nonexistent/profile.json"}).code, cli::kExitValidation);
  write_file(dir / "bad.jsonl", "{oops\n");
  EXPECT_EQ(invoke({"report", "--receipts", (dir / "bad.jsonl").string(), "--out", dir.string()}).code,
            cli::kExitValidation);
  write_file(dir / "bad_scenario.json", R"({"households":[],"days":3,"cycle_days":2})");
  EXPECT_EQ(invoke({"simulate", "--scenario", (dir / "bad_scenario.json").string(), "--out", dir.string()}).code,
            cli::kExitValidation);
  // Output path is a regular file, so writing fails at run time.
  write_file(dir / "blocker", "x");
  EXPECT_EQ(invoke({"bench", "--n-max", "1", "--out", (dir / "blocker").string()}).code, cli::kExitRuntime);
}

TEST(Cli, EnvironmentOverridesOut) {
  const auto dir = scratch_dir("env");
  ::setenv("ZAPLEDGER_OUT", dir.string().c_str(), 1);
  const auto r = invoke({"bench", "--strategy", "lightweight", "--n-max", "2", "--out", "/nonexistent/ignored"});
  ::unsetenv("ZAPLEDGER_OUT");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::filesystem::exists(dir / "curve_lightweight_mint.csv"));
}
