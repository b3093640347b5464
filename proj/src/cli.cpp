#include "zapledger/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "zapledger/artifacts.hpp"
#include "zapledger/curves.hpp"
#include "zapledger/market.hpp"

namespace zapledger::cli {

namespace {

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class F>
auto validated(F&& load) {
  try {
    return load();
  } catch (const Error& e) {
    throw ValidationError(e.what());
  }
}

std::string file_stem(CurveOp op) {
  return op == CurveOp::transfer_with_modify ? "transfer_modify" : std::string(to_string(op));
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

int cmd_bench(const RunConfig& config, std::ostream& out) {
  const auto profile = validated([&] { return resolve_profile(config.profile); });
  if (config.n_max == 0) throw ValidationError("--n-max must be at least 1");
  const auto& dir = config.out_dir;

  std::vector<StrategyKind> kinds;
  if (config.strategy)
    kinds.push_back(*config.strategy);
  else
    kinds.assign(kAllStrategies.begin(), kAllStrategies.end());

  const std::vector<CurveOp> ops = {CurveOp::mint, CurveOp::transfer, CurveOp::transfer_with_modify};
  std::map<CurveOp, std::vector<CurvePoint>> baseline;
  for (auto op : ops)
    baseline[op] = per_token_curve(StrategyKind::heavyweight, op, config.n_max, profile);

  std::vector<OpReceipt> receipts;
  const std::uint64_t table_batch = std::min<std::uint64_t>(10, config.n_max);
  for (auto kind : kinds) {
    const std::string name(to_string(kind));
    receipts.push_back(ZapLedger::deploy(kind, profile).receipt);
    receipts.push_back(run_batch(kind, CurveOp::mint, 1, profile));
    receipts.push_back(run_batch(kind, CurveOp::transfer, 1, profile));
    if (kind == StrategyKind::featherweight) {
      auto ledger = ZapLedger::deploy(kind, profile).ledger;
      auto minted = ledger.mint_zaps(fixture_sender(), {fixture_zap(1)});
      receipts.push_back(ledger.modify_zap(fixture_sender(), minted.ids.front(),
                                           metadata_hash(minted.payloads.front())));
    }
    if (table_batch > 1) {
      receipts.push_back(run_batch(kind, CurveOp::mint, table_batch, profile));
      receipts.push_back(run_batch(kind, CurveOp::transfer, table_batch, profile));
    }

    for (auto op : ops) {
      const auto curve = kind == StrategyKind::heavyweight
                             ? baseline[op]
                             : per_token_curve(kind, op, config.n_max, profile);
      write_file(dir / ("curve_" + name + "_" + file_stem(op) + ".csv"), curve_to_csv(curve));

      std::ostringstream norm;
      norm << "n,baseline_gas,candidate_gas,normalized,reduction\n" << std::fixed << std::setprecision(6);
      for (std::size_t i = 0; i < curve.size(); ++i) {
        const double ratio =
            static_cast<double>(curve[i].gas_units) / static_cast<double>(baseline[op][i].gas_units);
        norm << curve[i].n << ',' << baseline[op][i].gas_units << ',' << curve[i].gas_units << ','
             << ratio << ',' << 1.0 - ratio << '\n';
      }
      write_file(dir / ("normalized_" + name + "_" + file_stem(op) + ".csv"), norm.str());

      out << name << ' ' << to_string(op) << ": n=1 " << curve.front().gas_units
          << " gas, n=" << curve.back().n << ' ' << std::fixed << std::setprecision(1)
          << curve.back().gas_per_token << " gas/token\n";
    }
  }
  write_file(dir / "receipts.jsonl", receipts_to_jsonl(receipts));
  out << "wrote " << receipts.size() << " receipts and curves to " << dir.string() << '\n';
  return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const auto profile = validated([&] { return resolve_profile(config.profile); });
  const auto scenario = validated([&] { return load_scenario(config.scenario); });
  const auto kind = config.strategy.value_or(StrategyKind::lightweight);

  const auto result = run(scenario, kind, profile, config.seed);
  const auto feasibility = schedule_feasibility(result, profile);

  const auto& dir = config.out_dir;
  write_file(dir / "events.jsonl", events_to_jsonl(result.events));
  write_file(dir / "statements.csv", statements_to_csv(result.statements));
  write_file(dir / "receipts.jsonl", receipts_to_jsonl(result.receipts));
  write_file(dir / "feasibility.csv", feasibility_to_csv(feasibility));

  std::map<std::string, std::uint64_t> op_counts;
  for (const auto& e : result.events) op_counts[e.kind] += 1;
  std::uint64_t op_gas = 0, deploy_gas = 0, op_cents = 0, deploy_cents = 0;
  for (const auto& r : result.receipts) {
    const auto cents = gas_to_money(r.gas_units, config.rate, profile).usd_cents;
    if (r.op == "deploy") {
      deploy_gas += r.gas_units;
      deploy_cents += cents;
    } else {
      op_gas += r.gas_units;
      op_cents += cents;
    }
  }

  std::ostringstream s;
  s << "strategy: " << to_string(kind) << '\n'
    << "profile: " << profile.name << '\n'
    << "seed: " << result.seed << '\n'
    << "ticks: " << result.ticks << '\n';
  for (const char* k : {"mint", "transfer", "modify", "utility_mint", "utility_transfer"})
    s << k << " ops: " << op_counts[k] << '\n';
  s << "operation gas: " << op_gas << '\n'
    << "deployment gas: " << deploy_gas << '\n'
    << "rate: " << to_string(config.rate) << '\n'
    << "total op spend: " << format_usd(op_cents) << " USD\n"
    << "deployment spend: " << format_usd(deploy_cents) << " USD\n";
  if (!profile.gas_priced) {
    const std::uint64_t month_ticks = 30 * scenario.ticks_per_day;
    const std::uint64_t months = std::max<std::uint64_t>(1, (result.ticks + month_ticks - 1) / month_ticks);
    s << "hosting: " << format_usd(gasfree_cost(1, 1, profile).usd_cents) << " USD/node-month\n"
      << "hosting for run (1 node, " << months
      << " month(s)): " << format_usd(gasfree_cost(1, months, profile).usd_cents) << " USD\n";
  }
  for (const auto& row : feasibility)
    s << "feasibility " << row.op << ": " << row.fits << '/' << row.count
      << " within window, worst " << std::fixed << std::setprecision(3) << row.max_total_s << " s\n";

  write_file(dir / "summary.txt", s.str());
  out << s.str();
  return kExitOk;
}

int cmd_report(const RunConfig& config, std::ostream& out) {
  const auto profile = validated([&] { return resolve_profile(config.profile); });
  const auto receipts = validated([&] { return receipts_from_jsonl(read_file(config.receipts)); });

  std::ostringstream csv;
  csv << "strategy,op,n,gas_units,fast_gwei,fast_usd,standard_gwei,standard_usd\n";
  out << pad("strategy", 14) << pad("op", 16) << pad("n", 5) << pad("gas", 12) << pad("fast gwei", 14)
      << pad("fast usd", 10) << pad("std gwei", 14) << pad("std usd", 10) << '\n';
  for (const auto& r : receipts) {
    const auto fast = gas_to_money(r.gas_units, Rate::fast, profile);
    const auto standard = gas_to_money(r.gas_units, Rate::standard, profile);
    csv << to_string(r.strategy) << ',' << r.op << ',' << r.batch_size << ',' << r.gas_units << ','
        << fast.gwei << ',' << format_usd(fast.usd_cents) << ',' << standard.gwei << ','
        << format_usd(standard.usd_cents) << '\n';
    out << pad(std::string(to_string(r.strategy)), 14) << pad(r.op, 16)
        << pad(std::to_string(r.batch_size), 5) << pad(std::to_string(r.gas_units), 12)
        << pad(std::to_string(fast.gwei), 14) << pad(format_usd(fast.usd_cents), 10)
        << pad(std::to_string(standard.gwei), 14) << pad(format_usd(standard.usd_cents), 10) << '\n';
  }
  write_file(config.out_dir / "report.csv", csv.str());
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy-token ledger gas benchmarks and neighbourhood market simulator",
               "zapledger"};
  app.require_subcommand(1);

  RunConfig config;
  std::string strategy, rate = "standard";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--profile", config.profile, "ethereum, quorum, or a profile file")
        ->capture_default_str();
    sub->add_option("--out", config.out_dir, "Output directory (ZAPLEDGER_OUT overrides)")
        ->capture_default_str();
  };

  auto* bench = app.add_subcommand("bench", "Per-token gas curves and reduction series");
  common(bench);
  bench->add_option("--strategy", strategy, "heavyweight, featherweight or lightweight");
  bench->add_option("--n-max", config.n_max, "Largest batch size")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Run a neighbourhood market scenario");
  common(simulate);
  simulate->add_option("--scenario", config.scenario, "Scenario file")->required();
  simulate->add_option("--strategy", strategy, "heavyweight, featherweight or lightweight");
  simulate->add_option("--seed", config.seed, "Overrides the scenario seed");
  simulate->add_option("--rate", rate, "fast or standard")->capture_default_str();

  auto* report = app.add_subcommand("report", "Cost table from a receipts file");
  common(report);
  report->add_option("--receipts", config.receipts, "receipts.jsonl to price")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitValidation;
  }

  if (const char* env = std::getenv("ZAPLEDGER_OUT"); env && *env) config.out_dir = env;

  try {
    if (!strategy.empty()) {
      config.strategy = strategy_from_string(strategy);
      if (!config.strategy) throw ValidationError("unknown strategy '" + strategy + "'");
    }
    auto parsed_rate = rate_from_string(rate);
    if (!parsed_rate) throw ValidationError("unknown rate '" + rate + "'");
    config.rate = *parsed_rate;

    if (simulate->parsed() && !std::filesystem::is_regular_file(config.scenario))
      throw ValidationError("scenario file '" + config.scenario.string() + "' not found");
    if (report->parsed() && !std::filesystem::is_regular_file(config.receipts))
      throw ValidationError("receipts file '" + config.receipts.string() + "' not found");

    if (bench->parsed()) return cmd_bench(config, out);
    if (simulate->parsed()) return cmd_simulate(config, out);
    return cmd_report(config, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace zapledger::cli
