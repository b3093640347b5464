#include <algorithm>

#include "support.hpp"
#include "zapledger/artifacts.hpp"
#include "zapledger/market.hpp"

using namespace zapledger;

namespace {

const ChainProfile eth = ChainProfile::ethereum();

Kwh kwh(const char* s) { return Kwh::parse(s); }

Household house(std::uint32_t i, const char* gen, const char* cons) {
  Household h;
  h.account = AccountId::for_household(i);
  h.location = {Degrees::parse("45.5"), Degrees::parse("-73.5")};
  h.generation_per_tick = kwh(gen);
  h.generator_id = h.generation_per_tick.raw() > 0 ? i + 1 : 0;
  h.consumption_per_tick = kwh(cons);
  return h;
}

// Hourly ticks keep property runs small.
GridScenario hourly(std::vector<Household> hs, std::uint64_t days, std::uint64_t cycle_days) {
  GridScenario s;
  s.households = std::move(hs);
  s.tick_seconds = 3600;
  s.ticks_per_day = 24;
  s.days = days;
  s.cycle_days = cycle_days;
  return s;
}

GridScenario random_scenario(std::mt19937_64& rng) {
  std::vector<Household> hs;
  const auto n = 2 + rng() % 4;
  for (std::uint32_t i = 0; i < n; ++i) {
    auto h = house(i, "0", "0");
    if (rng() % 3 != 0) {
      h.generation_per_tick = Kwh::from_raw(static_cast<std::int64_t>(1 + rng() % 900));
      h.generator_id = i + 1;
      if (rng() % 2) h.price_cents_per_kwh = 10 + rng() % 40;
    }
    h.consumption_per_tick = Kwh::from_raw(static_cast<std::int64_t>(rng() % 900));
    h.self_consume = rng() % 4 != 0;
    hs.push_back(h);
  }
  const std::uint64_t cycle = 1 + rng() % 2;
  auto s = hourly(std::move(hs), cycle * (1 + rng() % 2), cycle);
  s.seed = rng();
  return s;
}

Kwh remaining_total(const SimResult& r) {
  Kwh sum;
  for (const auto& [id, left] : r.spent_registry) sum += left;
  return sum;
}

// Walks the holdings as a plain list, one watt-hour at a time.
std::pair<std::vector<std::int64_t>, std::int64_t> naive_consume(std::vector<Holding> hs,
                                                                 std::int64_t demand) {
  std::sort(hs.begin(), hs.end(), [](const Holding& a, const Holding& b) {
    return std::pair{a.created_at, a.token.value} < std::pair{b.created_at, b.token.value};
  });
  std::vector<std::int64_t> left;
  for (const auto& h : hs) left.push_back(h.remaining.raw());
  for (auto& l : left)
    while (l > 0 && demand > 0) {
      --l;
      --demand;
    }
  return {left, demand};
}

}  // namespace

TEST(Viability, PublishedArithmetic) {
  const auto r = viability_report(2, 103, 106, 30);
  EXPECT_EQ(r.mint_cents_per_house_day, 29664u);
  EXPECT_EQ(r.transfer_cents_per_house_day, 30528u);
  EXPECT_EQ(r.monthly_total.usd_cents, 3611520u);
  EXPECT_EQ(viability_report(0, 103, 106, 30).monthly_total.usd_cents, 0u);
  EXPECT_EQ(viability_report(1, 103, 106, 1).monthly_total.usd_cents, 60192u);
}

TEST(Consume, Examples) {
  const std::vector<Holding> two{{TokenId{1}, 0, kwh("0.5")}, {TokenId{2}, 300, kwh("0.5")}};
  auto r = consume_step(two, kwh("0.75"));
  ASSERT_EQ(r.holdings.size(), 1u);
  EXPECT_EQ(r.holdings[0].token, TokenId{2});
  EXPECT_EQ(r.holdings[0].remaining, kwh("0.25"));
  EXPECT_EQ(r.deficit, Kwh{});
  EXPECT_EQ(consume_step({}, kwh("1")).deficit, kwh("1"));
  EXPECT_ZAP_ERROR(consume_step(two, -kwh("1")), ErrorCode::invalid_argument);
}

TEST(Consume, MatchesNaiveListWalk) {
  std::mt19937_64 rng(2024);
  for (int c = 0; c < 1000; ++c) {
    std::vector<Holding> hs;
    const auto n = rng() % 8;
    for (std::uint64_t i = 0; i < n; ++i)
      hs.push_back({TokenId{1 + rng() % 1000}, static_cast<std::int64_t>(rng() % 5) * 300,
                    Kwh::from_raw(static_cast<std::int64_t>(rng() % 600))});
    // Unique ids, as on a ledger.
    std::sort(hs.begin(), hs.end(), [](auto& a, auto& b) { return a.token < b.token; });
    hs.erase(std::unique(hs.begin(), hs.end(), [](auto& a, auto& b) { return a.token == b.token; }),
             hs.end());
    std::shuffle(hs.begin(), hs.end(), rng);
    const auto demand = static_cast<std::int64_t>(rng() % 2500);

    const auto got = consume_step(hs, Kwh::from_raw(demand));
    const auto [left, deficit] = naive_consume(hs, demand);
    EXPECT_EQ(got.deficit.raw(), deficit);
    std::vector<std::int64_t> nonzero;
    for (auto l : left)
      if (l > 0) nonzero.push_back(l);
    std::vector<std::int64_t> actual;
    for (const auto& h : got.holdings) actual.push_back(h.remaining.raw());
    EXPECT_EQ(actual, nonzero);
    std::int64_t drained = 0, held = 0;
    for (const auto& d : got.drained) drained += d.amount.raw();
    for (const auto& h : hs) held += h.remaining.raw();
    EXPECT_EQ(drained + got.deficit.raw(), demand);
    EXPECT_LE(drained, held);
  }
}

TEST(Settle, Examples) {
  const std::vector<AccountId> accounts{AccountId::for_household(0), AccountId::for_household(1)};
  CycleActivity self;
  self.ticks_expected = self.ticks_recorded = 1;
  self.produced = {{accounts[0], kwh("1")}};
  self.consumed = {{accounts[0], kwh("1"), Kwh{}}};
  for (const auto& s : settle_cycle(self, accounts, 30)) {
    EXPECT_EQ(s.revenue_cents, 0u);
    EXPECT_EQ(s.purchases_cents, 0u);
    EXPECT_EQ(s.utility_charge_cents, 0u);
  }

  CycleActivity bought = self;
  for (std::uint64_t i = 1; i <= 10; ++i) bought.purchased.push_back({accounts[1], accounts[0], TokenId{i}, 30});
  const auto st = settle_cycle(bought, accounts, 30);
  EXPECT_EQ(st[1].purchases_cents, 300u);
  EXPECT_EQ(st[0].revenue_cents, 300u);

  CycleActivity open = self;
  open.ticks_expected = 2;
  EXPECT_ZAP_ERROR(settle_cycle(open, accounts, 30), ErrorCode::incomplete_cycle);
}

TEST(Run, HandWorkedThreeHouseholdFixture) {
  const auto scenario = load_scenario(source_path("scenarios/hand_3house_2tick.json"));
  for (auto kind : kAllStrategies) {
    const auto r = run(scenario, kind, eth);
    ASSERT_EQ(r.statements.size(), 3u);
    const auto& s = r.statements;
    EXPECT_EQ(s[0].produced, kwh("2")); EXPECT_EQ(s[0].consumed, kwh("0.5"));
    EXPECT_EQ(s[0].revenue_cents, 30u); EXPECT_EQ(s[0].purchases_cents, 0u);
    EXPECT_EQ(s[0].utility_charge_cents, 0u); EXPECT_EQ(s[0].zaps_received_from_utility, 0u);
    EXPECT_EQ(s[1].produced, Kwh{}); EXPECT_EQ(s[1].consumed, kwh("1.5"));
    EXPECT_EQ(s[1].revenue_cents, 0u); EXPECT_EQ(s[1].purchases_cents, 30u);
    EXPECT_EQ(s[1].utility_charge_cents, 23u); EXPECT_EQ(s[1].zaps_received_from_utility, 1u);
    EXPECT_EQ(s[2].produced, kwh("1")); EXPECT_EQ(s[2].consumed, kwh("2"));
    EXPECT_EQ(s[2].revenue_cents, 0u); EXPECT_EQ(s[2].purchases_cents, 0u);
    EXPECT_EQ(s[2].utility_charge_cents, 30u); EXPECT_EQ(s[2].zaps_received_from_utility, 1u);
    EXPECT_EQ(r.spent_registry.at(TokenId{1}), kwh("0.5"));
    EXPECT_EQ(r.spent_registry.at(TokenId{3}), kwh("0.25"));
    EXPECT_EQ(remaining_total(r), kwh("0.75"));
  }
}

TEST(Run, SingleBalancedHouseholdOneDay) {
  GridScenario s;
  s.households = {house(0, "0.100", "0.100")};
  const auto r = run(s, StrategyKind::lightweight, eth);
  std::size_t mints = 0, transfers = 0;
  for (const auto& e : r.events) {
    mints += e.kind == "mint";
    transfers += e.kind == "transfer";
  }
  EXPECT_EQ(mints, 288u);
  EXPECT_EQ(transfers, 0u);
  ASSERT_EQ(r.statements.size(), 1u);
  EXPECT_EQ(r.statements[0].utility_charge_cents, 0u);
}

TEST(Run, EmptyNeighbourhood) {
  GridScenario s;
  const auto r = run(s, StrategyKind::featherweight, eth);
  EXPECT_TRUE(r.events.empty());
  EXPECT_TRUE(r.receipts.empty());
  EXPECT_TRUE(r.statements.empty());
}

TEST(Run, ProducerConsumerSingleTick) {
  GridScenario s;
  s.households = {house(0, "1.000", "0"), house(1, "0", "1.000")};
  s.max_ticks = 1;
  const auto r = run(s, StrategyKind::lightweight, eth);
  std::size_t mints = 0, transfers = 0;
  for (const auto& e : r.events) {
    mints += e.kind == "mint";
    transfers += e.kind == "transfer";
  }
  EXPECT_EQ(mints, 1u);
  EXPECT_EQ(transfers, 1u);
  EXPECT_EQ(r.statements[0].revenue_cents, 30u);
  EXPECT_EQ(r.statements[1].purchases_cents, 30u);
  EXPECT_EQ(r.statements[1].utility_charge_cents, 0u);
}

TEST(Run, MintCountLaw) {
  GridScenario s;
  s.households = {house(0, "0.2", "0.1"), house(1, "0", "0.3"), house(2, "0.05", "0")};
  s.days = 2;
  s.cycle_days = 1;
  for (auto kind : kAllStrategies) {
    const auto r = run(s, kind, eth);
    const auto mints = std::count_if(r.events.begin(), r.events.end(),
                                     [](const SimEvent& e) { return e.kind == "mint"; });
    EXPECT_EQ(static_cast<std::uint64_t>(mints), 288u * 2 * 2);
  }
}

TEST(Run, RandomScenariosObeyLaws) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = random_scenario(rng);
    const auto per_cycle = s.ticks_per_cycle();
    const auto cycles = s.days / s.cycle_days;

    std::vector<SimResult> by_kind;
    for (auto kind : kAllStrategies) by_kind.push_back(run(s, kind, eth));
    for (std::size_t k = 1; k < by_kind.size(); ++k) EXPECT_EQ(by_kind[k].statements, by_kind[0].statements);

    const auto& full = by_kind[2];
    EXPECT_EQ(events_to_jsonl(full.events), events_to_jsonl(run(s, StrategyKind::lightweight, eth).events));
    for (std::size_t i = 1; i < full.events.size(); ++i) EXPECT_LE(full.events[i - 1].time, full.events[i].time);
    for (const auto& e : full.events)
      if (e.receipt) EXPECT_LT(*e.receipt, full.receipts.size());

    Kwh carried;
    for (std::uint64_t c = 0; c < cycles; ++c) {
      auto upto = s;
      upto.max_ticks = (c + 1) * per_cycle;
      const auto partial = run(upto, StrategyKind::lightweight, eth);
      Kwh produced, consumed, utility;
      std::uint64_t revenue = 0, purchases = 0;
      for (const auto& st : partial.statements) {
        if (st.cycle_index != c) continue;
        produced += st.produced;
        consumed += st.consumed;
        utility += st.deficit;
        revenue += st.revenue_cents;
        purchases += st.purchases_cents;
      }
      const Kwh left = remaining_total(partial);
      EXPECT_EQ(carried + produced + utility, consumed + left) << "trial " << trial << " cycle " << c;
      EXPECT_EQ(revenue, purchases);
      carried = left;
    }
  }
}

TEST(Run, LedgerAgreesWithSimulatorRecords) {
  const auto s = load_scenario(source_path("scenarios/neighbourhood_4house.json"));
  for (auto kind : kAllStrategies) {
    auto audited = run_audited(s, kind, eth);
    const auto& ledger = audited.ledger;
    for (const auto& [id, zap] : audited.result.records) {
      EXPECT_EQ(ledger.balances().balance_of(zap.current_owner(), id), 1u);
      if (kind == StrategyKind::heavyweight)
        EXPECT_EQ(ledger.read_zap(id), zap);
      else
        EXPECT_EQ(ledger.read_zap(id, canonical_bytes(zap)), zap);
    }
  }
}

TEST(Feasibility, QuorumAlwaysFits) {
  const auto s = load_scenario(source_path("scenarios/neighbourhood_4house.json"));
  const auto q = ChainProfile::quorum();
  for (const auto& row : schedule_feasibility(run(s, StrategyKind::heavyweight, q), q)) {
    EXPECT_TRUE(row.all_fit) << row.op;
    EXPECT_LE(row.max_confirmation_s, 1.0);
  }
}

TEST(Feasibility, EthereumBoundaries) {
  const auto s = load_scenario(source_path("scenarios/neighbourhood_4house.json"));
  auto fixed = eth;
  fixed.confirmation = {300'000, 300'000};
  const auto r = run(s, StrategyKind::lightweight, fixed);
  for (const auto& row : schedule_feasibility(r, fixed)) {
    EXPECT_TRUE(row.processing_fits);
    EXPECT_EQ(row.fits, 0u) << row.op;
  }

  fixed.confirmation = {180'000, 180'000};
  for (const auto& row : schedule_feasibility(r, fixed)) {
    if (row.op != "mint") continue;
    const double processing = static_cast<double>(row.max_gas) / 1e6;
    EXPECT_DOUBLE_EQ(row.max_processing_s, processing);
    EXPECT_LT(processing, 120.0);
    EXPECT_DOUBLE_EQ(row.max_total_s, processing + 180.0);
    EXPECT_EQ(row.fits, row.count);
  }

  // Default range: processing alone fits, confirmation reaches the window edge.
  const auto rows = schedule_feasibility(r, eth);
  ASSERT_FALSE(rows.empty());
  double worst = 0;
  for (const auto& row : rows) {
    EXPECT_TRUE(row.processing_fits);
    EXPECT_GE(row.max_confirmation_s, 180.0);
    EXPECT_LE(row.max_confirmation_s, 300.0);
    worst = std::max(worst, row.max_total_s);
  }
  EXPECT_GT(worst, 290.0);
}

TEST(Scenario, Validation) {
  GridScenario s;
  s.tick_seconds = 200;
  EXPECT_ZAP_ERROR(s.validate(), ErrorCode::invalid_scenario);
  s = GridScenario{};
  s.days = 3;
  s.cycle_days = 2;
  EXPECT_ZAP_ERROR(s.validate(), ErrorCode::invalid_scenario);
  s = GridScenario{};
  auto h = house(0, "1", "0");
  h.generator_id = 0;
  s.households = {h};
  EXPECT_ZAP_ERROR(run(s, StrategyKind::lightweight, eth), ErrorCode::invalid_scenario);
  s.households = {house(0, "1", "0"), house(0, "1", "0")};
  EXPECT_ZAP_ERROR(s.validate(), ErrorCode::invalid_scenario);
}
