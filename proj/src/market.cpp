#include "zapledger/market.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace zapledger {

namespace {

Error invalid_scenario(const std::string& what) { return Error(ErrorCode::invalid_scenario, what); }

bool older(const Holding& a, const Holding& b) {
  return a.created_at != b.created_at ? a.created_at < b.created_at : a.token < b.token;
}

void insert_sorted(std::vector<Holding>& holdings, Holding h) {
  holdings.insert(std::upper_bound(holdings.begin(), holdings.end(), h, older), h);
}

}  // namespace

void GridScenario::validate() const {
  if (tick_seconds <= 0 || ticks_per_day == 0 ||
      tick_seconds * static_cast<std::int64_t>(ticks_per_day) != kSecondsPerDay)
    throw invalid_scenario("tick_seconds × ticks_per_day must equal 86400");
  if (days == 0) throw invalid_scenario("days must be positive");
  if (cycle_days == 0 || days % cycle_days != 0)
    throw invalid_scenario("cycle_days must divide days");
  try {
    utility_location.validate();
  } catch (const Error& e) {
    throw invalid_scenario(std::string("utility location: ") + e.what());
  }
  std::set<AccountId> seen;
  for (std::size_t i = 0; i < households.size(); ++i) {
    const auto& h = households[i];
    const std::string where = "household " + std::to_string(i) + ": ";
    if (h.account == AccountId::utility()) throw invalid_scenario(where + "uses the utility account");
    if (!seen.insert(h.account).second) throw invalid_scenario(where + "duplicate account");
    if (h.generation_per_tick.raw() < 0 || h.consumption_per_tick.raw() < 0)
      throw invalid_scenario(where + "generation and consumption must be non-negative");
    if ((h.generator_id == 0) != (h.generation_per_tick.raw() == 0))
      throw invalid_scenario(where + "generator_id is 0 exactly when generation is 0");
    try {
      h.location.validate();
    } catch (const Error& e) {
      throw invalid_scenario(where + e.what());
    }
  }
}

std::uint64_t GridScenario::total_ticks() const {
  const std::uint64_t full = days * ticks_per_day;
  return max_ticks == 0 ? full : std::min(full, max_ticks);
}

ConsumeResult consume_step(std::vector<Holding> holdings, Kwh demand) {
  if (demand.raw() < 0) throw Error(ErrorCode::invalid_argument, "demand must be non-negative");
  std::stable_sort(holdings.begin(), holdings.end(), older);
  ConsumeResult out;
  Kwh left = demand;
  for (auto& h : holdings) {
    if (left.raw() == 0) break;
    const Kwh take = std::min(h.remaining, left);
    if (take.raw() == 0) continue;
    h.remaining -= take;
    left -= take;
    out.drained.push_back({h.token, take});
  }
  holdings.erase(std::remove_if(holdings.begin(), holdings.end(),
                                [](const Holding& h) { return h.remaining.raw() == 0; }),
                 holdings.end());
  out.holdings = std::move(holdings);
  out.deficit = left;
  return out;
}

std::vector<BillingStatement> settle_cycle(const CycleActivity& cycle,
                                           std::span<const AccountId> accounts,
                                           std::uint64_t utility_rate_cents_per_kwh) {
  if (cycle.ticks_recorded < cycle.ticks_expected)
    throw Error(ErrorCode::incomplete_cycle,
                "cycle " + std::to_string(cycle.cycle_index) + " recorded " +
                    std::to_string(cycle.ticks_recorded) + " of " +
                    std::to_string(cycle.ticks_expected) + " ticks");

  std::map<AccountId, std::size_t> index;
  std::vector<BillingStatement> out(accounts.size());
  for (std::size_t i = 0; i < accounts.size(); ++i) {
    index.emplace(accounts[i], i);
    out[i].account = accounts[i];
    out[i].cycle_index = cycle.cycle_index;
  }
  auto find = [&](const AccountId& a) -> BillingStatement* {
    auto it = index.find(a);
    return it == index.end() ? nullptr : &out[it->second];
  };

  for (const auto& p : cycle.produced)
    if (auto* s = find(p.account)) s->produced += p.amount;
  for (const auto& c : cycle.consumed) {
    if (auto* s = find(c.account)) {
      s->consumed += c.from_zaps + c.deficit;
      s->deficit += c.deficit;
    }
  }
  for (const auto& p : cycle.purchased) {
    if (p.buyer == p.producer) continue;
    if (auto* s = find(p.buyer)) s->purchases_cents += p.value_cents;
    if (auto* s = find(p.producer)) s->revenue_cents += p.value_cents;
  }
  for (auto& s : out) {
    if (s.deficit.raw() > 0) {
      s.utility_charge_cents = value_cents(s.deficit, utility_rate_cents_per_kwh);
      s.zaps_received_from_utility = 1;
    }
  }
  return out;
}

namespace {

class Simulation {
 public:
  Simulation(const GridScenario& scenario, StrategyKind kind, const ChainProfile& profile,
             std::uint64_t seed)
      : scenario_(scenario),
        kind_(kind),
        deployed_(ZapLedger::deploy(kind, profile)),
        holdings_(scenario.households.size()) {
    result_.strategy = kind;
    result_.profile_name = profile.name;
    result_.seed = seed;
    for (const auto& h : scenario.households) accounts_.push_back(h.account);
  }

  AuditedRun finish() && { return {std::move(result_), std::move(deployed_.ledger)}; }

  void execute() {
    const auto& hs = scenario_.households;
    if (hs.empty()) return;
    const auto deploy_idx = add_receipt(std::move(deployed_.receipt));
    log("deploy", scenario_.start_unix, 0, AccountId::utility(), {}, {}, {}, 0, deploy_idx);

    const std::uint64_t total = scenario_.total_ticks();
    const std::uint64_t per_cycle = scenario_.ticks_per_cycle();
    result_.ticks = total;
    start_cycle(0, std::min(per_cycle, total));

    for (std::uint64_t tick = 0; tick < total; ++tick) {
      run_tick(tick);
      const bool cycle_end = (tick + 1) % per_cycle == 0 || tick + 1 == total;
      if (cycle_end) {
        settle(tick + 1);
        if (tick + 1 < total) start_cycle(cycle_.cycle_index + 1, std::min(per_cycle, total - tick - 1));
      }
    }
  }

 private:
  ZapLedger& ledger() { return deployed_.ledger; }

  std::int64_t time_of(std::uint64_t tick) const {
    return scenario_.start_unix + static_cast<std::int64_t>(tick) * scenario_.tick_seconds;
  }

  std::size_t add_receipt(OpReceipt r) {
    result_.receipts.push_back(std::move(r));
    return result_.receipts.size() - 1;
  }

  void log(std::string kind, std::int64_t time, std::uint64_t tick, const AccountId& account,
           std::optional<AccountId> counterparty, std::optional<TokenId> token, Kwh kwh,
           std::uint64_t value, std::optional<std::size_t> receipt) {
    SimEvent e;
    e.seq = result_.events.size();
    e.time = time;
    e.tick = tick;
    e.cycle = cycle_.cycle_index;
    e.kind = std::move(kind);
    e.account = account;
    e.counterparty = counterparty;
    e.token = token;
    e.kwh = kwh;
    e.value_cents = value;
    e.receipt = receipt;
    result_.events.push_back(std::move(e));
  }

  void start_cycle(std::uint64_t index, std::uint64_t ticks) {
    cycle_ = CycleActivity{};
    cycle_.cycle_index = index;
    cycle_.ticks_expected = ticks;
  }

  TokenId mint(const AccountId& to, Zap zap, const char* kind, std::int64_t time, std::uint64_t tick) {
    auto minted = ledger().mint_zaps(to, {std::move(zap)});
    const auto idx = add_receipt(std::move(minted.receipt));
    const Zap& z = minted.zaps.front();
    result_.records[z.token_id] = z;
    result_.spent_registry[z.token_id] = z.energy;
    log(kind, time, tick, to, {}, z.token_id, z.energy, z.value_usd_cents, idx);
    return z.token_id;
  }

  void transfer(const AccountId& from, const AccountId& to, const GeoPoint& to_location, TokenId id,
                const char* kind, std::int64_t time, std::uint64_t tick) {
    const Zap& current = result_.records.at(id);
    std::optional<std::vector<std::string>> payloads;
    if (kind_ == StrategyKind::lightweight) payloads = std::vector{canonical_bytes(current)};
    const TokenId ids[] = {id};
    auto moved = ledger().transfer_zaps(from, from, to, ids, to_location, payloads);
    Zap next = append_history(current, to, to_location);
    const auto idx = add_receipt(std::move(moved.receipt));
    log(kind, time, tick, from, to, id, next.energy, next.value_usd_cents, idx);
    if (kind_ == StrategyKind::featherweight) {
      auto r = ledger().modify_zap(to, id, metadata_hash(canonical_bytes(next)));
      const auto midx = add_receipt(std::move(r));
      log("modify", time, tick, to, {}, id, {}, 0, midx);
    }
    result_.records[id] = std::move(next);
  }

  // Consumes from whatever `h` may use; returns the uncovered demand.
  Kwh consume(std::size_t h, Kwh demand, std::int64_t time, std::uint64_t tick, Kwh& from_zaps) {
    const bool own_allowed = scenario_.households[h].self_consume;
    std::vector<Holding> usable, reserved;
    for (const auto& x : holdings_[h])
      (own_allowed || producer_.at(x.token) != h ? usable : reserved).push_back(x);

    auto r = consume_step(std::move(usable), demand);
    for (const auto& d : r.drained) {
      result_.spent_registry[d.token] -= d.amount;
      from_zaps += d.amount;
      log("consume", time, tick, accounts_[h], {}, d.token, d.amount, 0, {});
    }
    holdings_[h] = std::move(r.holdings);
    for (auto& x : reserved) insert_sorted(holdings_[h], x);
    return r.deficit;
  }

  std::optional<Holding> take_sellable(std::size_t seller) {
    auto& hs = holdings_[seller];
    for (auto it = hs.begin(); it != hs.end(); ++it) {
      if (producer_.at(it->token) == seller && it->remaining == result_.records.at(it->token).energy) {
        Holding h = *it;
        hs.erase(it);
        return h;
      }
    }
    return std::nullopt;
  }

  void run_tick(std::uint64_t tick) {
    const auto& hs = scenario_.households;
    const std::int64_t now = time_of(tick);
    const std::size_t count = hs.size();

    for (std::size_t h = 0; h < count; ++h) {
      if (hs[h].generation_per_tick.raw() == 0) continue;
      const auto price = hs[h].price_cents_per_kwh.value_or(scenario_.utility_rate_cents_per_kwh);
      auto id = mint(hs[h].account,
                     new_zap(hs[h].generator_id, now, hs[h].generation_per_tick, hs[h].source,
                             hs[h].account, hs[h].location, price),
                     "mint", now, tick);
      producer_[id] = h;
      insert_sorted(holdings_[h], {id, now, hs[h].generation_per_tick});
      cycle_.produced.push_back({hs[h].account, hs[h].generation_per_tick});
    }

    std::vector<Kwh> deficit(count), from_zaps(count);
    for (std::size_t h = 0; h < count; ++h)
      deficit[h] = consume(h, hs[h].consumption_per_tick, now, tick, from_zaps[h]);

    // Deficit households buy whole, untouched Zaps from their producers,
    // lowest ordinal first, oldest Zap first.
    for (std::size_t h = 0; h < count; ++h) {
      for (std::size_t s = 0; s < count && deficit[h].raw() > 0; ++s) {
        if (s == h || (hs[s].self_consume && deficit[s].raw() > 0)) continue;
        while (deficit[h].raw() > 0) {
          auto sold = take_sellable(s);
          if (!sold) break;
          transfer(hs[s].account, hs[h].account, hs[h].location, sold->token, "transfer", now, tick);
          insert_sorted(holdings_[h], *sold);
          cycle_.purchased.push_back({hs[h].account, hs[s].account, sold->token,
                                      result_.records.at(sold->token).value_usd_cents});
          deficit[h] = consume(h, deficit[h], now, tick, from_zaps[h]);
        }
      }
    }

    for (std::size_t h = 0; h < count; ++h) {
      if (deficit[h].raw() > 0) log("deficit", now, tick, hs[h].account, {}, {}, deficit[h], 0, {});
      if (from_zaps[h].raw() > 0 || deficit[h].raw() > 0)
        cycle_.consumed.push_back({hs[h].account, from_zaps[h], deficit[h]});
    }
    cycle_.ticks_recorded += 1;
  }

  void settle(std::uint64_t end_tick) {
    const std::int64_t now = time_of(end_tick);
    const std::uint64_t tick = end_tick - 1;
    auto statements = settle_cycle(cycle_, accounts_, scenario_.utility_rate_cents_per_kwh);
    const AccountId utility = AccountId::utility();
    for (std::size_t h = 0; h < statements.size(); ++h) {
      const auto& st = statements[h];
      if (st.deficit.raw() == 0) continue;
      const auto& house = scenario_.households[h];
      auto id = mint(utility,
                     new_zap(kUtilityGeneratorId, now, st.deficit, EnergySource::hydro, utility,
                             scenario_.utility_location, scenario_.utility_rate_cents_per_kwh),
                     "utility_mint", now, tick);
      if (result_.records.at(id).value_usd_cents != st.utility_charge_cents)
        throw Error(ErrorCode::invariant_violation, "utility zap value differs from the charge");
      transfer(utility, house.account, house.location, id, "utility_transfer", now, tick);
      // Covers energy already drawn from the grid.
      result_.spent_registry[id] = Kwh{};
    }
    for (const auto& st : statements) {
      log("settle", now, tick, st.account, {}, {}, st.consumed,
          st.purchases_cents + st.utility_charge_cents, {});
      result_.statements.push_back(st);
    }
  }

  const GridScenario& scenario_;
  StrategyKind kind_;
  ZapLedger::Deployed deployed_;
  SimResult result_;
  std::vector<AccountId> accounts_;
  std::vector<std::vector<Holding>> holdings_;
  std::map<TokenId, std::size_t> producer_;
  CycleActivity cycle_;
};

}  // namespace

AuditedRun run_audited(const GridScenario& scenario, StrategyKind kind, const ChainProfile& profile,
                       std::optional<std::uint64_t> seed) {
  scenario.validate();
  Simulation sim(scenario, kind, profile, seed.value_or(scenario.seed));
  sim.execute();
  return std::move(sim).finish();
}

SimResult run(const GridScenario& scenario, StrategyKind kind, const ChainProfile& profile,
              std::optional<std::uint64_t> seed) {
  return run_audited(scenario, kind, profile, seed).result;
}

ViabilityReport viability_report(std::uint64_t houses, std::uint64_t mint_cents,
                                 std::uint64_t transfer_cents, std::uint64_t days) {
  ViabilityReport r;
  r.mint_cents_per_house_day = kTicksPerDay * mint_cents;
  r.transfer_cents_per_house_day = kTicksPerDay * transfer_cents;
  r.monthly_total.usd_cents =
      (r.mint_cents_per_house_day + r.transfer_cents_per_house_day) * days * houses;
  return r;
}

std::vector<FeasibilityRow> schedule_feasibility(const SimResult& result, const ChainProfile& profile,
                                                 double window_seconds) {
  std::mt19937_64 rng(result.seed);
  const double min_s = static_cast<double>(profile.confirmation.min_ms) / 1000.0;
  const double span_s =
      static_cast<double>(profile.confirmation.max_ms - profile.confirmation.min_ms) / 1000.0;

  std::vector<FeasibilityRow> rows;
  std::map<std::string, std::size_t> index;
  for (const auto& r : result.receipts) {
    if (r.op == "deploy") continue;
    // 53 high bits give a uniform double in [0, 1) identically everywhere.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double processing =
        static_cast<double>(r.gas_units) / static_cast<double>(profile.throughput_gas_per_s);
    const double confirmation = min_s + u * span_s;
    const double total = processing + confirmation;

    auto [it, inserted] = index.try_emplace(r.op, rows.size());
    if (inserted) rows.push_back(FeasibilityRow{.op = r.op});
    auto& row = rows[it->second];
    row.count += 1;
    row.max_gas = std::max(row.max_gas, r.gas_units);
    row.max_processing_s = std::max(row.max_processing_s, processing);
    row.max_confirmation_s = std::max(row.max_confirmation_s, confirmation);
    row.max_total_s = std::max(row.max_total_s, total);
    if (total <= window_seconds) row.fits += 1;
    row.processing_fits = row.processing_fits && processing <= window_seconds;
    row.all_fit = row.fits == row.count;
  }
  return rows;
}

}  // namespace zapledger
