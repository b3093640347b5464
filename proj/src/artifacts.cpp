#include "zapledger/artifacts.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace zapledger {

using nlohmann::ordered_json;

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::parse_error, what); }

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

ordered_json geo_to_json(const GeoPoint& p) {
  return ordered_json{{"lat", p.lat.to_string()}, {"lon", p.lon.to_string()}};
}

GeoPoint geo_from_json(const ordered_json& j) {
  if (!j.is_object() || !j.contains("lat") || !j.contains("lon") || !j.at("lat").is_string() ||
      !j.at("lon").is_string())
    throw Error(ErrorCode::invalid_scenario, "location must be {\"lat\": \"..\", \"lon\": \"..\"}");
  return {Degrees::parse(j.at("lat").get<std::string>()), Degrees::parse(j.at("lon").get<std::string>())};
}

}  // namespace

std::string receipt_to_json(const OpReceipt& r) {
  ordered_json lines = ordered_json::array();
  for (const auto& line : r.breakdown)
    lines.push_back(ordered_json{{"kind", to_string(line.kind)}, {"units", line.units}});
  ordered_json doc{{"op", r.op},
                   {"strategy", to_string(r.strategy)},
                   {"n", r.batch_size},
                   {"gas_units", r.gas_units},
                   {"breakdown", lines}};
  return doc.dump();
}

std::string receipts_to_jsonl(std::span<const OpReceipt> receipts) {
  std::string out;
  for (const auto& r : receipts) {
    out += receipt_to_json(r);
    out += '\n';
  }
  return out;
}

std::vector<OpReceipt> receipts_from_jsonl(std::string_view text) {
  std::vector<OpReceipt> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const std::string where = "receipt line " + std::to_string(line_no) + ": ";
    ordered_json j;
    try {
      j = ordered_json::parse(line.begin(), line.end());
    } catch (const ordered_json::parse_error& e) {
      throw parse_error(where + e.what());
    }
    try {
      OpReceipt r;
      r.op = j.at("op").get<std::string>();
      auto kind = strategy_from_string(j.at("strategy").get<std::string>());
      if (!kind) throw parse_error(where + "unknown strategy");
      r.strategy = *kind;
      r.batch_size = j.at("n").get<std::uint64_t>();
      r.gas_units = j.at("gas_units").get<std::uint64_t>();
      if (r.batch_size == 0) throw parse_error(where + "n must be at least 1");
      std::uint64_t sum = 0;
      for (const auto& l : j.at("breakdown")) {
        const auto name = l.at("kind").get<std::string>();
        auto rk = resource_kind_from_string(name);
        if (!rk) throw Error(ErrorCode::unknown_event_kind, where + name);
        r.breakdown.push_back({*rk, l.at("units").get<std::uint64_t>()});
        sum += r.breakdown.back().units;
      }
      if (sum != r.gas_units)
        throw Error(ErrorCode::invariant_violation, where + "gas_units differs from breakdown sum");
      out.push_back(std::move(r));
    } catch (const ordered_json::exception& e) {
      throw parse_error(where + e.what());
    }
    if (end == text.size()) break;
  }
  return out;
}

std::string event_to_json(const SimEvent& e) {
  ordered_json doc{{"seq", e.seq},   {"time", e.time},       {"tick", e.tick},
                   {"cycle", e.cycle}, {"kind", e.kind}, {"account", e.account.to_hex()}};
  if (e.counterparty) doc["counterparty"] = e.counterparty->to_hex();
  if (e.token) doc["token_id"] = e.token->value;
  doc["kwh"] = e.kwh.to_string();
  doc["value_usd_cents"] = e.value_cents;
  if (e.receipt) doc["receipt"] = *e.receipt;
  return doc.dump();
}

std::string events_to_jsonl(std::span<const SimEvent> events) {
  std::string out;
  for (const auto& e : events) {
    out += event_to_json(e);
    out += '\n';
  }
  return out;
}

std::string statements_to_csv(std::span<const BillingStatement> statements) {
  std::ostringstream out;
  out << "cycle,account,produced_kwh,consumed_kwh,revenue_usd_cents,purchases_usd_cents,"
         "utility_charge_usd_cents,zaps_received_from_utility\n";
  for (const auto& s : statements) {
    out << s.cycle_index << ',' << s.account.to_hex() << ',' << s.produced.to_string() << ','
        << s.consumed.to_string() << ',' << s.revenue_cents << ',' << s.purchases_cents << ','
        << s.utility_charge_cents << ',' << s.zaps_received_from_utility << '\n';
  }
  return out.str();
}

std::string feasibility_to_csv(std::span<const FeasibilityRow> rows) {
  std::ostringstream out;
  out << "op,count,max_gas,max_processing_s,max_confirmation_s,max_total_s,fits,processing_fits,"
         "all_fit\n";
  for (const auto& r : rows) {
    out << r.op << ',' << r.count << ',' << r.max_gas << ',' << fixed6(r.max_processing_s) << ','
        << fixed6(r.max_confirmation_s) << ',' << fixed6(r.max_total_s) << ',' << r.fits << ','
        << (r.processing_fits ? "true" : "false") << ',' << (r.all_fit ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string curve_to_csv(std::span<const CurvePoint> curve) {
  std::ostringstream out;
  out << "n,gas_units,gas_per_token\n";
  for (const auto& p : curve) out << p.n << ',' << p.gas_units << ',' << fixed3(p.gas_per_token) << '\n';
  return out.str();
}

GridScenario scenario_from_json(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text.begin(), text.end());
  } catch (const ordered_json::parse_error& e) {
    throw Error(ErrorCode::invalid_scenario, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::invalid_scenario, "scenario must be an object");

  GridScenario s;
  try {
    auto u64 = [&](const ordered_json& j, const char* key, std::uint64_t fallback) {
      if (!j.contains(key)) return fallback;
      if (!j.at(key).is_number_unsigned())
        throw Error(ErrorCode::invalid_scenario, std::string("'") + key + "' must be unsigned");
      return j.at(key).get<std::uint64_t>();
    };
    s.tick_seconds = static_cast<std::int64_t>(u64(doc, "tick_seconds", 300));
    s.ticks_per_day = u64(doc, "ticks_per_day", 288);
    s.days = u64(doc, "days", 1);
    s.cycle_days = u64(doc, "cycle_days", s.days);
    s.utility_rate_cents_per_kwh = u64(doc, "utility_rate_usd_cents_per_kwh", 30);
    s.seed = u64(doc, "seed", 0);
    s.start_unix = static_cast<std::int64_t>(u64(doc, "start_unix", 1'600'000'000));
    s.max_ticks = u64(doc, "max_ticks", 0);
    if (doc.contains("utility_location")) s.utility_location = geo_from_json(doc.at("utility_location"));

    if (!doc.contains("households") || !doc.at("households").is_array())
      throw Error(ErrorCode::invalid_scenario, "'households' must be an array");
    std::uint32_t ordinal = 0;
    for (const auto& hj : doc.at("households")) {
      Household h;
      h.account = hj.contains("account") ? AccountId::from_hex(hj.at("account").get<std::string>())
                                         : AccountId::for_household(ordinal);
      h.location = geo_from_json(hj.at("location"));
      h.generator_id = u64(hj, "generator_id", 0);
      if (hj.contains("source")) {
        auto src = energy_source_from_string(hj.at("source").get<std::string>());
        if (!src) throw Error(ErrorCode::invalid_scenario, "unknown energy source");
        h.source = *src;
      }
      h.generation_per_tick = Kwh::parse(hj.value("generation_kwh_per_tick", std::string("0.000")));
      h.consumption_per_tick = Kwh::parse(hj.value("consumption_kwh_per_tick", std::string("0.000")));
      if (hj.contains("price_usd_cents_per_kwh"))
        h.price_cents_per_kwh = u64(hj, "price_usd_cents_per_kwh", 0);
      h.self_consume = hj.value("self_consume", true);
      s.households.push_back(h);
      ++ordinal;
    }
  } catch (const ordered_json::exception& e) {
    throw Error(ErrorCode::invalid_scenario, e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::invalid_scenario) throw;
    throw Error(ErrorCode::invalid_scenario, e.what());
  }
  s.validate();
  return s;
}

std::string scenario_to_json(const GridScenario& s) {
  ordered_json households = ordered_json::array();
  for (const auto& h : s.households) {
    ordered_json hj{{"account", h.account.to_hex()},
                    {"location", geo_to_json(h.location)},
                    {"generator_id", h.generator_id},
                    {"source", to_string(h.source)},
                    {"generation_kwh_per_tick", h.generation_per_tick.to_string()},
                    {"consumption_kwh_per_tick", h.consumption_per_tick.to_string()}};
    if (h.price_cents_per_kwh) hj["price_usd_cents_per_kwh"] = *h.price_cents_per_kwh;
    hj["self_consume"] = h.self_consume;
    households.push_back(hj);
  }
  ordered_json doc{{"households", households},
                   {"tick_seconds", s.tick_seconds},
                   {"ticks_per_day", s.ticks_per_day},
                   {"days", s.days},
                   {"cycle_days", s.cycle_days},
                   {"utility_rate_usd_cents_per_kwh", s.utility_rate_cents_per_kwh},
                   {"seed", s.seed},
                   {"start_unix", s.start_unix},
                   {"max_ticks", s.max_ticks},
                   {"utility_location", geo_to_json(s.utility_location)}};
  return doc.dump(2) + "\n";
}

GridScenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_scenario, "cannot open scenario '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return scenario_from_json(ss.str());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace zapledger
