#include <pybind11/pybind11.h>
#include <pybind11/iostream.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <iostream>

#include "zapledger/artifacts.hpp"
#include "zapledger/cli.hpp"
#include "zapledger/curves.hpp"
#include "zapledger/market.hpp"

namespace py = pybind11;
using namespace zapledger;

namespace {

StrategyKind strategy(const std::string& name) {
  auto k = strategy_from_string(name);
  if (!k) throw Error(ErrorCode::invalid_argument, "unknown strategy '" + name + "'");
  return *k;
}

GeoPoint geo(const std::string& lat, const std::string& lon) {
  return {Degrees::parse(lat), Degrees::parse(lon)};
}

py::dict receipt_dict(const OpReceipt& r) {
  py::dict breakdown;
  for (const auto& line : r.breakdown) breakdown[py::str(std::string(to_string(line.kind)))] = line.units;
  py::dict d;
  d["op"] = r.op;
  d["strategy"] = std::string(to_string(r.strategy));
  d["n"] = r.batch_size;
  d["gas_units"] = r.gas_units;
  d["breakdown"] = breakdown;
  return d;
}

std::vector<TokenId> token_ids(const std::vector<std::uint64_t>& raw) {
  std::vector<TokenId> ids;
  for (auto v : raw) ids.push_back(TokenId{v});
  return ids;
}

std::vector<std::uint64_t> raw_ids(const std::vector<TokenId>& ids) {
  std::vector<std::uint64_t> raw;
  for (auto id : ids) raw.push_back(id.value);
  return raw;
}

py::list as_bytes(const std::vector<std::string>& payloads) {
  py::list out;
  for (const auto& p : payloads) out.append(py::bytes(p));
  return out;
}

class PyLedger {
 public:
  PyLedger(const std::string& kind, const std::string& profile)
      : deployed_(ZapLedger::deploy(strategy(kind), resolve_profile(profile))) {}

  py::dict deploy_receipt() const { return receipt_dict(deployed_.receipt); }

  py::dict mint(const std::string& to, std::vector<Zap> zaps) {
    auto out = deployed_.ledger.mint_zaps(AccountId::from_hex(to), std::move(zaps));
    py::dict d;
    d["ids"] = raw_ids(out.ids);
    d["zaps"] = out.zaps;
    d["payloads"] = as_bytes(out.payloads);
    d["receipt"] = receipt_dict(out.receipt);
    return d;
  }

  py::dict transfer(const std::string& op, const std::string& from, const std::string& to,
                    const std::vector<std::uint64_t>& ids, const std::string& lat, const std::string& lon,
                    std::optional<std::vector<py::bytes>> payloads) {
    std::optional<std::vector<std::string>> raw;
    if (payloads) {
      raw.emplace();
      for (const auto& p : *payloads) raw->push_back(std::string(p));
    }
    const auto tokens = token_ids(ids);
    auto out = deployed_.ledger.transfer_zaps(AccountId::from_hex(op), AccountId::from_hex(from),
                                              AccountId::from_hex(to), tokens, geo(lat, lon), raw);
    py::dict d;
    d["receipt"] = receipt_dict(out.receipt);
    d["payloads"] = out.updated_payloads ? py::object(as_bytes(*out.updated_payloads)) : py::none();
    return d;
  }

  py::dict modify(const std::string& caller, std::uint64_t id, const std::string& digest_hex) {
    return receipt_dict(
        deployed_.ledger.modify_zap(AccountId::from_hex(caller), TokenId{id}, MetadataHash::from_hex(digest_hex)));
  }

  Zap read(std::uint64_t id, std::optional<py::bytes> payload) const {
    if (!payload) return deployed_.ledger.read_zap(TokenId{id});
    const std::string raw(*payload);
    return deployed_.ledger.read_zap(TokenId{id}, raw);
  }

  std::uint64_t balance_of(const std::string& account, std::uint64_t id) const {
    return deployed_.ledger.balances().balance_of(AccountId::from_hex(account), TokenId{id});
  }

  std::optional<std::string> stored_hash(std::uint64_t id) const {
    auto h = deployed_.ledger.stored_hash(TokenId{id});
    return h ? std::optional(h->to_hex()) : std::nullopt;
  }

  std::string strategy_name() const { return std::string(to_string(deployed_.ledger.kind())); }

 private:
  ZapLedger::Deployed deployed_;
};

py::dict statement_dict(const BillingStatement& s) {
  py::dict d;
  d["cycle"] = s.cycle_index;
  d["account"] = s.account.to_hex();
  d["produced_kwh"] = s.produced.to_string();
  d["consumed_kwh"] = s.consumed.to_string();
  d["revenue_usd_cents"] = s.revenue_cents;
  d["purchases_usd_cents"] = s.purchases_cents;
  d["utility_charge_usd_cents"] = s.utility_charge_cents;
  d["zaps_received_from_utility"] = s.zaps_received_from_utility;
  return d;
}

}  // namespace

PYBIND11_MODULE(_zapledger, m) {
  m.doc() = "Energy-token ledger, gas meter and market simulator";

  static PyObject* error = py::exception<Error>(m, "ZapledgerError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(py::str(std::string(to_string(e.code())) + ": " + e.what()));
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error, exc.ptr());
    }
  });

  py::class_<Zap>(m, "Zap")
      .def_property_readonly("token_id", [](const Zap& z) { return z.token_id.value; })
      .def_readonly("created_at", &Zap::created_at)
      .def_property_readonly("energy_kwh", [](const Zap& z) { return z.energy.to_string(); })
      .def_property_readonly("power_kw", [](const Zap& z) { return z.power.to_string(); })
      .def_readonly("value_usd_cents", &Zap::value_usd_cents)
      .def_readonly("generator_id", &Zap::generator_id)
      .def_property_readonly("source", [](const Zap& z) { return std::string(to_string(z.source)); })
      .def_property_readonly("owner_history",
                             [](const Zap& z) {
                               std::vector<std::string> out;
                               for (const auto& a : z.owner_history) out.push_back(a.to_hex());
                               return out;
                             })
      .def_property_readonly("location_history",
                             [](const Zap& z) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& p : z.location_history)
                                 out.emplace_back(p.lat.to_string(), p.lon.to_string());
                               return out;
                             })
      .def(py::self == py::self)
      .def("__repr__", [](const Zap& z) { return "<Zap " + canonical_bytes(z) + ">"; });

  m.def(
      "new_zap",
      [](std::uint64_t generator_id, std::int64_t created_at, const std::string& energy_kwh,
         const std::string& source, const std::string& owner, const std::string& lat, const std::string& lon,
         std::uint64_t price) {
        auto src = energy_source_from_string(source);
        if (!src) throw Error(ErrorCode::invalid_argument, "unknown energy source '" + source + "'");
        return new_zap(generator_id, created_at, Kwh::parse(energy_kwh), *src, AccountId::from_hex(owner),
                       geo(lat, lon), price);
      },
      py::arg("generator_id"), py::arg("created_at"), py::arg("energy_kwh"), py::arg("source"),
      py::arg("owner"), py::arg("lat"), py::arg("lon"), py::arg("price_usd_cents_per_kwh"));
  m.def("fixture_zap", [](std::uint64_t index) { return fixture_zap(index); }, py::arg("index") = 1);
  m.def("canonical_bytes", [](const Zap& z) { return py::bytes(canonical_bytes(z)); });
  m.def("parse_zap", [](const py::bytes& b) { return parse_zap(std::string(b)); });
  m.def("metadata_hash", [](const py::bytes& b) { return metadata_hash(std::string(b)).to_hex(); });
  m.def("append_history", [](const Zap& z, const std::string& owner, const std::string& lat,
                             const std::string& lon) { return append_history(z, AccountId::from_hex(owner), geo(lat, lon)); });

  py::class_<PyLedger>(m, "Ledger")
      .def(py::init<const std::string&, const std::string&>(), py::arg("strategy"),
           py::arg("profile") = "ethereum")
      .def_property_readonly("strategy", &PyLedger::strategy_name)
      .def_property_readonly("deploy_receipt", &PyLedger::deploy_receipt)
      .def("mint", &PyLedger::mint, py::arg("to"), py::arg("zaps"))
      .def("transfer", &PyLedger::transfer, py::arg("operator"), py::arg("sender"), py::arg("receiver"),
           py::arg("ids"), py::arg("lat"), py::arg("lon"), py::arg("payloads") = py::none())
      .def("modify", &PyLedger::modify, py::arg("caller"), py::arg("token_id"), py::arg("digest"))
      .def("read", &PyLedger::read, py::arg("token_id"), py::arg("payload") = py::none())
      .def("balance_of", &PyLedger::balance_of)
      .def("stored_hash", &PyLedger::stored_hash);

  m.def(
      "run_batch",
      [](const std::string& kind, const std::string& op, std::uint64_t n, const std::string& profile) {
        auto curve_op = curve_op_from_string(op);
        if (!curve_op) throw Error(ErrorCode::invalid_argument, "unknown op '" + op + "'");
        return receipt_dict(run_batch(strategy(kind), *curve_op, n, resolve_profile(profile)));
      },
      py::arg("strategy"), py::arg("op"), py::arg("n"), py::arg("profile") = "ethereum");
  m.def(
      "per_token_curve",
      [](const std::string& kind, const std::string& op, std::uint64_t n_max, const std::string& profile) {
        auto curve_op = curve_op_from_string(op);
        if (!curve_op) throw Error(ErrorCode::invalid_argument, "unknown op '" + op + "'");
        std::vector<std::tuple<std::uint64_t, std::uint64_t, double>> out;
        for (const auto& p : per_token_curve(strategy(kind), *curve_op, n_max, resolve_profile(profile)))
          out.emplace_back(p.n, p.gas_units, p.gas_per_token);
        return out;
      },
      py::arg("strategy"), py::arg("op"), py::arg("n_max"), py::arg("profile") = "ethereum");
  m.def(
      "gas_to_money",
      [](std::uint64_t gas, const std::string& rate, const std::string& profile) {
        auto r = rate_from_string(rate);
        if (!r) throw Error(ErrorCode::invalid_argument, "unknown rate '" + rate + "'");
        const auto money = gas_to_money(gas, *r, resolve_profile(profile));
        return std::pair{money.gwei, money.usd_cents};
      },
      py::arg("gas_units"), py::arg("rate") = "standard", py::arg("profile") = "ethereum");
  m.def(
      "viability_report",
      [](std::uint64_t houses, std::uint64_t mint, std::uint64_t transfer, std::uint64_t days) {
        return viability_report(houses, mint, transfer, days).monthly_total.usd_cents;
      },
      py::arg("houses"), py::arg("mint_usd_cents"), py::arg("transfer_usd_cents"), py::arg("days"));
  m.def(
      "simulate",
      [](const std::string& scenario_path, const std::string& kind, const std::string& profile,
         std::optional<std::uint64_t> seed) {
        const auto p = resolve_profile(profile);
        const auto result = run(load_scenario(scenario_path), strategy(kind), p, seed);
        py::list statements;
        for (const auto& s : result.statements) statements.append(statement_dict(s));
        py::list receipts;
        for (const auto& r : result.receipts) receipts.append(receipt_dict(r));
        py::dict d;
        d["seed"] = result.seed;
        d["ticks"] = result.ticks;
        d["statements"] = statements;
        d["receipts"] = receipts;
        d["events_jsonl"] = events_to_jsonl(result.events);
        return d;
      },
      py::arg("scenario"), py::arg("strategy") = "lightweight", py::arg("profile") = "ethereum",
      py::arg("seed") = py::none());
  m.def(
      "main",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "zapledger");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        py::scoped_ostream_redirect out;
        return cli::run_cli(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
      },
      py::arg("args"));
}
