import hashlib
import json
import os
import pathlib

import pytest

import zapledger

ROOT = pathlib.Path(os.environ.get("ZAPLEDGER_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
SENDER = "0x" + "11" * 20
RECEIVER = "0x" + "22" * 20


def test_fixture_bytes_match_stdlib_json():
    raw = zapledger.canonical_bytes(zapledger.fixture_zap(1))
    doc = json.loads(raw)
    assert json.dumps(doc, separators=(",", ":")).encode() == raw
    assert zapledger.metadata_hash(raw) == hashlib.sha256(raw).hexdigest()
    assert raw == (ROOT / "tests/golden/fixture_zap.json").read_bytes()


def test_new_zap_and_round_trip():
    z = zapledger.new_zap(3, 1600000000, "1.000", "wind", SENDER, "45.5", "-73.5", 30)
    assert z.value_usd_cents == 30
    assert z.power_kw == "12.000"
    assert zapledger.parse_zap(zapledger.canonical_bytes(z)) == z


def test_lightweight_transfer_updates_digest():
    ledger = zapledger.Ledger("lightweight")
    assert ledger.deploy_receipt["gas_units"] == 4592780
    minted = ledger.mint(SENDER, [zapledger.fixture_zap(1)])
    out = ledger.transfer(SENDER, SENDER, RECEIVER, minted["ids"], "45.5017", "-73.5673", minted["payloads"])
    new_bytes = out["payloads"][0]
    assert ledger.stored_hash(1) == hashlib.sha256(new_bytes).hexdigest()
    assert ledger.read(1, new_bytes).owner_history == [SENDER, RECEIVER]
    assert ledger.balance_of(RECEIVER, 1) == 1
    with pytest.raises(zapledger.ZapledgerError) as err:
        ledger.read(1, minted["payloads"][0])
    assert err.value.code == "HashMismatch"


def test_featherweight_modify_and_money():
    ledger = zapledger.Ledger("featherweight")
    minted = ledger.mint(SENDER, [zapledger.fixture_zap(1)])
    receipt = ledger.modify(SENDER, 1, "00" * 32)
    assert set(receipt["breakdown"]) == {"tx_base", "storage_write_update", "exec_base"}
    assert zapledger.gas_to_money(3702977, "fast") == (111089310, 2666)
    assert zapledger.gas_to_money(3702977, "fast", "quorum") == (0, 0)
    assert minted["receipt"]["gas_units"] > zapledger.run_batch("featherweight", "transfer", 1)["gas_units"]


def test_curves_and_viability():
    curve = zapledger.per_token_curve("heavyweight", "transfer", 20)
    per_token = [p[2] for p in curve]
    assert per_token[1] < per_token[0]
    assert zapledger.viability_report(2, 103, 106, 30) == 3611520


def test_simulate_hand_fixture():
    result = zapledger.simulate(str(ROOT / "scenarios/hand_3house_2tick.json"), "featherweight")
    charges = [s["utility_charge_usd_cents"] for s in result["statements"]]
    assert charges == [0, 23, 30]
    again = zapledger.simulate(str(ROOT / "scenarios/hand_3house_2tick.json"), "featherweight")
    assert again["events_jsonl"] == result["events_jsonl"]


def test_unknown_strategy():
    with pytest.raises(zapledger.ZapledgerError):
        zapledger.Ledger("middleweight")
