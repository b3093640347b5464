"""Writes the fixture Zap golden files with Python's json and hashlib.

Run from the repository root: python3 tests/golden/make_golden.py
"""
import hashlib
import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def fixture(owners, locations):
    return {
        "version": 1,
        "token_id": 1,
        "created_at": 1600000000,
        "energy_kwh": "0.250",
        "power_kw": "3.000",
        "value_usd_cents": 8,
        "generator_id": 1,
        "source": "photovoltaic",
        "owner_history": owners,
        "location_history": [{"lat": lat, "lon": lon} for lat, lon in locations],
    }


def emit(name, doc):
    data = json.dumps(doc, separators=(",", ":"), ensure_ascii=True).encode()
    (HERE / f"{name}.json").write_bytes(data)
    (HERE / f"{name}.sha256").write_text(hashlib.sha256(data).hexdigest() + "\n")
    print(name, len(data), hashlib.sha256(data).hexdigest())


sender = "0x" + "11" * 20
receiver = "0x" + "22" * 20
origin = ("45.508800", "-73.587400")
destination = ("45.501700", "-73.567300")

emit("fixture_zap", fixture([sender], [origin]))
emit("fixture_zap_transferred", fixture([sender, receiver], [origin, destination]))
