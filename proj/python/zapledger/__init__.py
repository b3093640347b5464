"""Python bindings for the zapledger energy-token ledger and market simulator."""

from ._zapledger import (
    Ledger,
    Zap,
    ZapledgerError,
    append_history,
    canonical_bytes,
    fixture_zap,
    gas_to_money,
    main,
    metadata_hash,
    new_zap,
    parse_zap,
    per_token_curve,
    run_batch,
    simulate,
    viability_report,
)

__all__ = [
    "Ledger",
    "Zap",
    "ZapledgerError",
    "append_history",
    "canonical_bytes",
    "fixture_zap",
    "gas_to_money",
    "main",
    "metadata_hash",
    "new_zap",
    "parse_zap",
    "per_token_curve",
    "run_batch",
    "simulate",
    "viability_report",
]
