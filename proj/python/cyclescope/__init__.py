"""Cycles of elliptic curves: search, verification and rule-out."""

from ._cyclescope import (
    CapabilityError,
    SchemaError,
    cyclotomic,
    factorize,
    is_prime,
    multiplicative_order,
    ruleout,
    run_cli,
    scan_mnt,
    solve_cm,
    two_cycle_from_trace,
    verify_cycle,
)

__all__ = [
    "CapabilityError",
    "SchemaError",
    "cyclotomic",
    "factorize",
    "is_prime",
    "multiplicative_order",
    "ruleout",
    "run_cli",
    "scan_mnt",
    "solve_cm",
    "two_cycle_from_trace",
    "verify_cycle",
]
