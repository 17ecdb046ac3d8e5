"""Python bindings for the aitlab core."""

from ._aitlab import (
    MACHINE,
    ConfigError,
    Lab,
    MissingDomain,
    assemble,
    claim_ids,
    disassemble,
    enumerate_domain,
    nat_decode,
    nat_encode,
    run_plain,
    run_prefix,
    slog,
)

__all__ = [
    "MACHINE",
    "ConfigError",
    "Lab",
    "MissingDomain",
    "assemble",
    "claim_ids",
    "disassemble",
    "enumerate_domain",
    "nat_decode",
    "nat_encode",
    "run_plain",
    "run_prefix",
    "slog",
]
