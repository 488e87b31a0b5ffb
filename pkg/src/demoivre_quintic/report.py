"""Structured (JSON lines) records for the CLI.

Complex numbers are ``{"re": ..., "im": ...}`` with 17-significant-digit
decimal strings, which round-trip binary64 exactly.  Keys are sorted so the
same input always produces the same bytes.
"""

from __future__ import annotations

import json

from .hypergeom import IdentityRecord
from .reduction import BringReduction

IDENTITY_FIELDS = ("w", "Z", "t", "residual", "verdict", "branch", "provenance")


def fmt_real(x: float) -> str:
    return format(float(x), ".17g")


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": fmt_real(z.real), "im": fmt_real(z.imag)}


def complex_from_json(d: dict) -> complex:
    return complex(float(d["re"]), float(d["im"]))


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def loads(line: str) -> dict:
    return json.loads(line)


def identity_to_dict(rec: IdentityRecord) -> dict:
    return {
        "w": complex_to_json(rec.w),
        "Z": complex_to_json(rec.Z),
        "t": complex_to_json(rec.t),
        "residual": rec.residual,
        "verdict": rec.verdict,
        "branch": rec.branch,
        "provenance": rec.provenance,
    }


def identity_from_dict(d: dict) -> IdentityRecord:
    if set(d) != set(IDENTITY_FIELDS):
        raise ValueError(f"identity record needs exactly the fields {IDENTITY_FIELDS}")
    return IdentityRecord(
        complex_from_json(d["w"]),
        complex_from_json(d["Z"]),
        complex_from_json(d["t"]),
        float(d["residual"]),
        str(d["verdict"]),
        int(d["branch"]),
        str(d["provenance"]),
    )


def reduction_to_dict(red: BringReduction) -> dict:
    data = red.data
    return {
        "record": "reduce",
        "a": data.a,
        "b": data.b,
        "variant": data.variant,
        "principal": {
            "p2": complex_to_json(red.principal.p2),
            "p1": complex_to_json(red.principal.p1),
            "p0": complex_to_json(red.principal.p0),
        },
        "jerrard": {
            "alpha": complex_to_json(data.alpha),
            "beta": complex_to_json(data.beta),
            "delta": complex_to_json(data.delta),
            "Delta": complex_to_json(data.Delta),
            "d": [complex_to_json(v) for v in data.d],
            "c0": complex_to_json(data.c0),
            "c1": complex_to_json(data.c1),
            "t": complex_to_json(data.t),
            "branch": data.branch.as_dict(),
        },
        "z": [complex_to_json(z) for z in red.z_roots.roots],
        "z_residuals": list(red.z_roots.residuals),
        "table": [s.as_dict() for s in red.table],
        "attempts": [a.as_dict() for a in red.attempts],
    }
