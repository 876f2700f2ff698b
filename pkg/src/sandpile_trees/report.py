"""Run reports: JSON and CSV emission with big integers as decimal strings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from typing import Any

from . import __version__
from .lattice import GroupInvariants
from .theorems import TheoremReport


@dataclass
class RunReport:
    command: str
    parameters: dict[str, Any]
    results: dict[str, Any]
    wall_time: float = 0.0
    version: str = field(default=__version__)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(asdict(self), indent=indent)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        table = self.results.get("table")
        if table:
            cols = list(table[0])
            w.writerow(cols)
            for row in table:
                w.writerow([_cell(row.get(c)) for c in cols])
        else:
            w.writerow(["key", "value"])
            for k, v in _flatten(self.results):
                w.writerow([k, _cell(v)])
        return buf.getvalue()


def _cell(v) -> str:
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else str(v)


def _flatten(d: dict, prefix: str = ""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, v


def bigints_to_str(obj):
    """Recursively turn every non-bool integer into its decimal string."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): bigints_to_str(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [bigints_to_str(x) for x in obj]
    return str(obj)


def invariants_payload(inv: GroupInvariants) -> dict:
    return {"order": str(inv.order), "exponent": str(inv.exponent), "rank": inv.rank,
            "invariant_factors": [str(f) for f in inv.invariant_factors]}


def theorem_payload(rep: TheoremReport) -> dict:
    return {
        "d": rep.d, "h": rep.h, "num_vertices": rep.num_vertices,
        **invariants_payload(rep.computed),
        "predicted": {"rank": rep.predicted_rank, "order": str(rep.predicted_order),
                      "exponent": str(rep.predicted_exponent)},
        "checks": dict(rep.checks),
        "details": bigints_to_str(rep.details),
        "all_passed": rep.all_passed,
    }
