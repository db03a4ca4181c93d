"""Report documents: exact values, verdicts, certificates, serialization.

Every number is an integer or a rational rendered "a/b"; reports
serialize to canonical JSON (sorted keys) and round-trip losslessly.
Timing lives in its own section so determinism checks can ignore it.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

_RAT = re.compile(r"^-?\d+/\d+$")


def encode_value(v):
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    if v is None or isinstance(v, (int, str, bool)):
        return v
    return str(v)


def decode_value(v):
    if isinstance(v, str) and _RAT.match(v):
        num, den = v.split("/")
        return Fraction(int(num), int(den))
    if isinstance(v, list):
        return [decode_value(x) for x in v]
    if isinstance(v, dict):
        return {k: decode_value(x) for k, x in v.items()}
    return v


def verdict_entry(v):
    """Serialize an IdentityVerdict into a report row."""
    return {
        "lhs": encode_value(v.lhs),
        "rhs": encode_value(v.rhs),
        "relation": v.relation,
        "status": v.status,
        "note": v.note,
    }


@dataclass
class ReportDoc:
    inputs: dict = field(default_factory=dict)
    invariants: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    def add_verdict(self, name, v):
        self.verdicts[name] = verdict_entry(v)

    def add_verdicts(self, items):
        for v in items:
            self.verdicts[v.name] = verdict_entry(v)

    def all_hold(self):
        return all(
            row["status"] in ("holds", "not-applicable")
            for row in self.verdicts.values()
        )

    def to_dict(self):
        return {
            "inputs": encode_value(self.inputs),
            "invariants": encode_value(self.invariants),
            "verdicts": encode_value(self.verdicts),
            "certificates": encode_value(self.certificates),
            "warnings": encode_value(self.warnings),
            "timing": self.timing,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text):
        raw = json.loads(text)
        return cls(
            inputs=raw.get("inputs", {}),
            invariants=raw.get("invariants", {}),
            verdicts=raw.get("verdicts", {}),
            certificates=raw.get("certificates", {}),
            warnings=raw.get("warnings", []),
            timing=raw.get("timing", {}),
        )

    def stable_json(self):
        """Canonical form without timing, for determinism comparisons."""
        d = self.to_dict()
        d.pop("timing", None)
        return json.dumps(d, sort_keys=True, indent=2)

    def to_text(self):
        lines = []
        if self.invariants:
            lines.append("invariants:")
            for k in sorted(self.invariants):
                lines.append(f"  {k} = {encode_value(self.invariants[k])}")
        if self.verdicts:
            lines.append("checks:")
            for k in sorted(self.verdicts):
                row = self.verdicts[k]
                mark = {"holds": "PASS", "fails": "FAIL", "not-applicable": "N/A "}[
                    row["status"]
                ]
                rel = {"eq": "=", "lt": "<", "le": "<="}[row["relation"]]
                detail = f"{row['lhs']} {rel} {row['rhs']}"
                note = f"  ({row['note']})" if row.get("note") else ""
                lines.append(f"  [{mark}] {k}: {detail}{note}")
        if self.warnings:
            lines.append("warnings:")
            for w in self.warnings:
                lines.append(f"  {w}")
        if self.certificates:
            lines.append("certificates:")
            for k in sorted(self.certificates):
                lines.append(f"  {k} = {encode_value(self.certificates[k])}")
        return "\n".join(lines) + "\n"
