"""Verification reports: per-check records with stable JSON serialization.

A report is deterministic given (input, version, seed) apart from the
recorded timings; `serialize_canonical` orders keys and records so that
re-emitting a saved report is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, asdict

TOOL_VERSION = "0.1.0"
REPORT_SCHEMA_VERSION = 1


@dataclass
class CheckRecord:
    check_id: str
    claim: str
    status: str            # "pass" | "fail" | "undecided"
    detail: str = ""
    counterexamples: list = field(default_factory=list)
    witness: dict | None = None
    bound: int | None = None     # undecided records carry the exhausted bound
    elapsed_ms: int = 0

    def as_dict(self) -> dict:
        d = {"check_id": self.check_id, "claim": self.claim,
             "status": self.status, "detail": self.detail,
             "elapsed_ms": self.elapsed_ms}
        if self.counterexamples:
            d["counterexamples"] = self.counterexamples
        if self.witness is not None:
            d["witness"] = self.witness
        if self.bound is not None:
            d["bound"] = self.bound
        return d


@dataclass
class VerificationReport:
    command: str
    input_digest: str
    seed: int
    records: list[CheckRecord] = field(default_factory=list)

    def add(self, record: CheckRecord):
        if record.status == "undecided" and record.bound is None:
            raise ValueError("undecided records must carry their exhausted bound")
        self.records.append(record)

    def summary(self) -> dict:
        out = {"pass": 0, "fail": 0, "undecided": 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 0 if self.summary()["fail"] == 0 else 1

    def as_dict(self) -> dict:
        recs = sorted((r.as_dict() for r in self.records),
                      key=lambda d: d["check_id"])
        return {
            "schema_version": REPORT_SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "seed": self.seed,
            "records": recs,
            "summary": self.summary(),
        }


def input_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def serialize_canonical(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def load_report(path: str) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    validate_report_dict(doc)
    return doc


def validate_report_dict(doc: dict):
    for key in ("schema_version", "tool_version", "command", "input_digest",
                "seed", "records", "summary"):
        if key not in doc:
            raise ValueError(f"report is missing {key!r}")
    counts = {"pass": 0, "fail": 0, "undecided": 0}
    ids = set()
    for r in doc["records"]:
        if r["status"] not in counts:
            raise ValueError(f"bad status {r['status']!r}")
        counts[r["status"]] += 1
        if r["check_id"] in ids:
            raise ValueError(f"duplicate check id {r['check_id']!r}")
        ids.add(r["check_id"])
        if r["status"] == "undecided" and "bound" not in r:
            raise ValueError("undecided record without its exhausted bound")
    if counts != doc["summary"]:
        raise ValueError("summary does not match record counts")
