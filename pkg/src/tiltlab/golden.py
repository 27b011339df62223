"""Golden tables: oracle-computed dimensions for every corpus entry,
stored as versioned JSON and regenerated bit-exactly by the test suite.

The oracles are the naive independent implementations; the main engines
are required to reproduce every number here.  Tor entries are capped by
the bar-complex size (the cap is recorded in the file).
"""

from __future__ import annotations

import json
from pathlib import Path

from .corpus import CONTEXTS, ENTRY_NAMES, get_entry, r_probe_modules, \
    generate_s_probes
from .equivalence import build_context
from .modules import RightModule, trace_of
from .oracles import OracleCapError, oracle_ext_dim, oracle_hom_dim, \
    oracle_tensor_dim, oracle_tor1_dim

SCHEMA_VERSION = 1
TOR_CELL_CAP = 260_000   # product of bar-complex widths tolerated by the oracle

DATA_DIR = Path(__file__).parent.joinpath("data", "golden")


def _canonical_context_key(entry_name: str) -> str | None:
    for en, tk in CONTEXTS:
        if en == entry_name:
            return tk
    return None


def build_golden(entry_name: str) -> dict:
    entry = get_entry(entry_name)
    probes = r_probe_modules(entry)
    doc: dict = {
        "schema": SCHEMA_VERSION,
        "entry": entry_name,
        "field": entry.field.name,
        "module_dims": {name: m.dim for name, m in probes},
        "hom": {},
        "ext": {},
    }
    for na, ma in probes:
        for nb, mb in probes:
            key = f"{na}|{nb}"
            doc["hom"][key] = oracle_hom_dim(ma, mb)
            doc["ext"][key] = oracle_ext_dim(ma, mb)
    tk = _canonical_context_key(entry_name)
    if tk is not None:
        ctx = build_context(entry.tilting[tk])
        s_probes = generate_s_probes(ctx, probes)
        doc["context"] = tk
        doc["s_module_dims"] = {name: m.dim for name, m in s_probes}
        doc["tensor"] = {}
        doc["tor"] = {}
        doc["tor_cell_cap"] = TOR_CELL_CAP
        T_left = ctx.T_left
        for name, N in s_probes:
            doc["tensor"][name] = oracle_tensor_dim(ctx.S, N, T_left)
            cells = _tor_cells(ctx.S, N, T_left)
            if cells <= TOR_CELL_CAP:
                try:
                    doc["tor"][name] = oracle_tor1_dim(ctx.S, N, T_left)
                except OracleCapError:
                    pass
        doc["torsion"] = {}
        for name, M in probes:
            tr, _ = trace_of(ctx.T, M)
            doc["torsion"][name] = tr.dim == M.dim
    return doc


def _tor_cells(S, N: RightModule, M_left: RightModule) -> int:
    bb = max(S.dim - 1, 0)
    c1 = N.dim * bb * M_left.dim
    c2 = N.dim * bb * bb * M_left.dim
    return c1 * c2


def golden_path(entry_name: str) -> Path:
    return DATA_DIR.joinpath(f"{entry_name}.json")


def serialize(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def save_golden(entry_name: str) -> Path:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    path = golden_path(entry_name)
    path.write_text(serialize(build_golden(entry_name)))
    return path

def load_golden(entry_name: str) -> dict:
    return json.loads(golden_path(entry_name).read_text())


def regenerate_all(names=ENTRY_NAMES):
    out = []
    for name in names:
        out.append(save_golden(name))
    return out


if __name__ == "__main__":
    for p in regenerate_all():
        print(p)
