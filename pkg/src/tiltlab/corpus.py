"""Built-in example catalogue: small algebras with named modules, canonical
tilting modules, probe generation on both sides of a tilting context, and
bounded tilting-module enumeration.

Entries cover the base field, A2 and A3 path algebras, the Kronecker
algebra (probes capped by dimension), the dual numbers, and an upper
triangular matrix algebra given by raw structure constants, over Q and
over F2/F3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .algebras import (
    Algebra, PathAlgebra, base_field_algebra, build_path_algebra,
    kronecker_quiver, linear_quiver, dual_numbers, triangular_matrix_algebra,
)
from .linalg import Field, GF, Mat, QQ, field_by_name
from .modules import (
    RightModule, direct_sum, indecomposable_summands, is_isomorphic,
    module_from_quiver_data, regular_module, simple_at_vertex, zero_module,
)
from .homology import duality, projective_indecomposables, syzygy, top, \
    radical_submodule
from .tilting import is_tilting, summand_classes


@dataclass
class CorpusEntry:
    name: str
    field: Field
    algebra: Algebra
    path_algebra: PathAlgebra | None
    modules: dict                      # name -> RightModule
    tilting: dict                      # name -> RightModule (known tilting)
    probes: tuple[str, ...]            # names of the standard probe modules
    indecomposables_complete: bool     # probe list exhausts the indecomposables
    derived_pool: tuple[str, ...]      # module names for random complexes
    notes: tuple[str, ...] = ()


ENTRY_NAMES = (
    "basefield_q", "basefield_f2",
    "a2_q", "a2_f2", "a2_f3",
    "a3_q", "a3_f2",
    "kronecker_q", "kronecker_f2",
    "dualnumbers_q", "dualnumbers_f2",
    "triangular3_q",
)


def _interval_module(pa: PathAlgebra, i: int, j: int) -> RightModule:
    """A_n interval module supported on vertices i..j (0-based, inclusive)."""
    n = pa.quiver.nvertices
    dims = [1 if i <= v <= j else 0 for v in range(n)]
    mats = {}
    for a in pa.quiver.arrows:
        if i <= a.source and a.target <= j:
            mats[a.label] = Mat.from_int_rows(pa.algebra.field, [[1]])
    return module_from_quiver_data(pa, dims, mats)


def _an_entry(name: str, F: Field, n: int) -> CorpusEntry:
    pa = build_path_algebra(F, linear_quiver(n))
    mods = {}
    for i in range(n):
        for j in range(i, n - 1 + 1):
            label = f"M{i + 1}{j + 1}"
            mods[label] = _interval_module(pa, i, j)
    # friendly aliases
    for i in range(n):
        mods[f"P{i + 1}"] = mods[f"M{i + 1}{n}"]
        mods[f"S{i + 1}"] = mods[f"M{i + 1}{i + 1}"]
        mods[f"I{i + 1}"] = mods[f"M1{i + 1}"]
    tilt = {"regular": regular_module(pa.algebra)}
    # the slice tilt: sum of all intervals starting at vertex 1
    slice_parts = [mods[f"M1{j + 1}"] for j in range(n)]
    tilt["slice"] = direct_sum(slice_parts)[0]
    probes = tuple(sorted(set(f"M{i + 1}{j + 1}" for i in range(n)
                              for j in range(i, n))))
    return CorpusEntry(name, F, pa.algebra, pa, mods, tilt, probes, True,
                       probes)


def _kronecker_modules(pa: PathAlgebra, depth: int = 2):
    F = pa.algebra.field
    mods = {}
    mods["P2"] = simple_at_vertex(pa, 1)          # dim (0,1)
    mods["S1"] = simple_at_vertex(pa, 0)
    ident = Mat.identity

    def preproj(k):
        # dimension vector (k, k+1): maps a, b are the two shift embeddings
        rows_a = [[1 if c == r else 0 for c in range(k + 1)] for r in range(k)]
        rows_b = [[1 if c == r + 1 else 0 for c in range(k + 1)] for r in range(k)]
        return module_from_quiver_data(pa, [k, k + 1],
                                       {"a": Mat.from_int_rows(F, rows_a),
                                        "b": Mat.from_int_rows(F, rows_b)})

    def preinj(k):
        rows_a = [[1 if c == r else 0 for c in range(k)] for r in range(k + 1)]
        rows_b = [[1 if c == r - 1 else 0 for c in range(k)] for r in range(k + 1)]
        return module_from_quiver_data(pa, [k + 1, k],
                                       {"a": Mat.from_int_rows(F, rows_a),
                                        "b": Mat.from_int_rows(F, rows_b)})

    for k in range(1, depth + 1):
        mods[f"Q{k}"] = preproj(k)    # Q1 = P1 has dim vector (1,2)
        mods[f"J{k}"] = preinj(k)
    mods["P1"] = mods["Q1"]
    # homogeneous modules at the rational points of the projective line
    for lbl, (la, lb) in {"R0": (1, 0), "Rinf": (0, 1), "R1": (1, 1)}.items():
        mods[lbl] = module_from_quiver_data(
            pa, [1, 1], {"a": Mat.from_int_rows(F, [[la]]),
                         "b": Mat.from_int_rows(F, [[lb]])})
    return mods


def _kronecker_entry(name: str, F: Field) -> CorpusEntry:
    pa = build_path_algebra(F, kronecker_quiver())
    mods = _kronecker_modules(pa)
    tilt = {"regular": regular_module(pa.algebra),
            "preprojective": direct_sum([mods["Q1"], mods["Q2"]])[0]}
    probes = ("S1", "P2", "P1", "Q2", "J1", "J2", "R0", "R1", "Rinf")
    notes = ("representation-infinite: probe list is capped by dimension and "
             "is not exhaustive",)
    return CorpusEntry(name, F, pa.algebra, pa, mods, tilt, probes, False,
                       ("S1", "P2", "P1", "R0", "R1"), notes)


def _dualnumbers_entry(name: str, F: Field) -> CorpusEntry:
    pa = dual_numbers(F)
    mods = {"S": simple_at_vertex(pa, 0), "R": regular_module(pa.algebra)}
    tilt = {"regular": mods["R"]}
    notes = ("self-injective with infinite global dimension: random bounded "
             "complexes for the derived sweep use projective terms so that "
             "stepwise resolutions terminate",)
    return CorpusEntry(name, F, pa.algebra, pa, mods, tilt, ("S", "R"), True,
                       ("R",), notes)


def _triangular_entry(name: str, F: Field) -> CorpusEntry:
    A = triangular_matrix_algebra(F, 3)
    pdata = projective_indecomposables(A)
    mods = {}
    for i, (P, Ssim) in enumerate(zip(pdata.modules, pdata.simples)):
        mods[f"P{i + 1}"] = P
        mods[f"S{i + 1}"] = Ssim
    # injectives via duality on the opposite side
    opp = projective_indecomposables(A.opposite())
    for i, P in enumerate(opp.modules):
        mods[f"I{i + 1}"] = duality(P)
    extra = {}
    for mname, m in list(mods.items()):
        radm, _ = radical_submodule(m)
        if 0 < radm.dim < m.dim:
            extra[f"rad{mname}"] = radm
    mods.update(extra)
    # dedupe into named indecomposable probes
    probe_mods = []
    probe_names = []
    for mname, m in mods.items():
        for s in indecomposable_summands(m):
            if not any(is_isomorphic(s.module, q).status == "iso"
                       for q in probe_mods):
                probe_mods.append(s.module)
                probe_names.append(mname if m.dim == s.module.dim else
                                   f"{mname}~{s.module.dim}")
    for nm, m in zip(probe_names, probe_mods):
        mods.setdefault(nm, m)
    tilt = {"regular": regular_module(A)}
    notes = ("given by raw structure constants; the probe list is verified "
             "complete by the count of indecomposables of its quiver type",)
    return CorpusEntry(name, F, A, None, mods, tilt, tuple(probe_names),
                       True, tuple(probe_names), notes)


def _basefield_entry(name: str, F: Field) -> CorpusEntry:
    A = base_field_algebra(F)
    mods = {"k": regular_module(A)}
    return CorpusEntry(name, F, A, None, mods, {"regular": mods["k"]},
                       ("k",), True, ("k",))


_cache: dict = {}


def get_entry(name: str) -> CorpusEntry:
    if name in _cache:
        return _cache[name]
    if name == "basefield_q":
        e = _basefield_entry(name, QQ)
    elif name == "basefield_f2":
        e = _basefield_entry(name, GF(2))
    elif name == "a2_q":
        e = _an_entry(name, QQ, 2)
    elif name == "a2_f2":
        e = _an_entry(name, GF(2), 2)
    elif name == "a2_f3":
        e = _an_entry(name, GF(3), 2)
    elif name == "a3_q":
        e = _an_entry(name, QQ, 3)
    elif name == "a3_f2":
        e = _an_entry(name, GF(2), 3)
    elif name == "kronecker_q":
        e = _kronecker_entry(name, QQ)
    elif name == "kronecker_f2":
        e = _kronecker_entry(name, GF(2))
    elif name == "dualnumbers_q":
        e = _dualnumbers_entry(name, QQ)
    elif name == "dualnumbers_f2":
        e = _dualnumbers_entry(name, GF(2))
    elif name == "triangular3_q":
        e = _triangular_entry(name, QQ)
    else:
        raise KeyError(f"unknown corpus entry {name!r}")
    _cache[name] = e
    return e


# canonical verification contexts: entry name -> tilting-module key
CONTEXTS = (
    ("basefield_q", "regular"),
    ("a2_q", "slice"),
    ("a2_q", "regular"),
    ("a2_f2", "slice"),
    ("a2_f3", "slice"),
    ("a3_q", "slice"),
    ("a3_f2", "slice"),
    ("kronecker_f2", "preprojective"),
    ("kronecker_q", "preprojective"),
    ("dualnumbers_q", "regular"),
    ("triangular3_q", "regular"),
)

# contexts included in the heavy derived sweeps (runtime budget: the
# Q-valued Kronecker context runs its module-level sweeps only)
DERIVED_CONTEXTS = (
    ("basefield_q", "regular"),
    ("a2_q", "slice"),
    ("a2_f2", "slice"),
    ("a2_f3", "slice"),
    ("a3_f2", "slice"),
    ("kronecker_f2", "preprojective"),
    ("dualnumbers_q", "regular"),
    ("triangular3_q", "regular"),
)


def _canonical_tilting_key(entry_name: str) -> str | None:
    for en, tk in CONTEXTS:
        if en == entry_name:
            return tk
    return None


def r_probe_modules(entry: CorpusEntry) -> list[tuple[str, RightModule]]:
    out = [(n, entry.modules[n]) for n in entry.probes]
    out.append(("regular", regular_module(entry.algebra)))
    return out


def generate_s_probes(ctx, r_probes, dim_cap: int = 14):
    """Named indecomposable probes over S: projectives, simples, injectives,
    duals, functor images of the R-side probes, radicals and syzygies --
    split into indecomposable summands and deduplicated."""
    from .equivalence import E1, H
    S = ctx.S
    pdata = projective_indecomposables(S)
    seeds: list[tuple[str, RightModule]] = []
    for i, m in enumerate(pdata.modules):
        seeds.append((f"sP{i + 1}", m))
    for i, m in enumerate(pdata.simples):
        seeds.append((f"sS{i + 1}", m))
    opp = projective_indecomposables(S.opposite())
    for i, m in enumerate(opp.modules):
        seeds.append((f"sI{i + 1}", duality(m)))
    seeds.append(("Td", ctx.Td))
    seeds.append(("sReg", regular_module(S)))
    for name, M in r_probes:
        seeds.append((f"H({name})", H(ctx, M).module))
        seeds.append((f"E1({name})", E1(ctx, M).module))
    extra = []
    for name, m in seeds:
        if 0 < m.dim <= dim_cap:
            radm, _ = radical_submodule(m)
            if 0 < radm.dim:
                extra.append((f"rad[{name}]", radm))
            t, _ = top(m)
            if 0 < t.dim < m.dim:
                extra.append((f"top[{name}]", t))
    seeds.extend(extra)
    out: list[tuple[str, RightModule]] = []
    for name, m in seeds:
        if m.dim == 0 or m.dim > dim_cap:
            continue
        for s in indecomposable_summands(m):
            if not any(is_isomorphic(s.module, q).status == "iso"
                       for _, q in out):
                out.append((name if m.dim == s.module.dim
                            else f"{name}~{s.module.dim}", s.module))
    return out


def enumerate_tilting_classes(entry: CorpusEntry, bound: int | None = None,
                              seed: int = 0):
    """All multiplicity-free tilting modules up to equivalence, from the
    entry's (complete) indecomposable probe list."""
    if not entry.indecomposables_complete:
        raise ValueError(f"{entry.name}: probe list is not exhaustive; "
                         "tilting enumeration would be partial")
    indecs = []
    for name in entry.probes:
        m = entry.modules[name]
        if not any(is_isomorphic(m, q).status == "iso" for _, q in indecs):
            indecs.append((name, m))
    nsimples = len(projective_indecomposables(entry.algebra).modules)
    found = []
    for size in range(1, nsimples + 1):
        for combo in combinations(indecs, size):
            T = direct_sum([m for _, m in combo])[0]
            res = is_tilting(T, bound=bound, seed=seed)
            if res.status == "tilting":
                found.append((tuple(n for n, _ in combo), T, res.certificate))
            elif res.status == "undecided":
                raise RuntimeError(
                    f"tilting enumeration undecided on {[n for n, _ in combo]}")
    return found
