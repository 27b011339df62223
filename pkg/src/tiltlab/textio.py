"""Line-oriented text input format.

A file declares one base field, then algebras (quiver presentations or raw
structure constants), modules over them, optional tilting candidates, a
probe list, and optional bounded complexes.  Matrices are written with
rows separated by ';' and entries by spaces; rationals as 'a/b', prime
field scalars as integers.  Indices and vertex numbers are 1-based in
files.  '#' starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

from .algebras import Algebra, Arrow, PathAlgebra, QuiverPresentation, \
    build_path_algebra
from .derived import Complex, make_complex, DerivedError
from .linalg import Field, Mat, field_by_name
from .modules import ModuleError, ModuleMorphism, RightModule, direct_sum, \
    module_from_quiver_data, zero_module


class TextFormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass
class InputDocument:
    field: Field
    algebras: dict = dfield(default_factory=dict)       # name -> Algebra
    path_algebras: dict = dfield(default_factory=dict)  # name -> PathAlgebra
    modules: dict = dfield(default_factory=dict)        # name -> (algebra_name, RightModule)
    tilting: dict = dfield(default_factory=dict)        # name -> (algebra_name, RightModule)
    probes: list = dfield(default_factory=list)         # module names
    complexes: dict = dfield(default_factory=dict)      # name -> (algebra_name, Complex)

    def module(self, name: str) -> RightModule:
        return self.modules[name][1]

    def the_algebra(self) -> str:
        names = list(self.algebras)
        if len(names) != 1:
            raise ValueError("input declares more than one algebra; "
                             "qualify names explicitly")
        return names[0]


def _tokens(line: str) -> list[str]:
    return line.split()


def _parse_matrix(F: Field, text: str, lineno: int, nrows: int, ncols: int) -> Mat:
    text = text.strip()
    if not text:
        return Mat.zero(F, nrows, ncols)
    rows = []
    for chunk in text.split(";"):
        entries = chunk.split()
        try:
            rows.append([F.parse(e) for e in entries])
        except Exception:
            raise TextFormatError(lineno, f"bad scalar in matrix row {chunk!r}")
    if nrows == 0 or ncols == 0:
        if any(r for r in rows):
            raise TextFormatError(lineno, "matrix should be empty")
        return Mat.zero(F, nrows, ncols)
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise TextFormatError(
            lineno, f"matrix must be {nrows} x {ncols}, got "
                    f"{len(rows)} row(s) of widths {[len(r) for r in rows]}")
    return Mat(F, rows, ncols)


def _parse_sum(doc: InputDocument, expr: str, lineno: int):
    names = [p.strip() for p in expr.split("+")]
    mods = []
    alg_name = None
    for n in names:
        if n not in doc.modules:
            raise TextFormatError(lineno, f"unknown module {n!r}")
        an, m = doc.modules[n]
        if alg_name is None:
            alg_name = an
        elif alg_name != an:
            raise TextFormatError(lineno, "sum mixes modules over different algebras")
        mods.append(m)
    return alg_name, direct_sum(mods)[0] if len(mods) > 1 else mods[0]


def parse_document(text: str) -> InputDocument:
    lines = text.splitlines()
    doc = None
    i = 0
    n = len(lines)

    def strip(line):
        return line.split("#", 1)[0].strip()

    while i < n:
        line = strip(lines[i])
        lineno = i + 1
        if not line:
            i += 1
            continue
        toks = _tokens(line)
        head = toks[0]
        if head == "field":
            if doc is not None:
                raise TextFormatError(lineno, "field must be declared once, first")
            if len(toks) != 2:
                raise TextFormatError(lineno, "usage: field Q | field F<p>")
            try:
                doc = InputDocument(field_by_name(toks[1]))
            except Exception:
                raise TextFormatError(lineno, f"unknown field {toks[1]!r}")
            i += 1
            continue
        if doc is None:
            raise TextFormatError(lineno, "the file must start with a field line")
        if head == "algebra":
            i = _parse_algebra_block(doc, lines, i, strip)
            continue
        if head == "module":
            i = _parse_module_block(doc, lines, i, strip)
            continue
        if head == "tilting":
            # tilting NAME = A + B + ...
            rest = line[len("tilting"):].strip()
            if "=" not in rest:
                raise TextFormatError(lineno, "usage: tilting NAME = M1 + M2")
            name, expr = [p.strip() for p in rest.split("=", 1)]
            doc.tilting[name] = _parse_sum(doc, expr, lineno)
            i += 1
            continue
        if head == "probes":
            if len(toks) == 2 and toks[1] == "all":
                doc.probes = list(doc.modules)
            else:
                for nm in toks[1:]:
                    if nm not in doc.modules:
                        raise TextFormatError(lineno, f"unknown probe module {nm!r}")
                doc.probes = toks[1:]
            i += 1
            continue
        if head == "complex":
            i = _parse_complex_block(doc, lines, i, strip)
            continue
        raise TextFormatError(lineno, f"unknown directive {head!r}")
    if doc is None:
        raise TextFormatError(1, "empty input: expected a field line")
    return doc


def _block_lines(lines, start, strip):
    """Yield (lineno, stripped) until an 'end' line; returns end index."""
    i = start + 1
    body = []
    while i < len(lines):
        s = strip(lines[i])
        if s == "end":
            return body, i + 1
        if s:
            body.append((i + 1, s))
        i += 1
    raise TextFormatError(start + 1, "block is missing its 'end' line")


def _parse_algebra_block(doc, lines, start, strip):
    lineno = start + 1
    toks = _tokens(strip(lines[start]))
    if len(toks) != 3 or toks[2] not in ("quiver", "constants"):
        raise TextFormatError(lineno, "usage: algebra NAME quiver|constants")
    name = toks[1]
    if name in doc.algebras:
        raise TextFormatError(lineno, f"algebra {name!r} declared twice")
    body, nxt = _block_lines(lines, start, strip)
    F = doc.field
    if toks[2] == "quiver":
        nvertices = None
        arrows = []
        relations = []
        for ln, s in body:
            t = _tokens(s)
            if t[0] == "vertices":
                nvertices = int(t[1])
            elif t[0] == "arrow":
                if len(t) != 4:
                    raise TextFormatError(ln, "usage: arrow LABEL SRC TGT")
                arrows.append(Arrow(t[1], int(t[2]) - 1, int(t[3]) - 1))
            elif t[0] == "relation":
                relations.append(_parse_relation(F, s[len("relation"):], ln))
            else:
                raise TextFormatError(ln, f"unknown quiver field {t[0]!r}")
        if nvertices is None:
            raise TextFormatError(lineno, "quiver block needs a vertices line")
        q = QuiverPresentation(nvertices, tuple(arrows), tuple(relations))
        try:
            pa = build_path_algebra(F, q)
        except Exception as ex:
            raise TextFormatError(lineno, f"bad quiver presentation: {ex}")
        doc.algebras[name] = pa.algebra
        doc.path_algebras[name] = pa
        return nxt
    # structure constants
    dim = None
    labels = None
    unit = None
    mul_rows = {}
    for ln, s in body:
        t = _tokens(s)
        if t[0] == "dim":
            dim = int(t[1])
        elif t[0] == "labels":
            labels = tuple(t[1:])
        elif t[0] == "unit":
            unit = [F.parse(x) for x in t[1:]]
        elif t[0] == "mul":
            if len(t) < 4 or t[3] != "=":
                raise TextFormatError(ln, "usage: mul I J = coords...")
            i_, j_ = int(t[1]) - 1, int(t[2]) - 1
            mul_rows[(i_, j_)] = [F.parse(x) for x in t[4:]]
        else:
            raise TextFormatError(ln, f"unknown constants field {t[0]!r}")
    if dim is None or unit is None:
        raise TextFormatError(lineno, "constants block needs dim and unit")
    sc = [[None] * dim for _ in range(dim)]
    for i_ in range(dim):
        for j_ in range(dim):
            if (i_, j_) not in mul_rows:
                raise TextFormatError(lineno, f"missing mul {i_ + 1} {j_ + 1}")
            row = mul_rows[(i_, j_)]
            if len(row) != dim:
                raise TextFormatError(lineno,
                                      f"mul {i_ + 1} {j_ + 1} needs {dim} coords")
            sc[i_][j_] = tuple(row)
    try:
        A = Algebra(F, sc, unit, labels=labels)
    except Exception as ex:
        raise TextFormatError(lineno, f"bad structure constants: {ex}")
    doc.algebras[name] = A
    return nxt


def _parse_relation(F, rest, ln):
    terms = []
    for part in rest.split("+"):
        t = part.split()
        if len(t) != 2:
            raise TextFormatError(ln, "relation terms are 'COEFF PATH'")
        coeff = F.parse(t[0])
        path = tuple(t[1].split("*"))
        terms.append((coeff, path))
    return tuple(terms)


def _parse_module_block(doc, lines, start, strip):
    lineno = start + 1
    toks = _tokens(strip(lines[start]))
    if len(toks) != 4 or toks[2] != "over":
        raise TextFormatError(lineno, "usage: module NAME over ALGEBRA")
    name, alg_name = toks[1], toks[3]
    if alg_name not in doc.algebras:
        raise TextFormatError(lineno, f"unknown algebra {alg_name!r}")
    body, nxt = _block_lines(lines, start, strip)
    F = doc.field
    A = doc.algebras[alg_name]
    pa = doc.path_algebras.get(alg_name)
    vertexdims = None
    dim = None
    arrow_texts = {}
    action_texts = {}
    for ln, s in body:
        t = _tokens(s)
        if t[0] == "vertexdims":
            vertexdims = [int(x) for x in t[1:]]
        elif t[0] == "dim":
            dim = int(t[1])
        elif t[0] == "arrow":
            if len(t) < 3 or t[2] != "=":
                raise TextFormatError(ln, "usage: arrow LABEL = matrix")
            arrow_texts[t[1]] = (ln, s.split("=", 1)[1])
        elif t[0] == "action":
            if len(t) < 3 or t[2] != "=":
                raise TextFormatError(ln, "usage: action I = matrix")
            action_texts[int(t[1]) - 1] = (ln, s.split("=", 1)[1])
        else:
            raise TextFormatError(ln, f"unknown module field {t[0]!r}")
    if vertexdims is not None:
        if pa is None:
            raise TextFormatError(lineno,
                                  "vertexdims requires a quiver algebra")
        if len(vertexdims) != pa.quiver.nvertices:
            raise TextFormatError(lineno, "wrong number of vertex dimensions")
        mats = {}
        for label, (ln, text) in arrow_texts.items():
            try:
                a = pa.quiver.arrow_by_label(label)
            except Exception:
                raise TextFormatError(ln, f"unknown arrow {label!r}")
            mats[label] = _parse_matrix(F, text, ln, vertexdims[a.source],
                                        vertexdims[a.target])
        try:
            M = module_from_quiver_data(pa, vertexdims, mats)
        except ModuleError as ex:
            raise TextFormatError(lineno, f"invalid module: {ex}")
    else:
        if dim is None:
            raise TextFormatError(lineno, "module needs vertexdims or dim")
        actions = []
        for i in range(A.dim):
            if i not in action_texts:
                raise TextFormatError(lineno,
                                      f"missing action {i + 1} (one per basis element)")
            ln, text = action_texts[i]
            actions.append(_parse_matrix(F, text, ln, dim, dim))
        try:
            M = RightModule(A, actions, check=True)
        except ModuleError as ex:
            raise TextFormatError(lineno, f"invalid module: {ex}")
    doc.modules[name] = (alg_name, M)
    return nxt


def _parse_complex_block(doc, lines, start, strip):
    lineno = start + 1
    toks = _tokens(strip(lines[start]))
    if len(toks) != 4 or toks[2] != "over":
        raise TextFormatError(lineno, "usage: complex NAME over ALGEBRA")
    name, alg_name = toks[1], toks[3]
    if alg_name not in doc.algebras:
        raise TextFormatError(lineno, f"unknown algebra {alg_name!r}")
    body, nxt = _block_lines(lines, start, strip)
    F = doc.field
    lo = None
    term_exprs = {}
    d_texts = {}
    for ln, s in body:
        t = _tokens(s)
        if t[0] == "degrees":
            lo = int(t[1])
        elif t[0] == "term":
            deg = int(t[1])
            term_exprs[deg] = (ln, s.split("=", 1)[1].strip())
        elif t[0] == "d":
            deg = int(t[1])
            d_texts[deg] = (ln, s.split("=", 1)[1])
        else:
            raise TextFormatError(ln, f"unknown complex field {t[0]!r}")
    if not term_exprs:
        raise TextFormatError(lineno, "complex has no terms")
    degs = sorted(term_exprs)
    if lo is None:
        lo = degs[0]
    if degs != list(range(degs[0], degs[-1] + 1)):
        raise TextFormatError(lineno, "complex terms must cover a degree interval")
    terms = []
    for deg in degs:
        ln, expr = term_exprs[deg]
        an, m = _parse_sum(doc, expr, ln)
        if an != alg_name:
            raise TextFormatError(ln, "complex term over the wrong algebra")
        terms.append(m)
    diffs = []
    for k, deg in enumerate(degs[:-1]):
        src, dst = terms[k], terms[k + 1]
        if deg in d_texts:
            ln, text = d_texts[deg]
            mat = _parse_matrix(F, text, ln, src.dim, dst.dim)
        else:
            ln = lineno
            mat = Mat.zero(F, src.dim, dst.dim)
        try:
            diffs.append(ModuleMorphism(src, dst, mat, check=True))
        except ModuleError as ex:
            raise TextFormatError(ln, f"differential at degree {deg}: {ex}")
    try:
        cx = make_complex(doc.algebras[alg_name], degs[0], terms, diffs,
                          check=True)
    except DerivedError as ex:
        raise TextFormatError(lineno, f"invalid complex: {ex}")
    doc.complexes[name] = (alg_name, cx)
    return nxt


# -- writer -------------------------------------------------------------------


def format_matrix(F: Field, m: Mat) -> str:
    return " ; ".join(" ".join(F.fmt(x) for x in row) for row in m.rows)


def corpus_entry_to_text(entry_name: str) -> str:
    """Serialize a corpus entry (algebra, named modules, canonical tilting,
    probes) in the input format."""
    from .corpus import get_entry, _canonical_tilting_key
    entry = get_entry(entry_name)
    F = entry.field
    out = [f"# corpus entry {entry_name}", f"field {F.name}", ""]
    if entry.path_algebra is not None:
        pa = entry.path_algebra
        out.append(f"algebra A quiver")
        out.append(f"vertices {pa.quiver.nvertices}")
        for a in pa.quiver.arrows:
            out.append(f"arrow {a.label} {a.source + 1} {a.target + 1}")
        for rel in pa.quiver.relations:
            parts = [f"{F.fmt(c)} {'*'.join(p)}" for c, p in rel]
            out.append("relation " + " + ".join(parts))
        out.append("end")
    else:
        A = entry.algebra
        out.append("algebra A constants")
        out.append(f"dim {A.dim}")
        out.append("labels " + " ".join(A.labels))
        out.append("unit " + " ".join(F.fmt(x) for x in A.unit))
        for i in range(A.dim):
            for j in range(A.dim):
                out.append(f"mul {i + 1} {j + 1} = "
                           + " ".join(F.fmt(x) for x in A.sc[i][j]))
        out.append("end")
    out.append("")
    pa = entry.path_algebra
    for name in entry.probes:
        M = entry.modules[name]
        out.append(f"module {name} over A")
        out.append(f"dim {M.dim}")
        for i in range(entry.algebra.dim):
            out.append(f"action {i + 1} = " + format_matrix(F, M.actions[i]))
        out.append("end")
        out.append("")
    key = _canonical_tilting_key(entry_name)
    if key is not None:
        T = entry.tilting[key]
        # declare the tilting module explicitly as its own module block
        out.append("module TILT over A")
        out.append(f"dim {T.dim}")
        for i in range(entry.algebra.dim):
            out.append(f"action {i + 1} = " + format_matrix(F, T.actions[i]))
        out.append("end")
        out.append("")
        out.append("tilting T = TILT")
    out.append("probes " + " ".join(entry.probes))
    out.append("")
    return "\n".join(out)
