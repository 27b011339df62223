"""Finite-dimensional associative unital algebras by structure constants,
quiver presentations with admissible relations, and Jacobson radicals.

Conventions fixed here and used everywhere else:
  * elements are row coordinate vectors over the algebra's basis;
  * b_i * b_j = sum_k sc[i][j][k] b_k;
  * path composition reads left-to-right, so e_i * (path from i) = path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .linalg import (
    Field, Mat, QQ, charpoly, coordinates_in_rowspace, rank, right_kernel_basis,
    row_space_basis, vec_add, vec_is_zero, vec_matmul, vec_scale, zero_vec,
)


class AlgebraError(ValueError):
    pass


class Algebra:
    """Associative unital algebra given by basis and structure constants."""

    __slots__ = ("field", "dim", "labels", "sc", "unit", "supplied_radical", "_hash")

    def __init__(self, field: Field, sc, unit, labels=None, radical_rows=None,
                 check: bool = True):
        self.field = field
        sc = tuple(tuple(tuple(row) for row in plane) for plane in sc)
        self.dim = len(sc)
        self.sc = sc
        self.unit = tuple(unit)
        if labels is None:
            labels = tuple(f"b{i}" for i in range(self.dim))
        self.labels = tuple(labels)
        self.supplied_radical = None
        if radical_rows is not None:
            self.supplied_radical = Mat(field, [tuple(r) for r in radical_rows], self.dim)
        self._hash = None
        if check:
            self._validate()

    def __eq__(self, other):
        return (isinstance(other, Algebra) and self.field is other.field
                and self.sc == other.sc and self.unit == other.unit)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.field), self.sc, self.unit))
        return self._hash

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field})"

    def _validate(self):
        n = self.dim
        if len(self.unit) != n or any(len(p) != n or any(len(r) != n for r in p)
                                      for p in self.sc):
            raise AlgebraError("structure constant tensor has wrong shape")
        rm = [self.right_mult_matrix_basis(j) for j in range(n)]
        ident = Mat.identity(self.field, n)
        if self.right_mult_matrix(self.unit) != ident:
            raise AlgebraError("unit law fails on the right")
        if self.left_mult_matrix(self.unit) != ident:
            raise AlgebraError("unit law fails on the left")
        for j in range(n):
            for l in range(n):
                prod = rm[j] @ rm[l]
                comb = Mat.zero(self.field, n, n)
                for k in range(n):
                    c = self.sc[j][l][k]
                    if c != self.field.zero:
                        comb = comb + rm[k].scale(c)
                if prod != comb:
                    raise AlgebraError(f"associativity fails at basis pair ({j},{l})")

    # -- multiplication -------------------------------------------------

    def mul_vec(self, x, y) -> tuple:
        F = self.field
        out = list(zero_vec(F, self.dim))
        for i, xi in enumerate(x):
            if xi == F.zero:
                continue
            for j, yj in enumerate(y):
                if yj == F.zero:
                    continue
                c = F.mul(xi, yj)
                row = self.sc[i][j]
                for k, v in enumerate(row):
                    if v != F.zero:
                        out[k] = F.add(out[k], F.mul(c, v))
        return tuple(out)

    def right_mult_matrix_basis(self, j: int) -> Mat:
        """Matrix of v -> v * b_j on row vectors."""
        return Mat(self.field, [self.sc[i][j] for i in range(self.dim)], self.dim)

    def right_mult_matrix(self, x) -> Mat:
        F = self.field
        acc = Mat.zero(F, self.dim, self.dim)
        for j, xj in enumerate(x):
            if xj != F.zero:
                acc = acc + self.right_mult_matrix_basis(j).scale(xj)
        return acc

    def left_mult_matrix_basis(self, i: int) -> Mat:
        """Matrix of v -> b_i * v on row vectors."""
        return Mat(self.field, [self.sc[i][j] for j in range(self.dim)], self.dim)

    def left_mult_matrix(self, x) -> Mat:
        F = self.field
        acc = Mat.zero(F, self.dim, self.dim)
        for i, xi in enumerate(x):
            if xi != F.zero:
                acc = acc + self.left_mult_matrix_basis(i).scale(xi)
        return acc

    def power_vec(self, x, k: int) -> tuple:
        acc = self.unit
        for _ in range(k):
            acc = self.mul_vec(acc, x)
        return acc

    def opposite(self) -> "Algebra":
        n = self.dim
        sc_op = tuple(tuple(self.sc[j][i] for j in range(n)) for i in range(n))
        rad = self.supplied_radical.rows if self.supplied_radical is not None else None
        return Algebra(self.field, sc_op, self.unit,
                       labels=tuple(l + "^op" for l in self.labels),
                       radical_rows=rad, check=False)

    def is_commutative(self) -> bool:
        return all(self.sc[i][j] == self.sc[j][i]
                   for i in range(self.dim) for j in range(self.dim))


# -- radical ---------------------------------------------------------------


def _basis_traces(A: Algebra) -> tuple:
    """t_k = trace of left multiplication by b_k (trace is linear in x)."""
    F = A.field
    out = []
    for k in range(A.dim):
        t = F.zero
        for j in range(A.dim):
            t = F.add(t, A.sc[k][j][j])
        out.append(t)
    return tuple(out)


def _trace_form_kernel(A: Algebra, basis_rows: list[tuple]) -> list[tuple]:
    """{x in span(basis) : tr(L_(x*y)) = 0 for all y in span(basis)}."""
    F = A.field
    r = len(basis_rows)
    if r == 0:
        return []
    traces = _basis_traces(A)
    rows = []
    for l in range(r):
        row = []
        for j in range(r):
            prod = A.mul_vec(basis_rows[j], basis_rows[l])
            t = F.zero
            for c, tk in zip(prod, traces):
                if c != F.zero:
                    t = F.add(t, F.mul(c, tk))
            row.append(t)
        rows.append(tuple(row))
    ker = right_kernel_basis(Mat(F, rows, r))
    out = []
    for alpha in ker:
        v = zero_vec(F, A.dim)
        for c, b in zip(alpha, basis_rows):
            if c != F.zero:
                v = vec_add(F, v, vec_scale(F, c, b))
        out.append(v)
    return out


def _charpoly_coeff_kernel(A: Algebra, basis_rows: list[tuple], q: int) -> list[tuple]:
    """Char-p analogue step: kernel of x -> (coefficient c_q of charpoly of
    L_(x*y)) over all y in the current subspace.  c_q is F_p-linear on the
    subspace produced by the previous steps, so a basis evaluation suffices.
    """
    F = A.field
    r = len(basis_rows)
    if r == 0:
        return []
    rows = []
    for l in range(r):
        row = []
        for j in range(r):
            prod = A.mul_vec(basis_rows[j], basis_rows[l])
            cp = charpoly(A.left_mult_matrix(prod))
            row.append(cp[q] if q < len(cp) else F.zero)
        rows.append(tuple(row))
    ker = right_kernel_basis(Mat(F, rows, r))
    out = []
    for alpha in ker:
        v = zero_vec(F, A.dim)
        for c, b in zip(alpha, basis_rows):
            if c != F.zero:
                v = vec_add(F, v, vec_scale(F, c, b))
        out.append(v)
    return out


def _compute_radical_rows(A: Algebra) -> Mat:
    F = A.field
    basis = [tuple(r) for r in Mat.identity(F, A.dim).rows]
    if F.p is None:
        rad = _trace_form_kernel(A, basis)
    else:
        # characteristic-p chain: the q = 1 step is the plain trace form,
        # later steps use the charpoly coefficient c_q for q = p, p^2, ...
        p = F.p
        rad = _trace_form_kernel(A, basis)
        q = p
        while q <= A.dim and rad:
            rad = _charpoly_coeff_kernel(A, rad, q)
            q *= p
    if not rad:
        return Mat(F, [], A.dim)
    return row_space_basis(Mat(F, rad, A.dim))


def _verify_radical(A: Algebra, rad: Mat):
    """The computed candidate must be a nilpotent two-sided ideal with
    semisimple quotient; anything else is a hard error, never a guess."""
    F = A.field
    for r in rad.rows:
        for j in range(A.dim):
            b = tuple(F.one if i == j else F.zero for i in range(A.dim))
            for prod in (A.mul_vec(r, b), A.mul_vec(b, r)):
                if coordinates_in_rowspace(rad, prod) is None:
                    raise AlgebraError("radical candidate is not a two-sided ideal")
    # nilpotency: J^(k+1) spanned by products of J^k basis with J basis
    current = rad
    for _ in range(A.dim + 1):
        if current.nrows == 0:
            break
        prods = []
        for x in current.rows:
            for y in rad.rows:
                v = A.mul_vec(x, y)
                if not vec_is_zero(F, v):
                    prods.append(v)
        current = row_space_basis(Mat(F, prods, A.dim)) if prods else Mat(F, [], A.dim)
    else:
        raise AlgebraError("radical candidate is not nilpotent")
    Q, _, _ = quotient_by_ideal(A, rad)
    if _compute_radical_rows(Q).nrows != 0:
        raise AlgebraError("quotient by radical candidate is not semisimple")


@lru_cache(maxsize=None)
def radical_rows(A: Algebra) -> Mat:
    """Canonical row basis of the Jacobson radical (verified)."""
    if A.supplied_radical is not None:
        rad = row_space_basis(A.supplied_radical)
    else:
        rad = _compute_radical_rows(A)
    _verify_radical(A, rad)
    return rad


def is_semisimple(A: Algebra) -> bool:
    return radical_rows(A).nrows == 0


def quotient_by_ideal(A: Algebra, ideal: Mat) -> tuple[Algebra, Mat, Mat]:
    """Quotient algebra A / I for a two-sided ideal given by echelon rows.

    Returns (Q, proj, lift): proj is dim(A) x dim(Q) (row-vector convention),
    lift is a dim(Q) x dim(A) section with lift @ proj = identity.
    """
    from .linalg import rref
    F = A.field
    n = A.dim
    if ideal.nrows == 0:
        piv = ()
    else:
        red, piv = rref(ideal)
        ideal = Mat(F, red.rows[: len(piv)], n)
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    m = len(free)
    lift = Mat(F, [tuple(F.one if j == fc else F.zero for j in range(n)) for fc in free], n)

    def reduce_vec(v):
        v = list(v)
        for i, pc in enumerate(piv):
            c = v[pc]
            if c != F.zero:
                for j, x in enumerate(ideal.rows[i]):
                    v[j] = F.sub(v[j], F.mul(c, x))
        return tuple(v[fc] for fc in free)

    proj = Mat(F, [reduce_vec(tuple(F.one if j == i else F.zero for j in range(n)))
                   for i in range(n)], m)
    sc = []
    for i in range(m):
        plane = []
        for j in range(m):
            prod = A.mul_vec(lift.rows[i], lift.rows[j])
            plane.append(reduce_vec(prod))
        sc.append(tuple(plane))
    unit = reduce_vec(A.unit)
    labels = tuple(A.labels[fc] for fc in free)
    Q = Algebra(F, sc, unit, labels=labels, check=False)
    return Q, proj, lift


# -- element-level tools ---------------------------------------------------


def min_poly_of_element(A: Algebra, x) -> list:
    """Monic minimal polynomial (low-to-high coefficients) of x in A."""
    F = A.field
    powers = [A.unit]
    while True:
        stacked = Mat(F, powers, A.dim)
        nxt = A.mul_vec(powers[-1], x)
        coords = coordinates_in_rowspace(row_space_basis(stacked), nxt)
        if coords is not None:
            sol = coordinates_in_rowspace(stacked, nxt)
            if sol is None:
                # dependent on the span but not on raw powers cannot happen:
                # powers are linearly independent by construction
                raise AlgebraError("internal: power dependence inconsistency")
            deg = len(powers)
            coeffs = [F.neg(c) for c in sol] + [F.one]
            return coeffs
        powers.append(nxt)


def center_rows(A: Algebra) -> Mat:
    """Row basis of the center {x : xb = bx for all basis b}."""
    F = A.field
    cols = []
    for j in range(A.dim):
        L = A.left_mult_matrix_basis(j)
        Rm = A.right_mult_matrix_basis(j)
        diff = L - Rm
        cols.append(diff)
    stacked = cols[0]
    for d in cols[1:]:
        stacked = stacked.hstack(d)
    from .linalg import left_kernel_basis
    ker = left_kernel_basis(stacked)
    if not ker:
        return Mat(F, [], A.dim)
    return row_space_basis(Mat(F, ker, A.dim))


# -- quivers ---------------------------------------------------------------


@dataclass(frozen=True)
class Arrow:
    label: str
    source: int
    target: int


@dataclass(frozen=True)
class QuiverPresentation:
    nvertices: int
    arrows: tuple[Arrow, ...]
    # each relation: tuple of (coefficient, path) with path a tuple of arrow
    # labels of length >= 2, all paths sharing source and target
    relations: tuple[tuple, ...] = ()

    def arrow_by_label(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise AlgebraError(f"no arrow labelled {label!r}")


@dataclass(frozen=True)
class PathInfo:
    source: int
    target: int
    arrows: tuple[int, ...]  # indices into quiver.arrows, composed left-to-right

    def label(self, quiver: QuiverPresentation) -> str:
        if not self.arrows:
            return f"e{self.source + 1}"
        return "*".join(quiver.arrows[i].label for i in self.arrows)


@dataclass(frozen=True)
class PathAlgebra:
    algebra: Algebra
    quiver: QuiverPresentation
    paths: tuple[PathInfo, ...]

    def vertex_idempotent_index(self, v: int) -> int:
        for i, p in enumerate(self.paths):
            if not p.arrows and p.source == v:
                return i
        raise AlgebraError(f"vertex {v} has no idempotent basis path")

    def arrow_basis_index(self, label: str) -> int:
        for i, p in enumerate(self.paths):
            if len(p.arrows) == 1 and self.quiver.arrows[p.arrows[0]].label == label:
                return i
        raise AlgebraError(f"arrow {label!r} is not a basis path (killed by relations?)")


def _path_target(q: QuiverPresentation, arrows: tuple[int, ...], source: int) -> int:
    v = source
    for ai in arrows:
        a = q.arrows[ai]
        if a.source != v:
            raise AlgebraError("path is not composable")
        v = a.target
    return v


def build_path_algebra(field: Field, q: QuiverPresentation,
                       max_len: int = 30, max_dim: int = 2000) -> PathAlgebra:
    """Path algebra over an explicit field (relations' coefficients parsed
    as field scalars)."""
    for a in q.arrows:
        if not (0 <= a.source < q.nvertices and 0 <= a.target < q.nvertices):
            raise AlgebraError(f"arrow {a.label} touches a missing vertex")
    for rel in q.relations:
        src = trg = None
        for coeff, path in rel:
            if len(path) < 2:
                raise AlgebraError("relation contains a path of length < 2")
            arrows = tuple(_arrow_index(q, lbl) for lbl in path)
            s = q.arrows[arrows[0]].source
            t = _path_target(q, arrows, s)
            if src is None:
                src, trg = s, t
            elif (s, t) != (src, trg):
                raise AlgebraError("relation mixes paths with different endpoints")

    # enumerate all paths of length < L for growing L
    by_len: list[list[PathInfo]] = [[PathInfo(v, v, ()) for v in range(q.nvertices)]]
    L = 1
    while True:
        prev = by_len[-1]
        new = []
        for p in prev:
            for i, a in enumerate(q.arrows):
                if a.source == p.target:
                    new.append(PathInfo(p.source, a.target, p.arrows + (i,)))
        if not new:
            # no longer paths at all: admissible with every long path absent
            all_paths = [p for lev in by_len for p in lev]
            return _assemble_path_algebra(field, q, all_paths, by_len, None)
        by_len.append(new)
        total = sum(len(lev) for lev in by_len)
        if total > max_dim or L > max_len:
            raise AlgebraError(
                f"path enumeration exceeded caps (len {L}, {total} paths): "
                "relations are non-admissible or the quotient is infinite-dimensional")
        # does the ideal contain every path of length L?
        all_paths = [p for lev in by_len for p in lev]
        ideal = _ideal_rows(field, q, all_paths, by_len)
        if ideal is not None and _ideal_swallows_top(field, all_paths, by_len, ideal):
            return _assemble_path_algebra(field, q, all_paths, by_len, ideal)
        L += 1


def _arrow_index(q: QuiverPresentation, label: str) -> int:
    for i, a in enumerate(q.arrows):
        if a.label == label:
            return i
    raise AlgebraError(f"no arrow labelled {label!r}")


def _path_index(all_paths, info: PathInfo) -> int | None:
    for i, p in enumerate(all_paths):
        if p == info:
            return i
    return None


def _ideal_rows(field, q, all_paths, by_len) -> Mat | None:
    """Span of u * r * v inside the truncation, as echelon rows."""
    if not q.relations:
        return Mat(field, [], len(all_paths))
    idx = {p: i for i, p in enumerate(all_paths)}
    maxlen = len(by_len) - 1
    rows = []
    rel_data = []
    for rel in q.relations:
        terms = []
        for coeff, path in rel:
            arrows = tuple(_arrow_index(q, lbl) for lbl in path)
            s = q.arrows[arrows[0]].source
            t = _path_target(q, arrows, s)
            if isinstance(coeff, str):
                coeff = field.parse(coeff)
            elif isinstance(coeff, int):
                coeff = field.of_int(coeff)
            terms.append((coeff, PathInfo(s, t, arrows)))
        rel_data.append(terms)
    all_list = list(all_paths)
    for terms in rel_data:
        s0, t0 = terms[0][1].source, terms[0][1].target
        for u in all_list:
            if u.target != s0:
                continue
            for v in all_list:
                if v.source != t0:
                    continue
                vec = [field.zero] * len(all_paths)
                ok = True
                for coeff, mid in terms:
                    total = u.arrows + mid.arrows + v.arrows
                    if len(total) > maxlen:
                        ok = False
                        break
                    pi = idx.get(PathInfo(u.source, v.target, total))
                    if pi is None:
                        ok = False
                        break
                    vec[pi] = field.add(vec[pi], coeff)
                if ok and not vec_is_zero(field, vec):
                    rows.append(tuple(vec))
    if not rows:
        return Mat(field, [], len(all_paths))
    return row_space_basis(Mat(field, rows, len(all_paths)))


def _ideal_swallows_top(field, all_paths, by_len, ideal: Mat) -> bool:
    top = by_len[-1]
    if not top:
        return True
    idx = {p: i for i, p in enumerate(all_paths)}
    for p in top:
        vec = [field.zero] * len(all_paths)
        vec[idx[p]] = field.one
        if coordinates_in_rowspace(ideal, tuple(vec)) is None:
            return False
    return True


def _assemble_path_algebra(field, q, all_paths, by_len, ideal: Mat | None) -> PathAlgebra:
    n_all = len(all_paths)
    if ideal is None:
        # acyclic case: path enumeration exhausted, relations may still reduce
        ideal = _ideal_rows(field, q, all_paths, by_len)
    from .linalg import rref
    red, piv = rref(ideal) if ideal.nrows else (ideal, ())
    ideal = Mat(field, red.rows[: len(piv)], n_all) if ideal.nrows else ideal
    pivset = set(piv)
    keep = [i for i in range(n_all) if i not in pivset]
    basis_paths = tuple(all_paths[i] for i in keep)
    maxlen = len(by_len) - 1
    idx = {p: i for i, p in enumerate(all_paths)}

    def reduce_full(vec):
        vec = list(vec)
        for i, pc in enumerate(piv):
            c = vec[pc]
            if c != field.zero:
                for j, x in enumerate(ideal.rows[i]):
                    vec[j] = field.sub(vec[j], field.mul(c, x))
        return tuple(vec[k] for k in keep)

    m = len(keep)
    sc = []
    for i, pi_ in enumerate(basis_paths):
        plane = []
        for j, pj in enumerate(basis_paths):
            if pi_.target != pj.source:
                plane.append(zero_vec(field, m))
                continue
            total = pi_.arrows + pj.arrows
            if len(total) > maxlen:
                plane.append(zero_vec(field, m))
                continue
            concat = PathInfo(pi_.source, pj.target, total)
            k = idx.get(concat)
            if k is None:
                plane.append(zero_vec(field, m))
                continue
            vec = [field.zero] * n_all
            vec[k] = field.one
            plane.append(reduce_full(vec))
        sc.append(tuple(plane))
    unit = [field.zero] * m
    for i, p in enumerate(basis_paths):
        if not p.arrows:
            unit[i] = field.one
    rad_rows = []
    for i, p in enumerate(basis_paths):
        if p.arrows:
            rad_rows.append(tuple(field.one if j == i else field.zero for j in range(m)))
    labels = tuple(p.label(q) for p in basis_paths)
    A = Algebra(field, sc, tuple(unit), labels=labels,
                radical_rows=rad_rows, check=True)
    return PathAlgebra(A, q, basis_paths)


# -- stock constructors ----------------------------------------------------


def base_field_algebra(field: Field) -> Algebra:
    return Algebra(field, (((field.one,),),), (field.one,), labels=("1",), radical_rows=[])


def linear_quiver(n: int) -> QuiverPresentation:
    """A_n with arrows 1 -> 2 -> ... -> n (0-based internally)."""
    arrows = tuple(Arrow(f"a{i+1}", i, i + 1) for i in range(n - 1))
    return QuiverPresentation(n, arrows)


def kronecker_quiver() -> QuiverPresentation:
    return QuiverPresentation(2, (Arrow("a", 0, 1), Arrow("b", 0, 1)))


def dual_numbers(field: Field) -> PathAlgebra:
    """k[x]/(x^2) as the one-loop quiver with the square-zero relation."""
    q = QuiverPresentation(1, (Arrow("x", 0, 0),),
                           relations=(((field.one, ("x", "x")),),))
    return build_path_algebra(field, q)


def triangular_matrix_algebra(field: Field, n: int) -> Algebra:
    """Upper triangular n x n matrices, by explicit structure constants."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    index = {p: k for k, p in enumerate(pairs)}
    m = len(pairs)
    z, o = field.zero, field.one
    sc = []
    for (i, j) in pairs:
        plane = []
        for (k, l) in pairs:
            row = [z] * m
            if j == k:
                row[index[(i, l)]] = o
            plane.append(tuple(row))
        sc.append(tuple(plane))
    unit = [z] * m
    for i in range(n):
        unit[index[(i, i)]] = o
    rad = []
    for (i, j) in pairs:
        if i != j:
            rad.append(tuple(o if index[(i, j)] == k else z for k in range(m)))
    labels = tuple(f"E{i+1}{j+1}" for (i, j) in pairs)
    return Algebra(field, sc, tuple(unit), labels=labels, radical_rows=rad)
