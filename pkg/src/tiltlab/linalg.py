"""Exact dense linear algebra over Q and prime fields F_p.

Everything downstream reduces to these primitives.  No floating point
anywhere: rationals are `fractions.Fraction`, F_p elements are canonical
ints in [0, p).  Basis-producing operations return canonical (reduced
echelon) output so spans can be compared verbatim.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


def _trial_divisors(p: int):
    q = 2
    while q * q <= p:
        yield q
        q += 1


class Field:
    """Base field interface.  Scalars are raw values (Fraction or int)."""

    p: int | None = None

    def __repr__(self):
        return self.name

    # subclasses: zero, one, add, sub, mul, neg, inv, parse, fmt


class RationalField(Field):
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def of_int(self, n: int):
        return Fraction(n)

    def parse(self, s: str):
        return Fraction(s)

    def fmt(self, a) -> str:
        return str(a)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in _trial_divisors(p)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def of_int(self, n: int):
        return n % self.p

    def parse(self, s: str):
        return int(s) % self.p

    def fmt(self, a) -> str:
        return str(a)


QQ = RationalField()

_prime_fields: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_by_name(name: str) -> Field:
    name = name.strip()
    if name in ("Q", "QQ"):
        return QQ
    if name.startswith("F"):
        return GF(int(name[1:]))
    raise FieldError(f"unknown field {name!r}")


def _check_same_field(a: "Mat", b: "Mat"):
    if a.field is not b.field:
        raise FieldError(f"field mismatch: {a.field} vs {b.field}")


class Mat:
    """Immutable dense matrix.  Rows are tuples of raw scalars."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_hash")

    def __init__(self, field: Field, rows, ncols: int | None = None):
        rows = tuple(tuple(r) for r in rows)
        self.field = field
        self.nrows = len(rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("empty matrix needs explicit ncols")
        self.ncols = ncols
        self.rows = rows
        self._hash = None

    # -- construction helpers ------------------------------------------

    @staticmethod
    def zero(field: Field, nrows: int, ncols: int) -> "Mat":
        z = field.zero
        return Mat(field, [(z,) * ncols for _ in range(nrows)], ncols)

    @staticmethod
    def identity(field: Field, n: int) -> "Mat":
        z, o = field.zero, field.one
        return Mat(field, [tuple(o if i == j else z for j in range(n)) for i in range(n)], n)

    @staticmethod
    def from_int_rows(field: Field, rows) -> "Mat":
        return Mat(field, [[field.of_int(x) for x in r] for r in rows],
                   len(rows[0]) if rows else 0)

    @staticmethod
    def from_rows(field: Field, rows, ncols: int | None = None) -> "Mat":
        return Mat(field, rows, ncols)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.field is other.field
                and self.ncols == other.ncols and self.rows == other.rows)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.field), self.ncols, self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self.rows)
        return f"Mat({self.field}, {self.nrows}x{self.ncols}: {body})"

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        _check_same_field(self, other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in add")
        add = self.field.add
        return Mat(self.field,
                   [tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)],
                   self.ncols)

    def __sub__(self, other: "Mat") -> "Mat":
        _check_same_field(self, other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch in sub")
        sub = self.field.sub
        return Mat(self.field,
                   [tuple(sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)],
                   self.ncols)

    def __neg__(self) -> "Mat":
        neg = self.field.neg
        return Mat(self.field, [tuple(neg(a) for a in r) for r in self.rows], self.ncols)

    def scale(self, c) -> "Mat":
        mul = self.field.mul
        return Mat(self.field, [tuple(mul(c, a) for a in r) for r in self.rows], self.ncols)

    def __matmul__(self, other: "Mat") -> "Mat":
        _check_same_field(self, other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch in matmul: {self.ncols} vs {other.nrows}")
        F = self.field
        nc = other.ncols
        if self.ncols == 0 or nc == 0:
            return Mat.zero(F, self.nrows, nc)
        # row-oriented accumulation, skipping zero entries: these matrices
        # are mostly sparse 0/1 grids and rational arithmetic is expensive
        # enough that the branch pays for itself
        orows = other.rows
        p = F.p
        out = []
        if p is None:
            zero = F.zero
            for r in self.rows:
                acc = [zero] * nc
                for k, a in enumerate(r):
                    if a:
                        orow = orows[k]
                        for j, b in enumerate(orow):
                            if b:
                                acc[j] = acc[j] + a * b
                out.append(tuple(acc))
        else:
            for r in self.rows:
                acc = [0] * nc
                for k, a in enumerate(r):
                    if a:
                        orow = orows[k]
                        for j, b in enumerate(orow):
                            if b:
                                acc[j] += a * b
                out.append(tuple(x % p for x in acc))
        return Mat(F, out, nc)

    def transpose(self) -> "Mat":
        if self.nrows == 0:
            return Mat(self.field, [() for _ in range(self.ncols)], 0)
        return Mat(self.field, list(zip(*self.rows)), self.nrows)

    def hstack(self, other: "Mat") -> "Mat":
        _check_same_field(self, other)
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Mat(self.field, [a + b for a, b in zip(self.rows, other.rows)],
                   self.ncols + other.ncols)

    def vstack(self, other: "Mat") -> "Mat":
        _check_same_field(self, other)
        if self.ncols != other.ncols:
            raise ValueError("col count mismatch in vstack")
        return Mat(self.field, self.rows + other.rows, self.ncols)

    def submatrix(self, row_idx, col_idx) -> "Mat":
        return Mat(self.field,
                   [tuple(self.rows[i][j] for j in col_idx) for i in row_idx],
                   len(col_idx))


def block_diag(field: Field, mats: list[Mat]) -> Mat:
    nrows = sum(m.nrows for m in mats)
    ncols = sum(m.ncols for m in mats)
    z = field.zero
    rows = []
    coff = 0
    for m in mats:
        for r in m.rows:
            rows.append((z,) * coff + r + (z,) * (ncols - coff - m.ncols))
        coff += m.ncols
    return Mat(field, rows, ncols)


# -- elimination core ----------------------------------------------------


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns (exact Gauss-Jordan)."""
    F = m.field
    rows = [list(r) for r in m.rows]
    nr, nc = m.nrows, m.ncols
    pivots = []
    r = 0
    p = F.p
    if p is None:
        for c in range(nc):
            pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = 1 / rows[r][c]
            if inv != 1:
                rows[r] = [x * inv if x else x for x in rows[r]]
            rr = rows[r]
            for i in range(nr):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rr)]
            pivots.append(c)
            r += 1
            if r == nr:
                break
    else:
        for c in range(nc):
            pr = next((i for i in range(r, nr) if rows[i][c] % p), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = pow(rows[r][c], p - 2, p)
            if inv != 1:
                rows[r] = [(x * inv) % p for x in rows[r]]
            rr = rows[r]
            for i in range(nr):
                if i != r and rows[i][c] % p:
                    f = rows[i][c]
                    rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rr)]
            pivots.append(c)
            r += 1
            if r == nr:
                break
    return Mat(F, rows, nc), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def row_space_basis(m: Mat) -> Mat:
    """Canonical (RREF) basis of the row space, one row per basis vector."""
    R, piv = rref(m)
    return Mat(m.field, R.rows[: len(piv)], m.ncols)


def right_kernel_basis(m: Mat) -> list[tuple]:
    """Canonical basis of {v : m @ v = 0}, as column vectors (tuples)."""
    F = m.field
    R, piv = rref(m)
    pivset = set(piv)
    free = [c for c in range(m.ncols) if c not in pivset]
    vecs = []
    for fc in free:
        v = [F.zero] * m.ncols
        v[fc] = F.one
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R.rows[i][fc])
        vecs.append(tuple(v))
    if not vecs:
        return []
    canon = row_space_basis(Mat(F, vecs, m.ncols))
    return [tuple(r) for r in canon.rows]


def left_kernel_basis(m: Mat) -> list[tuple]:
    """Canonical basis of {v : v @ m = 0} (row vectors)."""
    return right_kernel_basis(m.transpose())


def image_basis(m: Mat) -> list[tuple]:
    """Canonical basis of the column space, as column vectors."""
    rs = row_space_basis(m.transpose())
    return [tuple(r) for r in rs.rows]


def solve_right(m: Mat, b) -> tuple | None:
    """A particular x (column) with m @ x = b, or None if inconsistent."""
    b = tuple(b)
    if len(b) != m.nrows:
        raise ValueError("dimension mismatch in solve")
    F = m.field
    aug = Mat(F, [r + (bb,) for r, bb in zip(m.rows, b)], m.ncols + 1) \
        if m.nrows else Mat(F, [], m.ncols + 1)
    R, piv = rref(aug)
    if m.ncols in piv:
        return None
    x = [F.zero] * m.ncols
    for i, pc in enumerate(piv):
        x[pc] = R.rows[i][m.ncols]
    return tuple(x)


def solve_left(m: Mat, b) -> tuple | None:
    """A particular x (row) with x @ m = b, or None."""
    return solve_right(m.transpose(), b)


def solve_matrix_left(m: Mat, B: Mat) -> Mat | None:
    """X with X @ m = B, or None.  Solves row by row."""
    xs = []
    for brow in B.rows:
        x = solve_left(m, brow)
        if x is None:
            return None
        xs.append(x)
    return Mat(m.field, xs, m.nrows)


def inverse(m: Mat) -> Mat | None:
    """Exact inverse, or None when singular / non-square."""
    if m.nrows != m.ncols:
        return None
    n = m.nrows
    if n == 0:
        return m
    F = m.field
    aug = m.hstack(Mat.identity(F, n))
    R, piv = rref(aug)
    if tuple(piv[:n]) != tuple(range(n)):
        return None
    return Mat(F, [r[n:] for r in R.rows[:n]], n)


def coordinates_in_rowspace(basis: Mat, v) -> tuple | None:
    """Coefficients c with c @ basis = v, or None if v is outside the span."""
    return solve_left(basis, v)


def echelon_pivots(m: Mat) -> tuple[int, ...]:
    """Pivot columns of a matrix already in reduced row echelon form."""
    piv = []
    z = m.field.zero
    for r in m.rows:
        for j, x in enumerate(r):
            if x != z:
                piv.append(j)
                break
    return tuple(piv)


def coordinates_in_echelon(basis: Mat, piv, v) -> tuple | None:
    """Coefficients against an RREF row basis, by pivot peeling (no
    elimination); None when v is outside the span."""
    F = basis.field
    z = F.zero
    v = list(v)
    out = []
    for row, pc in zip(basis.rows, piv):
        c = v[pc]
        out.append(c)
        if c != z:
            if F.p is None:
                for j, x in enumerate(row):
                    if x:
                        v[j] = v[j] - c * x
            else:
                p = F.p
                for j, x in enumerate(row):
                    if x:
                        v[j] = (v[j] - c * x) % p
    if any(x != z for x in v):
        return None
    return tuple(out)


def solve_right_many(m: Mat, cols: list) -> list:
    """Particular solutions of m @ x = b for many right-hand sides with one
    elimination; None entries mark inconsistent systems."""
    F = m.field
    k = len(cols)
    if k == 0:
        return []
    aug_rows = [tuple(r) + tuple(col[i] for col in cols)
                for i, r in enumerate(m.rows)]
    R, piv = rref(Mat(F, aug_rows, m.ncols + k))
    piv_a = [p for p in piv if p < m.ncols]
    bad = [False] * k
    for idx, r in enumerate(R.rows):
        if idx < len(piv) and piv[idx] < m.ncols:
            continue
        for j in range(k):
            if r[m.ncols + j] != F.zero:
                bad[j] = True
    sols = []
    for j in range(k):
        if bad[j]:
            sols.append(None)
            continue
        x = [F.zero] * m.ncols
        for i, pc in enumerate(piv_a):
            x[pc] = R.rows[i][m.ncols + j]
        sols.append(tuple(x))
    return sols


def solve_left_many(m: Mat, rows: list) -> list:
    """x @ m = b for many b (rows), via one elimination on the transpose."""
    return solve_right_many(m.transpose(), [tuple(r) for r in rows])


def vec_matmul(v, m: Mat) -> tuple:
    """Row vector times matrix (zero entries skipped)."""
    if len(v) != m.nrows:
        raise ValueError("dimension mismatch")
    F = m.field
    p = F.p
    nc = m.ncols
    if not m.rows or nc == 0:
        return (F.zero,) * nc
    if p is None:
        acc = [F.zero] * nc
        for k, a in enumerate(v):
            if a:
                row = m.rows[k]
                for j, b in enumerate(row):
                    if b:
                        acc[j] = acc[j] + a * b
        return tuple(acc)
    acc = [0] * nc
    for k, a in enumerate(v):
        if a:
            row = m.rows[k]
            for j, b in enumerate(row):
                if b:
                    acc[j] += a * b
    return tuple(x % p for x in acc)


def vec_add(field: Field, u, v) -> tuple:
    add = field.add
    return tuple(add(a, b) for a, b in zip(u, v))


def vec_sub(field: Field, u, v) -> tuple:
    sub = field.sub
    return tuple(sub(a, b) for a, b in zip(u, v))


def vec_scale(field: Field, c, v) -> tuple:
    mul = field.mul
    return tuple(mul(c, a) for a in v)


def vec_is_zero(field: Field, v) -> bool:
    z = field.zero
    return all(a == z for a in v)


def zero_vec(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def std_basis_vec(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(n))


# -- characteristic and minimal polynomials -------------------------------


def charpoly(m: Mat) -> tuple:
    """Characteristic polynomial of a square matrix by the Berkowitz
    division-free recursion.  Coefficients high-to-low: (1, c1, ..., cn)
    for t^n + c1 t^(n-1) + ... + cn.  Works over any of our fields.
    """
    if m.nrows != m.ncols:
        raise ValueError("charpoly needs a square matrix")
    F = m.field
    n = m.nrows
    poly = (F.one,)
    for i in range(n):
        a = m.rows[i][i]
        R = m.rows[i][:i]
        C = [m.rows[k][i] for k in range(i)]
        M = [m.rows[k][:i] for k in range(i)]
        T = [F.one, F.neg(a)]
        v = list(C)
        for k in range(i):
            s = F.zero
            for j in range(i):
                s = F.add(s, F.mul(R[j], v[j]))
            T.append(F.neg(s))
            if k < i - 1:
                w = []
                for r_ in range(i):
                    acc = F.zero
                    for c_ in range(i):
                        acc = F.add(acc, F.mul(M[r_][c_], v[c_]))
                    w.append(acc)
                v = w
        poly = _poly_conv_trunc(F, T, poly, i + 2)
    return tuple(poly)


def _poly_conv_trunc(F: Field, a, b, length: int) -> list:
    out = [F.zero] * length
    for i, ai in enumerate(a):
        if ai == F.zero:
            continue
        for j, bj in enumerate(b):
            if i + j < length:
                out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return out


# -- polynomial helpers (dense, low-to-high coefficients) -----------------


def poly_trim(F: Field, p: list) -> list:
    while p and p[-1] == F.zero:
        p.pop()
    return p


def poly_mul(F: Field, a, b) -> list:
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == F.zero:
            continue
        for j, bj in enumerate(b):
            out[i + j] = F.add(out[i + j], F.mul(ai, bj))
    return poly_trim(F, out)


def poly_divmod(F: Field, a, b) -> tuple[list, list]:
    a = list(a)
    b = poly_trim(F, list(b))
    if not b:
        raise ZeroDivisionError("poly division by zero")
    inv_lead = F.inv(b[-1])
    q = [F.zero] * max(0, len(a) - len(b) + 1)
    while len(poly_trim(F, a)) >= len(b):
        d = len(a) - len(b)
        c = F.mul(a[-1], inv_lead)
        q[d] = c
        for i, bi in enumerate(b):
            a[d + i] = F.sub(a[d + i], F.mul(c, bi))
        a.pop()
    return poly_trim(F, q), poly_trim(F, a)


def poly_gcd(F: Field, a, b) -> list:
    a = poly_trim(F, list(a))
    b = poly_trim(F, list(b))
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    if a:
        inv = F.inv(a[-1])
        a = [F.mul(inv, x) for x in a]
    return a


def poly_eval_mat(F: Field, p, m: Mat) -> Mat:
    """Evaluate polynomial (low-to-high coeffs) at a square matrix."""
    n = m.nrows
    out = Mat.zero(F, n, n)
    power = Mat.identity(F, n)
    for i, c in enumerate(p):
        if c != F.zero:
            out = out + power.scale(c)
        if i < len(p) - 1:
            power = power @ m
    return out
