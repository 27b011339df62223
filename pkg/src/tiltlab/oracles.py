"""Deliberately naive, independently coded oracles.

These generate the golden values the main engines are tested against, so
they must not share homological code paths with them: hom dimensions come
from one big intertwining system solved by a textbook elimination written
here, Ext^1 from the cocycle/coboundary description of extensions, tensor
dimensions from raw relation spans, and Tor_1 from the normalized bar
complex.  Only tiny corpus instances are in scope; caps are explicit.
"""

from __future__ import annotations

from itertools import product as iproduct

from .algebras import Algebra, PathAlgebra
from .linalg import Field, Mat
from .modules import RightModule, module_from_quiver_data


class OracleCapError(RuntimeError):
    pass


# -- naive elimination (independent of tiltlab.linalg.rref) -----------------


def _naive_rank(field: Field, rows: list[list]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = None
        for i in range(rank, len(rows)):
            if rows[i][col] != field.zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = field.inv(rows[rank][col])
        rows[rank] = [field.mul(inv, x) for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != field.zero:
                c = rows[i][col]
                rows[i] = [field.sub(a, field.mul(c, b))
                           for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _naive_nullity(field: Field, rows: list[list], ncols: int) -> int:
    if not rows:
        return ncols
    return ncols - _naive_rank(field, rows)


# -- hom dimension -----------------------------------------------------------


def oracle_hom_dim(M: RightModule, N: RightModule, cap: int = 40000) -> int:
    """Dimension of the intertwiner space, solved as one dense system."""
    F = M.field
    dm, dn = M.dim, N.dim
    if dm == 0 or dn == 0:
        return 0
    nunk = dm * dn
    if nunk * M.algebra.dim * max(nunk, 1) > cap * 100:
        raise OracleCapError("hom oracle cap exceeded")
    rows = []
    for g in range(M.algebra.dim):
        am, an = M.actions[g], N.actions[g]
        # constraint per (i, j): sum_k am[i][k] F[k][j] - F[i][k] an[k][j] = 0
        for i in range(dm):
            for j in range(dn):
                row = [F.zero] * nunk
                for k in range(dm):
                    row[k * dn + j] = F.add(row[k * dn + j], am.rows[i][k])
                for k in range(dn):
                    row[i * dn + k] = F.sub(row[i * dn + k], an.rows[k][j])
                rows.append(row)
    return _naive_nullity(F, rows, nunk)


# -- Ext^1 via extension cocycles ---------------------------------------------


def _ext_cocycle_spaces(M: RightModule, N: RightModule):
    """Extensions 0 -> N -> E -> M -> 0 have actions [[A_N, 0], [C_g, A_M]].

    Returns (Z_rows, B_rows, nunk): the module-law conditions on the tuple
    (C_g)_g (cocycles) and the conjugation span (coboundaries), both as row
    lists over flattened unknowns.
    """
    F = M.field
    A = M.algebra
    dm, dn = M.dim, N.dim
    nunk = A.dim * dm * dn  # one dm x dn block per algebra basis element

    def unk(g, i, j):
        return g * dm * dn + i * dn + j

    rows = []
    # law: C_i A_N(j) + A_M(i) C_j = sum_k sc[i][j][k] C_k
    for gi in range(A.dim):
        for gj in range(A.dim):
            an = N.actions[gj]
            am = M.actions[gi]
            for r in range(dm):
                for c in range(dn):
                    row = [F.zero] * nunk
                    for k in range(dn):
                        row[unk(gi, r, k)] = F.add(row[unk(gi, r, k)], an.rows[k][c])
                    for k in range(dm):
                        row[unk(gj, k, c)] = F.add(row[unk(gj, k, c)], am.rows[r][k])
                    for k, coeff in enumerate(A.sc[gi][gj]):
                        if coeff != F.zero:
                            row[unk(k, r, c)] = F.sub(row[unk(k, r, c)], coeff)
                    rows.append(row)
    # unit acts as identity: sum_g unit_g C_g = 0
    for r in range(dm):
        for c in range(dn):
            row = [F.zero] * nunk
            any_nz = False
            for g, u in enumerate(A.unit):
                if u != F.zero:
                    row[unk(g, r, c)] = u
                    any_nz = True
            if any_nz:
                rows.append(row)
    # coboundaries: C_g = B A_N(g) - A_M(g) B for B in Hom_k(M-part, N-part)
    cob = []
    for bi in range(dm):
        for bj in range(dn):
            vec = [F.zero] * nunk
            for g in range(A.dim):
                an = N.actions[g]
                am = M.actions[g]
                for c in range(dn):
                    vec[unk(g, bi, c)] = F.add(vec[unk(g, bi, c)], an.rows[bj][c])
                for r in range(dm):
                    vec[unk(g, r, bj)] = F.sub(vec[unk(g, r, bj)], am.rows[r][bi])
            cob.append(vec)
    return rows, cob, nunk


def oracle_ext_dim(M: RightModule, N: RightModule, cap: int = 200000) -> int:
    """dim Ext^1(M, N) = dim(cocycles) - dim(coboundaries)."""
    F = M.field
    if M.dim == 0 or N.dim == 0:
        return 0
    rows, cob, nunk = _ext_cocycle_spaces(M, N)
    if len(rows) * nunk > cap * 40:
        raise OracleCapError("ext oracle cap exceeded")
    z = _naive_nullity(F, rows, nunk)
    b = _naive_rank(F, cob) if cob else 0
    return z - b


def oracle_all_extensions(M: RightModule, N: RightModule,
                          class_cap: int = 64) -> list[RightModule]:
    """Middle terms of representative extensions 0 -> N -> E -> M -> 0,
    one per cocycle class (all classes over small F_p, basis classes + 0
    over Q)."""
    from .linalg import right_kernel_basis, row_space_basis, rank as _rank
    F = M.field
    dm, dn = M.dim, N.dim
    if dm == 0 or dn == 0:
        return [direct_sum_plain(M, N)]
    rows, cob, nunk = _ext_cocycle_spaces(M, N)
    Zb = right_kernel_basis(Mat(F, [tuple(r) for r in rows], nunk))
    Bb = [tuple(v) for v in cob]
    # class representatives: a complement of the coboundaries inside Z
    Bmat = row_space_basis(Mat(F, Bb, nunk)) if Bb else Mat(F, [], nunk)
    chosen: list[tuple] = []
    for z in Zb:
        stacked = Mat(F, list(Bmat.rows) + chosen + [z], nunk)
        if _rank(stacked) > Bmat.nrows + len(chosen):
            chosen.append(tuple(z))
    if F.p is not None and F.p ** len(chosen) <= class_cap:
        combos = iproduct(range(F.p), repeat=len(chosen))
    else:
        combos = [tuple(1 if i == j else 0 for j in range(len(chosen)))
                  for i in range(len(chosen))] + [tuple(0 for _ in chosen)]
    out = []
    seen = set()
    for combo in combos:
        vec = [F.zero] * nunk
        for c, z in zip(combo, chosen):
            if c:
                cc = F.of_int(c)
                vec = [F.add(a, F.mul(cc, b)) for a, b in zip(vec, z)]
        key = tuple(vec)
        if key in seen:
            continue
        seen.add(key)
        out.append(_extension_from_cocycle(M, N, vec))
    return out


def direct_sum_plain(M: RightModule, N: RightModule) -> RightModule:
    from .modules import direct_sum
    return direct_sum([N, M])[0]


def _extension_from_cocycle(M: RightModule, N: RightModule, vec) -> RightModule:
    F = M.field
    A = M.algebra
    dm, dn = M.dim, N.dim
    actions = []
    for g in range(A.dim):
        an = N.actions[g]
        am = M.actions[g]
        rows = []
        for i in range(dn):
            rows.append(tuple(an.rows[i]) + (F.zero,) * dm)
        for i in range(dm):
            c_row = tuple(vec[g * dm * dn + i * dn + j] for j in range(dn))
            rows.append(c_row + tuple(am.rows[i]))
        actions.append(Mat(F, rows, dn + dm))
    return RightModule(A, actions, check=True)


# -- tensor and Tor ------------------------------------------------------------


def oracle_tensor_dim(B: Algebra, N: RightModule, M_left: RightModule,
                      cap: int = 300000) -> int:
    """dim(N tensor_B M) for N right, M left (as right over B.opposite()):
    full space modulo the span of (n.b (x) m) - (n (x) b.m)."""
    F = B.field
    dn, dm = N.dim, M_left.dim
    if dn * dm == 0:
        return 0
    rows = []
    if dn * dm * B.dim * dn * dm > cap * 60:
        raise OracleCapError("tensor oracle cap exceeded")
    for g in range(B.dim):
        right_act = N.actions[g]          # n . b_g
        left_act = M_left.actions[g]      # b_g . m  (right action of opposite)
        for i in range(dn):
            for j in range(dm):
                vec = [F.zero] * (dn * dm)
                for k in range(dn):
                    c = right_act.rows[i][k]
                    if c != F.zero:
                        vec[k * dm + j] = F.add(vec[k * dm + j], c)
                for k in range(dm):
                    c = left_act.rows[j][k]
                    if c != F.zero:
                        vec[i * dm + k] = F.sub(vec[i * dm + k], c)
                rows.append(vec)
    return dn * dm - (_naive_rank(F, rows) if rows else 0)


def _unit_complement_basis(B: Algebra):
    """Basis of a complement of span(1) in B, with the reduction map."""
    from .linalg import coordinates_in_rowspace, rank as _rank, row_space_basis
    F = B.field
    unit_row = row_space_basis(Mat(F, [B.unit], B.dim))
    comp: list[tuple] = []
    for i in range(B.dim):
        e = tuple(F.one if j == i else F.zero for j in range(B.dim))
        stacked = Mat(F, [unit_row.rows[0]] + comp + [e], B.dim)
        if _rank(stacked) == len(comp) + 2:
            comp.append(e)
    full = Mat(F, [unit_row.rows[0]] + comp, B.dim)

    def reduce_to_complement(x):
        coords = coordinates_in_rowspace(full, tuple(x))
        return tuple(coords[1:])  # drop the unit coefficient

    return comp, reduce_to_complement


def oracle_tor1_dim(B: Algebra, N: RightModule, M_left: RightModule,
                    cap: int = 3_000_000) -> int:
    """dim Tor_1^B(N, M) via the normalized bar complex
    N (x) Bbar (x) Bbar (x) M -> N (x) Bbar (x) M -> N (x) M."""
    F = B.field
    dn, dm = N.dim, M_left.dim
    if dn * dm == 0:
        return 0
    comp, reduce_c = _unit_complement_basis(B)
    bb = len(comp)
    c1 = dn * bb * dm
    c2 = dn * bb * bb * dm
    if c2 * c1 > cap * 60 or c1 == 0:
        if bb == 0:
            return 0  # B = k: flat
        raise OracleCapError("tor oracle cap exceeded")

    def idx1(i, g, j):
        return (i * bb + g) * dm + j

    # d1 : N x Bbar x M -> N x M : n (x) w (x) m |-> nw (x) m - n (x) wm
    d1_rows = []
    for i in range(dn):
        for g in range(bb):
            w = comp[g]
            nw = N.action_of(w)          # matrix of n -> n.w
            wm = M_left.action_of(w)     # matrix of m -> w.m
            for j in range(dm):
                vec = [F.zero] * (dn * dm)
                for k in range(dn):
                    c = nw.rows[i][k]
                    if c != F.zero:
                        vec[k * dm + j] = F.add(vec[k * dm + j], c)
                for k in range(dm):
                    c = wm.rows[j][k]
                    if c != F.zero:
                        vec[i * dm + k] = F.sub(vec[i * dm + k], c)
                d1_rows.append(vec)
    ker_dim = c1 - _naive_rank(F, d1_rows)

    # d2 : n (x) w1 (x) w2 (x) m |-> nw1 (x) w2 (x) m - n (x) (w1w2)~ (x) m
    #                                + n (x) w1 (x) w2.m
    d2_rows = []
    for i in range(dn):
        for g1 in range(bb):
            w1 = comp[g1]
            nw1 = N.action_of(w1)
            for g2 in range(bb):
                w2 = comp[g2]
                w1w2 = reduce_c(B.mul_vec(w1, w2))
                w2m = M_left.action_of(w2)
                for j in range(dm):
                    vec = [F.zero] * c1
                    for k in range(dn):
                        c = nw1.rows[i][k]
                        if c != F.zero:
                            vec[idx1(k, g2, j)] = F.add(vec[idx1(k, g2, j)], c)
                    for g3 in range(bb):
                        c = w1w2[g3]
                        if c != F.zero:
                            vec[idx1(i, g3, j)] = F.sub(vec[idx1(i, g3, j)], c)
                    for k in range(dm):
                        c = w2m.rows[j][k]
                        if c != F.zero:
                            vec[idx1(i, g1, k)] = F.add(vec[idx1(i, g1, k)], c)
                    d2_rows.append(vec)
    im_d2 = _naive_rank(F, d2_rows) if d2_rows else 0
    return ker_dim - im_d2


# -- brute-force module enumeration -------------------------------------------


def enumerate_quiver_modules_bruteforce(pa: PathAlgebra, dim_cap: int,
                                        count_cap: int = 1 << 15):
    """All indecomposables of total dimension <= dim_cap over a prime field,
    by exhausting arrow matrices and deduplicating up to isomorphism."""
    from .modules import indecomposable_summands, is_isomorphic
    F = pa.algebra.field
    if F.p is None:
        raise OracleCapError("brute-force enumeration needs a finite field")
    p = F.p
    q = pa.quiver
    found: list[RightModule] = []
    for total in range(1, dim_cap + 1):
        for dims in _compositions(total, q.nvertices):
            cells = sum(dims[a.source] * dims[a.target] for a in q.arrows)
            if p ** cells > count_cap:
                raise OracleCapError("brute-force enumeration cap exceeded")
            for combo in iproduct(range(p), repeat=cells):
                mats = {}
                pos = 0
                for a in q.arrows:
                    nr, nc = dims[a.source], dims[a.target]
                    rows = []
                    for i in range(nr):
                        rows.append(tuple(F.of_int(combo[pos + i * nc + jj])
                                          for jj in range(nc)))
                    pos += nr * nc
                    mats[a.label] = Mat(F, rows, nc) if nr else Mat(F, [], nc)
                m = module_from_quiver_data(pa, list(dims), mats)
                if len(indecomposable_summands(m)) != 1:
                    continue
                if any(is_isomorphic(m, g).status == "iso" for g in found
                       if g.dim == m.dim):
                    continue
                found.append(m)
    return found


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
