"""Homological machinery: projective covers, injective hulls, syzygies,
Ext^1 with realizable cocycles, tensor products over an algebra, Tor_1,
and base-field duality.

Left modules are always represented as right modules over the opposite
algebra.  Minimal resolutions (covers/hulls) keep matrices small and make
golden values stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebras import Algebra, quotient_by_ideal, radical_rows
from .linalg import (
    Mat, coordinates_in_rowspace, rank, row_space_basis, solve_right,
    vec_is_zero, vec_matmul,
)
from .modules import (
    ModuleError, ModuleMorphism, RightModule, Summand, direct_sum, end_algebra_raw,
    hom_space, image_submodule, indecomposable_summands, is_isomorphic,
    kernel_submodule, quotient, span_submodule, regular_module, zero_module,
)


# -- endomorphism algebra packaging -----------------------------------------


@dataclass(frozen=True)
class Bimodule:
    """Carrier with commuting left B-action and right A-action.

    The carrier is a right A-module; `left_algebra` acts on the left via
    `left_actions` (one matrix per basis element of B, applied on the right
    of row vectors, so the map b -> matrix is an anti-homomorphism).
    """
    carrier: RightModule
    left_algebra: Algebra
    left_actions: tuple[Mat, ...]

    def validate(self):
        B = self.left_algebra
        F = B.field
        d = self.carrier.dim
        acc = Mat.zero(F, d, d)
        for c, m in zip(B.unit, self.left_actions):
            if c != F.zero:
                acc = acc + m.scale(c)
        if acc != Mat.identity(F, d):
            raise ModuleError("left unit does not act as identity")
        for i in range(B.dim):
            for j in range(B.dim):
                # anti-homomorphism: matrix of (b_i b_j) = mat(b_j) @ mat(b_i)
                prod = self.left_actions[j] @ self.left_actions[i]
                comb = Mat.zero(F, d, d)
                for k, c in enumerate(B.sc[i][j]):
                    if c != F.zero:
                        comb = comb + self.left_actions[k].scale(c)
                if prod != comb:
                    raise ModuleError(f"left action law fails at ({i},{j})")
        for L in self.left_actions:
            for Rm in self.carrier.actions:
                if L @ Rm != Rm @ L:
                    raise ModuleError("left and right actions do not commute")

    def left_action_of(self, x) -> Mat:
        F = self.left_algebra.field
        d = self.carrier.dim
        acc = Mat.zero(F, d, d)
        for c, m in zip(x, self.left_actions):
            if c != F.zero:
                acc = acc + m.scale(c)
        return acc

    def as_left_module(self) -> RightModule:
        """The left B-structure alone, as a right module over B.opposite()."""
        return RightModule(self.left_algebra.opposite(), self.left_actions,
                           check=False)


def end_algebra(M: RightModule) -> tuple[Algebra, tuple[ModuleMorphism, ...], Bimodule]:
    """End(M) with its canonical basis, and M as an End(M)-A-bimodule."""
    S, basis = end_algebra_raw(M)
    bim = Bimodule(M, S, tuple(b.mat for b in basis))
    bim.validate()
    return S, basis, bim


# -- projectives, covers, tops ------------------------------------------------


@dataclass(frozen=True)
class ProjectiveData:
    modules: tuple[RightModule, ...]       # one per iso class
    idempotents: tuple[tuple, ...]         # matching primitive idempotents
    simples: tuple[RightModule, ...]       # tops, aligned with modules


@lru_cache(maxsize=None)
def projective_indecomposables(A: Algebra) -> ProjectiveData:
    """Indecomposable projectives e_i A (one per iso class) with primitive
    idempotents and their simple tops."""
    R = regular_module(A)
    summands = indecomposable_summands(R)
    # primitive idempotents: components of 1
    idems = []
    for s in summands:
        comp = vec_matmul(vec_matmul(A.unit, s.projection.mat), s.inclusion.mat)
        idems.append(comp)
    F = A.field
    total = None
    for e in idems:
        if A.mul_vec(e, e) != e:
            raise ModuleError("internal: component of 1 is not idempotent")
        total = e if total is None else tuple(F.add(a, b) for a, b in zip(total, e))
    if total != A.unit:
        raise ModuleError("internal: idempotents do not sum to 1")
    reps: list[RightModule] = []
    rep_idems: list[tuple] = []
    for s, e in zip(summands, idems):
        if any(is_isomorphic(r, s.module).status == "iso" for r in reps):
            continue
        reps.append(s.module)
        rep_idems.append(e)
    simples = tuple(top(m)[0] for m in reps)
    return ProjectiveData(tuple(reps), tuple(rep_idems), tuple(simples))


def radical_submodule(M: RightModule) -> tuple[RightModule, ModuleMorphism]:
    """M J, the radical of M as the span of radical translates."""
    A = M.algebra
    F = M.field
    rad = radical_rows(A)
    rows = []
    for r in rad.rows:
        act = M.action_of(r)
        rows.extend(act.rows)
    if not rows:
        Z = zero_module(A)
        return Z, ModuleMorphism(Z, M, Mat(F, [], M.dim), check=False)
    return span_submodule(M, row_space_basis(Mat(F, rows, M.dim)))


def top(M: RightModule) -> tuple[RightModule, ModuleMorphism]:
    """M / MJ with the projection."""
    _, incl = radical_submodule(M)
    return quotient(M, incl.mat)


def projective_cover(M: RightModule) -> tuple[RightModule, ModuleMorphism]:
    """Minimal projective cover P -> M (greedy cover of the top)."""
    A = M.algebra
    F = M.field
    if M.dim == 0:
        Z = zero_module(A)
        return Z, ModuleMorphism(Z, M, Mat(F, [], 0), check=False)
    topM, pi = top(M)
    chosen: list[tuple[RightModule, ModuleMorphism]] = []
    chosen_top_rows: list[tuple] = []
    current_rank = 0
    pdata = projective_indecomposables(A)
    for P in pdata.modules:
        for f in hom_space(P, M):
            top_map = f.mat @ pi.mat
            cand = chosen_top_rows + list(top_map.rows)
            r = rank(Mat(F, cand, topM.dim))
            if r > current_rank:
                chosen.append((P, f))
                chosen_top_rows = cand
                current_rank = r
                if current_rank == topM.dim:
                    break
        if current_rank == topM.dim:
            break
    if current_rank != topM.dim:
        raise ModuleError("internal: projectives failed to cover the top")
    P, injs, _ = direct_sum([p for p, _ in chosen])
    h_rows = []
    for (_, f) in chosen:
        h_rows.extend(f.mat.rows)
    h = ModuleMorphism(P, M, Mat(F, h_rows, M.dim), check=False)
    if not h.is_surjective():
        raise ModuleError("internal: cover of the top is not surjective")
    # minimality: the kernel must sit inside P rad(A)
    ker, kincl = kernel_submodule(h)
    radP, rincl = radical_submodule(P)
    for row in kincl.mat.rows:
        if coordinates_in_rowspace(rincl.mat, row) is None:
            raise ModuleError("internal: cover is not minimal")
    return P, h


def syzygy(M: RightModule) -> RightModule:
    _, h = projective_cover(M)
    ker, _ = kernel_submodule(h)
    return ker


def is_projective(M: RightModule) -> bool:
    return syzygy(M).dim == 0


def pd_le_1(M: RightModule) -> bool:
    return is_projective(syzygy(M))


# -- duality and injectives -----------------------------------------------------


def duality(M: RightModule) -> RightModule:
    """Base-field dual, a right module over the opposite algebra."""
    Aop = M.algebra.opposite()
    return RightModule(Aop, [a.transpose() for a in M.actions], check=False)


def duality_on_morphism(f: ModuleMorphism) -> ModuleMorphism:
    return ModuleMorphism(duality(f.target), duality(f.source),
                          f.mat.transpose(), check=False)


def injective_cogenerator(A: Algebra) -> RightModule:
    """W = dual of the left regular module: an injective cogenerator."""
    return duality(regular_module(A.opposite()))


def injective_hull(M: RightModule) -> tuple[RightModule, ModuleMorphism]:
    """I(M) as the dual of the projective cover of the dual."""
    D = duality(M)
    P, h = projective_cover(D)
    I = duality(P)
    mono = duality_on_morphism(h)  # duality(D(M)) = M on the nose
    return I, ModuleMorphism(M, I, mono.mat, check=False)


def is_injective(M: RightModule) -> bool:
    return is_projective(duality(M))


def id_le_1(M: RightModule) -> bool:
    return pd_le_1(duality(M))


# -- Ext^1 ------------------------------------------------------------------------


@dataclass(frozen=True)
class Presentation:
    """0 -> syz --incl--> cover --epi--> M -> 0."""
    module: RightModule
    cover: RightModule
    epi: ModuleMorphism
    syz: RightModule
    incl: ModuleMorphism


@lru_cache(maxsize=None)
def minimal_presentation(M: RightModule) -> Presentation:
    P, h = projective_cover(M)
    ker, kincl = kernel_submodule(h)
    return Presentation(M, P, h, ker, kincl)


@dataclass(frozen=True)
class ExtGroup:
    source: RightModule
    target: RightModule
    presentation: Presentation
    dim: int
    cocycles: tuple[ModuleMorphism, ...]   # maps syz -> target, one per basis class
    restriction_image: Mat                  # row space of restricted Hom(cover, target)
    hom_syz_flat: Mat                       # flattened canonical basis of Hom(syz, target)

    def cocycle_class_coords(self, f: ModuleMorphism) -> tuple:
        """Coordinates of a cocycle's class in the chosen basis."""
        return _ext_class_coords(self, f.mat)


def _flatten_mat(m: Mat) -> tuple:
    return tuple(x for r in m.rows for x in r)


def ext1(M: RightModule, N: RightModule,
         presentation: Presentation | None = None) -> ExtGroup:
    """Ext^1(M, N) as coker(Hom(P0, N) -> Hom(syz, N)), with representative
    cocycles in a fixed normalized form."""
    pres = presentation if presentation is not None else minimal_presentation(M)
    F = M.field
    ncols = pres.syz.dim * N.dim
    homs_syz = hom_space(pres.syz, N)
    if not homs_syz:
        return ExtGroup(M, N, pres, 0, (), Mat(F, [], ncols), Mat(F, [], ncols))
    flat = Mat(F, [_flatten_mat(h.mat) for h in homs_syz], ncols)
    restricted = []
    for g in hom_space(pres.cover, N):
        restricted.append(_flatten_mat(pres.incl.mat @ g.mat))
    img = row_space_basis(Mat(F, restricted, ncols)) if restricted else Mat(F, [], ncols)
    # class representatives: hom basis elements extending the image's row space
    reps: list[ModuleMorphism] = []
    stacked = list(img.rows)
    current = img.nrows
    for h in homs_syz:
        cand = stacked + [_flatten_mat(h.mat)]
        r = rank(Mat(F, cand, ncols))
        if r > current:
            reps.append(h)
            stacked = cand
            current = r
    return ExtGroup(M, N, pres, len(reps), tuple(reps), img, flat)


def _ext_class_coords(ext: ExtGroup, cocycle_mat: Mat) -> tuple:
    """Express a cocycle's class in the representative basis: solve
    cocycle = sum c_i rep_i  (mod restriction image)."""
    F = ext.source.field
    ncols = ext.presentation.syz.dim * ext.target.dim
    basis_rows = [_flatten_mat(r.mat) for r in ext.cocycles] + list(ext.restriction_image.rows)
    if not basis_rows:
        return ()
    sol = coordinates_in_rowspace(Mat(F, basis_rows, ncols), _flatten_mat(cocycle_mat))
    if sol is None:
        raise ModuleError("cocycle does not lie in the extension group")
    return tuple(sol[: ext.dim])


def ext1_dim(M: RightModule, N: RightModule) -> int:
    return ext1(M, N).dim


def ext2_dim(M: RightModule, N: RightModule) -> int:
    """Ext^2 via one syzygy step (used by the double-perpendicular checks)."""
    s = syzygy(M)
    if s.dim == 0:
        return 0
    return ext1_dim(s, N)


def extension_module(L: RightModule, N: RightModule, ext: ExtGroup,
                     coords) -> tuple[RightModule, ModuleMorphism, ModuleMorphism]:
    """Realize the extension 0 -> L -> E -> N -> 0 for a class in
    Ext^1(N, L) given by coordinates in the representative basis."""
    if ext.source != N or ext.target != L:
        raise ModuleError("extension group does not match (N, L)")
    F = L.field
    pres = ext.presentation
    cmat = Mat.zero(F, pres.syz.dim, L.dim)
    for c, rep in zip(coords, ext.cocycles):
        if c != F.zero:
            cmat = cmat + rep.mat.scale(c)
    D, injs, projs = direct_sum([L, pres.cover])
    iL, iP = injs
    rows = []
    for i in range(pres.syz.dim):
        w_img_L = vec_matmul(tuple(cmat.rows[i]), iL.mat)
        w_img_P = vec_matmul(tuple(pres.incl.mat.rows[i]), iP.mat)
        rows.append(tuple(F.sub(a, b) for a, b in zip(w_img_L, w_img_P)))
    if rows and not all(vec_is_zero(F, r) for r in rows):
        rel = row_space_basis(Mat(F, rows, D.dim))
    else:
        rel = Mat(F, [], D.dim)
    E, projD = quotient(D, rel)
    incl_L = iL.then(projD)
    # projection E -> N induced by (0, epi) on D
    big = Mat.zero(F, L.dim, N.dim).vstack(pres.epi.mat)
    gcols = []
    for j in range(N.dim):
        col = tuple(big.rows[i][j] for i in range(D.dim))
        x = solve_right(projD.mat, col)
        if x is None:
            raise ModuleError("internal: extension projection unsolvable")
        gcols.append(x)
    gmat = Mat(F, list(zip(*gcols)) if gcols else [() for _ in range(E.dim)], N.dim)
    proj_N = ModuleMorphism(E, N, gmat)
    # exactness checks
    if not incl_L.is_injective() or not proj_N.is_surjective():
        raise ModuleError("internal: extension is not exact at the ends")
    if rank(incl_L.mat @ proj_N.mat) != 0:
        raise ModuleError("internal: extension composite is nonzero")
    if E.dim != L.dim + N.dim:
        raise ModuleError("internal: extension has wrong dimension")
    return E, incl_L, proj_N


# -- tensor products and Tor -------------------------------------------------------


@dataclass(frozen=True)
class QuotientSpace:
    """Plain vector-space quotient: proj (dim x qdim) and a section lift
    (qdim x dim) with lift @ proj = identity."""
    dim: int
    qdim: int
    proj: Mat
    lift: Mat


def quotient_space(field, dim: int, rel_rows: Mat) -> QuotientSpace:
    from .linalg import rref
    if rel_rows.nrows == 0:
        ident = Mat.identity(field, dim)
        return QuotientSpace(dim, dim, ident, ident)
    red, piv = rref(rel_rows)
    rel = Mat(field, red.rows[: len(piv)], dim)
    pivset = set(piv)
    free = [c for c in range(dim) if c not in pivset]
    lift = Mat(field, [tuple(field.one if j == fc else field.zero for j in range(dim))
                       for fc in free], dim)

    def reduce_vec(v):
        v = list(v)
        for i, pc in enumerate(piv):
            c = v[pc]
            if c != field.zero:
                for j, x in enumerate(rel.rows[i]):
                    v[j] = field.sub(v[j], field.mul(c, x))
        return tuple(v[fc] for fc in free)

    proj = Mat(field, [reduce_vec(tuple(field.one if j == i else field.zero
                                        for j in range(dim)))
                       for i in range(dim)], len(free))
    return QuotientSpace(dim, len(free), proj, lift)


@dataclass(frozen=True)
class TensorProduct:
    """N (x)_B M for N a right B-module and M a B-A-bimodule: a right
    A-module together with the canonical surjection from the plain tensor."""
    module: RightModule
    space: QuotientSpace
    left_factor: RightModule
    bimodule: Bimodule

    def pure(self, n_vec, m_vec) -> tuple:
        """Class of n (x) m."""
        F = self.module.field
        dm = self.bimodule.carrier.dim
        plain = [F.zero] * (len(n_vec) * dm)
        for i, a in enumerate(n_vec):
            if a == F.zero:
                continue
            for j, b in enumerate(m_vec):
                if b != F.zero:
                    plain[i * dm + j] = F.add(plain[i * dm + j], F.mul(a, b))
        return vec_matmul(tuple(plain), self.space.proj)


def tensor_over(B: Algebra, N: RightModule, M: Bimodule,
                check: bool = True) -> TensorProduct:
    """N (x)_B M as a right module over the bimodule's right algebra."""
    if N.algebra != B or M.left_algebra != B:
        raise ModuleError("tensor factors do not match the algebra")
    F = B.field
    dn = N.dim
    dm = M.carrier.dim
    plain_dim = dn * dm
    rel_rows = []
    for g in range(B.dim):
        right_act = N.actions[g]
        left_act = M.left_actions[g]
        for i in range(dn):
            for j in range(dm):
                vec = [F.zero] * plain_dim
                nz = False
                for k in range(dn):
                    c = right_act.rows[i][k]
                    if c != F.zero:
                        vec[k * dm + j] = F.add(vec[k * dm + j], c)
                        nz = True
                for k in range(dm):
                    c = left_act.rows[j][k]
                    if c != F.zero:
                        vec[i * dm + k] = F.sub(vec[i * dm + k], c)
                        nz = True
                if nz and not vec_is_zero(F, vec):
                    rel_rows.append(tuple(vec))
    rel = row_space_basis(Mat(F, rel_rows, plain_dim)) if rel_rows else Mat(F, [], plain_dim)
    space = quotient_space(F, plain_dim, rel)
    A = M.carrier.algebra
    actions = []
    for r in range(A.dim):
        ar = M.carrier.actions[r]
        plain_rows = []
        for i in range(dn):
            for j in range(dm):
                row = [F.zero] * plain_dim
                for k in range(dm):
                    c = ar.rows[j][k]
                    if c != F.zero:
                        row[i * dm + k] = c
                plain_rows.append(tuple(row))
        plain_act = Mat(F, plain_rows, plain_dim)
        actions.append(space.lift @ plain_act @ space.proj)
    module = RightModule(A, actions, check=check)
    return TensorProduct(module, space, N, M)


def tensor_on_left_morphism(tp_src: TensorProduct, tp_dst: TensorProduct,
                            u: ModuleMorphism) -> ModuleMorphism:
    """u (x) id : N (x) M -> N' (x) M for u : N -> N'."""
    F = u.source.field
    dm = tp_src.bimodule.carrier.dim
    dn, dn2 = u.source.dim, u.target.dim
    plain_rows = []
    for i in range(dn):
        for j in range(dm):
            row = [F.zero] * (dn2 * dm)
            for k in range(dn2):
                c = u.mat.rows[i][k]
                if c != F.zero:
                    row[k * dm + j] = c
            plain_rows.append(tuple(row))
    plain = Mat(F, plain_rows, dn2 * dm)
    return ModuleMorphism(tp_src.module, tp_dst.module,
                          tp_src.space.lift @ plain @ tp_dst.space.proj,
                          check=False)


def tensor_on_right_morphism(tp_src: TensorProduct, tp_dst: TensorProduct,
                             dmat: Mat) -> ModuleMorphism:
    """id (x) d : N (x) M -> N (x) M' for a bimodule morphism d : M -> M'
    (same left factor N)."""
    F = tp_src.module.field
    dn = tp_src.left_factor.dim
    dm = tp_src.bimodule.carrier.dim
    dm2 = tp_dst.bimodule.carrier.dim
    plain_rows = []
    for i in range(dn):
        for j in range(dm):
            row = [F.zero] * (dn * dm2)
            for k in range(dm2):
                c = dmat.rows[j][k]
                if c != F.zero:
                    row[i * dm2 + k] = c
            plain_rows.append(tuple(row))
    plain = Mat(F, plain_rows, dn * dm2)
    return ModuleMorphism(tp_src.module, tp_dst.module,
                          tp_src.space.lift @ plain @ tp_dst.space.proj,
                          check=False)


def tor1_via_two_term(B: Algebra, N: RightModule, Q1: Bimodule, Q0: Bimodule,
                      delta: ModuleMorphism,
                      check_exact: bool = True) -> tuple[RightModule, TensorProduct,
                                                         TensorProduct, ModuleMorphism,
                                                         ModuleMorphism]:
    """Tor_1^B(N, M) = ker(N (x) Q1 -> N (x) Q0) for a two-term projective
    presentation 0 -> Q1 -> Q0 -> M -> 0 of the left module M, carried as
    bimodules so the right structure is inherited.

    `delta` is a morphism of the left structures (right modules over the
    opposite algebra).  Returns (tor, NQ1, NQ0, induced_map, kernel_incl).
    """
    NQ1 = tensor_over(B, N, Q1, check=False)
    NQ0 = tensor_over(B, N, Q0, check=False)
    F = B.field
    dn = N.dim
    d1 = Q1.carrier.dim
    d0 = Q0.carrier.dim
    plain_rows = []
    for i in range(dn):
        for j in range(d1):
            row = [F.zero] * (dn * d0)
            for k in range(d0):
                c = delta.mat.rows[j][k]
                if c != F.zero:
                    row[i * d0 + k] = c
            plain_rows.append(tuple(row))
    plain = Mat(F, plain_rows, dn * d0)
    induced = ModuleMorphism(NQ1.module, NQ0.module,
                             NQ1.space.lift @ plain @ NQ0.space.proj,
                             check=False)
    tor, incl = kernel_submodule(induced)
    if check_exact:
        ModuleMorphism(NQ1.module, NQ0.module, induced.mat, check=True)
    return tor, NQ1, NQ0, induced, incl


def regular_bimodule(A: Algebra) -> Bimodule:
    """A as an A-A-bimodule (left and right multiplication)."""
    return Bimodule(regular_module(A), A,
                    tuple(A.left_mult_matrix_basis(i) for i in range(A.dim)))


def trivial_right_bimodule(left_mod: RightModule, B: Algebra) -> Bimodule:
    """A left B-module (as a right module over B.opposite()) bundled with
    the trivial right action of the base field."""
    from .algebras import base_field_algebra
    k_alg = base_field_algebra(B.field)
    carrier = RightModule(k_alg, [Mat.identity(B.field, left_mod.dim)], check=False)
    return Bimodule(carrier, B, left_mod.actions)


def lift_endomorphism_through_cover(aug: ModuleMorphism, rho: Mat) -> Mat:
    """For aug : Q0 -> M over the left structure's algebra and rho an
    endomorphism of M commuting with it, solve lam0 @ aug = aug @ rho with
    lam0 in End(Q0) (solvable by projectivity of Q0)."""
    F = aug.source.field
    endos = hom_space(aug.source, aug.source)
    if not endos:
        raise ModuleError("internal: End(Q0) is empty")
    ncols = aug.source.dim * aug.target.dim
    rows = [_flatten_mat(e.mat @ aug.mat) for e in endos]
    target = _flatten_mat(aug.mat @ rho)
    from .linalg import solve_left
    sol = solve_left(Mat(F, rows, ncols), target)
    if sol is None:
        raise ModuleError("endomorphism does not lift through the cover")
    lam0 = Mat.zero(F, aug.source.dim, aug.source.dim)
    for c, e in zip(sol, endos):
        if c != F.zero:
            lam0 = lam0 + e.mat.scale(c)
    return lam0


def restrict_through_injection(delta: ModuleMorphism, lam0: Mat) -> Mat:
    """lam1 with lam1 @ delta = delta @ lam0, for delta injective whose image
    is lam0-stable."""
    from .linalg import solve_left
    F = delta.source.field
    target = delta.mat @ lam0
    rows = []
    for r in target.rows:
        x = solve_left(delta.mat, r)
        if x is None:
            raise ModuleError("image of the injection is not stable under the lift")
        rows.append(x)
    return Mat(F, rows, delta.source.dim)


def tor1_with_lifted_action(B: Algebra, N: RightModule, Q1_left: RightModule,
                            Q0_left: RightModule, delta_left: ModuleMorphism,
                            aug_left: ModuleMorphism, M_bim: Bimodule,
                            lam0_override=None) -> RightModule:
    """Tor_1^B(N, M) with the right action of M's right algebra induced by
    chain lifts of right multiplication through the presentation (the
    generic route when the presentation terms carry no bimodule structure).
    """
    Q1b = trivial_right_bimodule(Q1_left, B)
    Q0b = trivial_right_bimodule(Q0_left, B)
    tor, NQ1, NQ0, induced, incl = tor1_via_two_term(B, N, Q1b, Q0b, delta_left,
                                                     check_exact=False)
    R = M_bim.carrier.algebra
    F = B.field
    dn = N.dim
    d1 = Q1_left.dim
    actions = []
    for r_idx in range(R.dim):
        rho = M_bim.carrier.actions[r_idx]
        if lam0_override is not None and lam0_override[r_idx] is not None:
            lam0 = lam0_override[r_idx]
        else:
            lam0 = lift_endomorphism_through_cover(aug_left, rho)
        lam1 = restrict_through_injection(delta_left, lam0)
        plain_rows = []
        for i in range(dn):
            for j in range(d1):
                row = [F.zero] * (dn * d1)
                for k in range(d1):
                    c = lam1.rows[j][k]
                    if c != F.zero:
                        row[i * d1 + k] = c
                plain_rows.append(tuple(row))
        on_nq1 = NQ1.space.lift @ Mat(F, plain_rows, dn * d1) @ NQ1.space.proj
        rows = []
        for r in (incl.mat @ on_nq1).rows:
            coords = coordinates_in_rowspace(incl.mat, r)
            if coords is None:
                raise ModuleError("internal: lifted action does not preserve Tor")
            rows.append(coords)
        actions.append(Mat(F, rows, tor.dim))
    return RightModule(R, actions, check=True)
