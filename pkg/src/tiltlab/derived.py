"""Bounded complexes and the derived side of the equivalence.

Sign conventions, fixed once: shift twists the differential by (-1)^k, and
the cone of f : X -> Y has terms X[1] + Y with d(x, y) = (-x d_X, x f + y d_Y)
(row-vector convention).  Resolutions of bounded complexes are built
stepwise from injective hulls / projective covers, so they stay minimal;
every augmentation is verified to be a quasi-isomorphism at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .homology import (
    Bimodule, injective_hull, projective_cover, tensor_on_left_morphism,
    tensor_on_right_morphism, tensor_over, TensorProduct,
)
from .linalg import Mat, coordinates_in_rowspace, left_kernel_basis, rank, \
    row_space_basis, solve_left, solve_right, vec_matmul
from .modules import (
    ModuleError, ModuleMorphism, RightModule, direct_sum, hom_space,
    kernel_submodule, quotient, span_submodule, zero_module,
)


class DerivedError(ValueError):
    pass


class ResolutionCapError(DerivedError):
    """Stepwise resolution exceeded its length cap (the algebra's relevant
    homological dimension is too large for the requested complex)."""


# -- complexes -----------------------------------------------------------------


@dataclass(frozen=True)
class Complex:
    algebra: object
    lo: int
    terms: tuple[RightModule, ...]
    diffs: tuple[ModuleMorphism, ...]   # diffs[i] : terms[i] -> terms[i+1]

    @property
    def hi(self) -> int:
        return self.lo + len(self.terms) - 1

    def term(self, n: int) -> RightModule:
        if self.lo <= n <= self.hi:
            return self.terms[n - self.lo]
        return zero_module(self.algebra)

    def diff(self, n: int) -> ModuleMorphism:
        if self.lo <= n < self.hi:
            return self.diffs[n - self.lo]
        return ModuleMorphism.zero(self.term(n), self.term(n + 1))

    def support(self):
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return all(t.dim == 0 for t in self.terms)

    def total_dim(self) -> int:
        return sum(t.dim for t in self.terms)


def make_complex(algebra, lo: int, terms, diffs, check: bool = True) -> Complex:
    terms = tuple(terms)
    diffs = tuple(diffs)
    if terms and len(diffs) != len(terms) - 1:
        raise DerivedError("need exactly one differential between adjacent terms")
    if check:
        for i, d in enumerate(diffs):
            if d.source != terms[i] or d.target != terms[i + 1]:
                raise DerivedError(f"differential {i} does not match its terms")
        for i in range(len(diffs) - 1):
            if not diffs[i].then(diffs[i + 1]).is_zero():
                raise DerivedError(f"d o d != 0 at degree {lo + i}")
    return _trim(Complex(algebra, lo, terms, diffs))


def _trim(X: Complex) -> Complex:
    terms = list(X.terms)
    diffs = list(X.diffs)
    lo = X.lo
    while terms and terms[0].dim == 0:
        terms.pop(0)
        if diffs:
            diffs.pop(0)
        lo += 1
    while terms and terms[-1].dim == 0:
        terms.pop()
        if diffs:
            diffs.pop()
    if not terms:
        return Complex(X.algebra, 0, (), ())
    return Complex(X.algebra, lo, tuple(terms), tuple(diffs))


def zero_complex(algebra) -> Complex:
    return Complex(algebra, 0, (), ())


def one_term_complex(M: RightModule, degree: int = 0) -> Complex:
    if M.dim == 0:
        return zero_complex(M.algebra)
    return Complex(M.algebra, degree, (M,), ())


@dataclass(frozen=True)
class ChainMap:
    source: Complex
    target: Complex
    comps: tuple[tuple[int, ModuleMorphism], ...]   # sparse by degree

    def comp(self, n: int) -> ModuleMorphism:
        for d, m in self.comps:
            if d == n:
                return m
        return ModuleMorphism.zero(self.source.term(n), self.target.term(n))

    def is_zero(self) -> bool:
        return all(m.is_zero() for _, m in self.comps)


def make_chain_map(X: Complex, Y: Complex, comps_by_degree: dict,
                   check: bool = True) -> ChainMap:
    comps = []
    for n in sorted(comps_by_degree):
        m = comps_by_degree[n]
        if m.source != X.term(n) or m.target != Y.term(n):
            raise DerivedError(f"component at degree {n} has wrong ends")
        comps.append((n, m))
    f = ChainMap(X, Y, tuple(comps))
    if check:
        for n in range(min(X.lo, Y.lo) - 1, max(X.hi, Y.hi) + 1):
            lhs = f.comp(n).then(Y.diff(n))
            rhs = X.diff(n).then(f.comp(n + 1))
            if lhs.mat != rhs.mat:
                raise DerivedError(f"chain map square fails at degree {n}")
    return f


def identity_chain_map(X: Complex) -> ChainMap:
    return ChainMap(X, X, tuple((n, ModuleMorphism.identity(X.term(n)))
                                for n in X.support()))


def compose_chain_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    if f.target != g.source:
        raise DerivedError("chain map composition mismatch")
    comps = {}
    for n in range(min(f.source.lo, g.target.lo), max(f.source.hi, g.target.hi) + 1):
        comps[n] = f.comp(n).then(g.comp(n))
    return make_chain_map(f.source, g.target, comps, check=False)


# -- cohomology -----------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyData:
    module: RightModule
    cocycles: RightModule
    cocycle_incl: ModuleMorphism    # cocycles -> X^n
    proj: ModuleMorphism            # cocycles -> H


def cohomology(X: Complex, n: int) -> CohomologyData:
    """H^n = ker d^n / im d^(n-1), with the subquotient maps."""
    F = X.algebra.field
    Xn = X.term(n)
    dn = X.diff(n)
    ker_rows = left_kernel_basis(dn.mat) if Xn.dim else []
    if not ker_rows and Xn.dim == 0:
        Z = zero_module(X.algebra)
        zincl = ModuleMorphism(Z, Xn, Mat(F, [], Xn.dim), check=False)
        return CohomologyData(Z, Z, zincl, ModuleMorphism.identity(Z))
    Zmod, zincl = span_submodule(Xn, Mat(F, ker_rows, Xn.dim)) if ker_rows else \
        (zero_module(X.algebra), ModuleMorphism(zero_module(X.algebra), Xn,
                                                Mat(F, [], Xn.dim), check=False))
    dprev = X.diff(n - 1)
    b_rows = []
    for r in dprev.mat.rows:
        c = coordinates_in_rowspace(zincl.mat, r) if Zmod.dim else None
        if Zmod.dim == 0:
            continue
        if c is None:
            raise DerivedError("internal: boundaries escape the cocycles")
        b_rows.append(c)
    B = row_space_basis(Mat(F, b_rows, Zmod.dim)) if b_rows else Mat(F, [], Zmod.dim)
    H, proj = quotient(Zmod, B)
    return CohomologyData(H, Zmod, zincl, proj)


def cohomology_dims(X: Complex) -> dict:
    return {n: cohomology(X, n).module.dim for n in X.support()}


@dataclass(frozen=True)
class InducedMap:
    degree: int
    source_module: RightModule
    target_module: RightModule
    morphism: ModuleMorphism | None
    is_iso: bool


def cohomology_induced_map(f: ChainMap, n: int) -> InducedMap:
    """H^n(f), as an honest module morphism between the subquotients."""
    hx = cohomology(f.source, n)
    hy = cohomology(f.target, n)
    F = f.source.algebra.field
    if hx.module.dim == 0 or hy.module.dim == 0:
        mor = ModuleMorphism.zero(hx.module, hy.module)
        return InducedMap(n, hx.module, hy.module, mor,
                          hx.module.dim == hy.module.dim == 0)
    from .linalg import coordinates_in_echelon, echelon_pivots, solve_left_many
    eyes = [tuple(F.one if j == i else F.zero for j in range(hx.module.dim))
            for i in range(hx.module.dim)]
    sections = solve_left_many(hx.proj.mat, eyes)
    piv_y = echelon_pivots(hy.cocycle_incl.mat)
    rows = []
    for zc in sections:
        if zc is None:
            raise DerivedError("internal: cohomology projection is not surjective")
        xvec = vec_matmul(zc, hx.cocycle_incl.mat)
        yvec = vec_matmul(xvec, f.comp(n).mat)
        c = coordinates_in_echelon(hy.cocycle_incl.mat, piv_y, yvec)
        if c is None:
            raise DerivedError("internal: image of a cocycle is not a cocycle")
        rows.append(vec_matmul(c, hy.proj.mat))
    mor = ModuleMorphism(hx.module, hy.module, Mat(F, rows, hy.module.dim),
                         check=True)
    return InducedMap(n, hx.module, hy.module, mor, mor.is_iso())


def quasi_iso(f: ChainMap) -> bool:
    degrees = range(min(f.source.lo, f.target.lo) - 1,
                    max(f.source.hi, f.target.hi) + 2)
    return all(cohomology_induced_map(f, n).is_iso for n in degrees)


# -- shift and cone ---------------------------------------------------------------


def shift(X: Complex, k: int) -> Complex:
    """X[k]^n = X^(n+k), differential scaled by (-1)^k."""
    if not X.terms:
        return X
    F = X.algebra.field
    sign = F.one if k % 2 == 0 else F.neg(F.one)
    diffs = []
    for d in X.diffs:
        diffs.append(ModuleMorphism(d.source, d.target, d.mat.scale(sign),
                                    check=False))
    return Complex(X.algebra, X.lo - k, X.terms, tuple(diffs))


@dataclass(frozen=True)
class ConeData:
    complex: Complex
    incl_target: ChainMap         # Y -> Cone
    proj_shifted: ChainMap        # Cone -> X[1]
    injs: dict
    projs: dict


def cone(f: ChainMap) -> ConeData:
    """Cone of f : X -> Y, with the two canonical triangle maps."""
    X, Y = f.source, f.target
    A = X.algebra
    F = A.field
    lo = min(X.lo - 1, Y.lo if Y.terms else X.lo - 1)
    hi = max(X.hi - 1, Y.hi if Y.terms else X.hi - 1)
    if not X.terms and not Y.terms:
        Z = zero_complex(A)
        zmap = make_chain_map(Y, Z, {}, check=False)
        zmap2 = make_chain_map(Z, shift(X, 1), {}, check=False)
        return ConeData(Z, zmap, zmap2, {}, {})
    if not X.terms:
        lo, hi = Y.lo, Y.hi
    terms = []
    injs = {}
    projs = {}
    for n in range(lo, hi + 1):
        S, inj, proj = direct_sum([X.term(n + 1), Y.term(n)], algebra=A)
        terms.append(S)
        injs[n] = inj
        projs[n] = proj
    diffs = []
    for n in range(lo, hi):
        src = terms[n - lo]
        dst = terms[n + 1 - lo]
        # d(x, y) = (-x dX, x f + y dY)
        mx = (projs[n][0].mat @ (
            (-X.diff(n + 1).mat) @ injs[n + 1][0].mat
            + f.comp(n + 1).mat @ injs[n + 1][1].mat))
        my = projs[n][1].mat @ (Y.diff(n).mat @ injs[n + 1][1].mat)
        diffs.append(ModuleMorphism(src, dst, mx + my, check=False))
    C = make_complex(A, lo, terms, diffs, check=True)
    incl = make_chain_map(Y, C, {n: injs[n][1] for n in range(lo, hi + 1)},
                          check=True)
    Xs = shift(X, 1)
    proj_map = make_chain_map(C, Xs, {n: projs[n][0] for n in range(lo, hi + 1)},
                              check=True)
    return ConeData(C, incl, proj_map, injs, projs)


# -- stepwise resolutions ------------------------------------------------------------


def injective_resolution(X: Complex, extra_cap: int = 24) -> tuple[Complex, ChainMap]:
    """Bounded-below termwise-injective resolution with a verified
    quasi-isomorphism X -> I, built by hull-pushout steps.

    Loop invariants in degree n: C is the module still to be resolved,
    kappa : X^n -> C satisfies kappa ; chi = d_X^n, and chi : C -> X^(n+1)
    kills the image of the previous injective term.
    """
    A = X.algebra
    F = A.field
    if X.is_zero() or not X.terms:
        Z = zero_complex(A)
        return Z, make_chain_map(X, Z, {}, check=False)
    lo = X.lo
    cap = X.hi + extra_cap
    C = X.term(lo)
    kappa = ModuleMorphism.identity(C)
    chi = ModuleMorphism(C, X.term(lo + 1), X.diff(lo).mat, check=False)
    terms = []
    diffs = []
    phis = {}
    iota_prev = None                     # I^(n-1) -> C_n
    n = lo
    while True:
        if C.dim == 0 and n > X.hi:
            break
        if n > cap:
            raise ResolutionCapError(
                f"injective resolution exceeded degree cap {cap}")
        I, e = injective_hull(C)
        terms.append(I)
        phis[n] = kappa.then(e)
        if iota_prev is not None:
            diffs.append(iota_prev.then(e))
        Xn1 = X.term(n + 1)
        # pushout: C_(n+1) = (I + X^(n+1)) / {(e(c), -chi(c))}
        D, injs, projs = direct_sum([I, Xn1], algebra=A)
        rel_rows = []
        for i in range(C.dim):
            ei = tuple(F.one if j == i else F.zero for j in range(C.dim))
            va = vec_matmul(vec_matmul(ei, e.mat), injs[0].mat)
            vb = vec_matmul(vec_matmul(ei, chi.mat), injs[1].mat)
            rel_rows.append(tuple(F.sub(a, b) for a, b in zip(va, vb)))
        rel = row_space_basis(Mat(F, rel_rows, D.dim)) if rel_rows else Mat(F, [], D.dim)
        Cnext, projD = quotient(D, rel)
        iota_prev = injs[0].then(projD)
        kappa = injs[1].then(projD)
        # next chi: induced by (0, d_X^(n+1)); well-defined because
        # chi ; d = 0 on C (verified)
        if not chi.mat @ X.diff(n + 1).mat == Mat.zero(F, C.dim, X.term(n + 2).dim):
            raise DerivedError("internal: chi does not square to zero")
        big = Mat.zero(F, I.dim, X.term(n + 2).dim).vstack(X.diff(n + 1).mat)
        chi_next_mat = _solve_through_surjection(projD.mat, big)
        C = Cnext
        chi = ModuleMorphism(C, X.term(n + 2), chi_next_mat, check=False)
        n += 1
    I_cx = make_complex(A, lo, terms, diffs, check=True)
    aug = make_chain_map(X, I_cx,
                         {m: phis[m] for m in X.support() if m in phis},
                         check=True)
    if not quasi_iso(aug):
        raise DerivedError("internal: injective resolution is not a quasi-iso")
    return I_cx, aug


def _solve_through_surjection(proj_mat: Mat, big: Mat) -> Mat:
    """G with proj_mat @ G = big (proj_mat surjective onto its target)."""
    F = proj_mat.field
    gcols = []
    for j in range(big.ncols):
        col = tuple(big.rows[i][j] for i in range(big.nrows))
        x = solve_right(proj_mat, col)
        if x is None:
            raise DerivedError("internal: map does not factor through the quotient")
        gcols.append(x)
    if not gcols:
        return Mat(F, [() for _ in range(proj_mat.ncols)], 0)
    return Mat(F, list(zip(*gcols)), big.ncols)


def projective_resolution_cx(X: Complex, extra_cap: int = 24) -> tuple[Complex, ChainMap]:
    """Bounded-above termwise-projective resolution P -> X (cover-pullback
    steps), with a verified quasi-isomorphism.

    Loop invariants in degree n: sigma : C -> X^n, and xi : X^(n-1) -> C
    with xi ; sigma = d_X^(n-1) and d ; xi = 0.
    """
    A = X.algebra
    F = A.field
    if X.is_zero() or not X.terms:
        Z = zero_complex(A)
        return Z, make_chain_map(Z, X, {}, check=False)
    hi = X.hi
    cap_lo = X.lo - extra_cap
    C = X.term(hi)
    sigma = ModuleMorphism.identity(C)
    xi_map = ModuleMorphism(X.term(hi - 1), C, X.diff(hi - 1).mat, check=False)
    terms_rev = []
    diffs_rev = []
    psis = {}
    pi_prev = None                          # C_n -> P^(n+1), for d_P
    n = hi
    while True:
        if C.dim == 0 and n < X.lo:
            break
        if n < cap_lo:
            raise ResolutionCapError(
                f"projective resolution exceeded degree cap {cap_lo}")
        P, p = projective_cover(C)
        terms_rev.append(P)
        psis[n] = p.then(sigma)
        if pi_prev is not None:
            diffs_rev.append(p.then(pi_prev))
        Xn1 = X.term(n - 1)
        Cprev, proj_z, proj_x = _pullback(P, Xn1, p, xi_map)
        pi_prev = proj_z
        sigma = proj_x
        # next xi: x -> (0, d_X^(n-2) x) inside the pullback
        dmat = X.diff(n - 2).mat
        target_rows = []
        for i in range(X.term(n - 2).dim):
            ei = tuple(F.one if j == i else F.zero for j in range(X.term(n - 2).dim))
            dv = vec_matmul(ei, dmat)
            vec = (F.zero,) * P.dim + tuple(dv)
            target_rows.append(vec)
        xi_next_rows = []
        incl = _pullback_inclusion(Cprev, P, Xn1, proj_z, proj_x)
        for vec in target_rows:
            c = coordinates_in_rowspace(incl, vec)
            if c is None:
                raise DerivedError("internal: xi image misses the pullback")
            xi_next_rows.append(c)
        C = Cprev
        xi_map = ModuleMorphism(X.term(n - 2), C,
                                Mat(F, xi_next_rows, C.dim), check=False)
        n -= 1
    terms = list(reversed(terms_rev))
    diffs = list(reversed(diffs_rev))
    P_cx = make_complex(A, hi - len(terms) + 1, terms, diffs, check=True)
    aug = make_chain_map(P_cx, X, psis, check=True)
    if not quasi_iso(aug):
        raise DerivedError("internal: projective resolution is not a quasi-iso")
    return P_cx, aug


def _pullback_inclusion(sub: RightModule, P: RightModule, Xn1: RightModule,
                        proj_z: ModuleMorphism, proj_x: ModuleMorphism) -> Mat:
    """Row basis of the pullback inside P + X (as stored by _pullback)."""
    return proj_z.mat.hstack(proj_x.mat)


def _pullback(P: RightModule, Xn1: RightModule, p: ModuleMorphism,
              xi_map: ModuleMorphism):
    """{(z, x) : p(z) = xi(x)} with its two projections."""
    A = P.algebra
    F = A.field
    D, injs, projs = direct_sum([P, Xn1], algebra=A)
    big = p.mat.vstack(-xi_map.mat)
    rows = left_kernel_basis(big)
    if rows:
        sub, incl = span_submodule(D, Mat(F, rows, D.dim))
    else:
        sub = zero_module(A)
        incl = ModuleMorphism(sub, D, Mat(F, [], D.dim), check=False)
    proj_z = ModuleMorphism(sub, P, incl.mat @ projs[0].mat, check=False)
    proj_x = ModuleMorphism(sub, Xn1, incl.mat @ projs[1].mat, check=False)
    return sub, proj_z, proj_x


# -- RH and LG ------------------------------------------------------------------


@dataclass(frozen=True)
class RHImage:
    complex: "Complex"                 # over S
    himages: tuple                      # HImage per degree of the resolution
    resolution: "Complex"              # termwise-injective model of X over R
    aug: "ChainMap"                    # X -> resolution


def RH_from_resolution(ctx, I: Complex, aug: ChainMap) -> RHImage:
    from .equivalence import H, H_on_morphism
    hims = tuple(H(ctx, I.term(n)) for n in I.support())
    terms = tuple(h.module for h in hims)
    diffs = []
    for k, n in enumerate(range(I.lo, I.hi)):
        diffs.append(H_on_morphism(ctx, I.diff(n), hims[k], hims[k + 1]))
    cx = make_complex(ctx.S, I.lo, terms, diffs, check=True)
    return RHImage(cx, hims, I, aug)


def RH(ctx, X: Complex) -> RHImage:
    """RHom(T, X): apply Hom(T, -) termwise to an injective resolution."""
    I, aug = injective_resolution(X)
    return RH_from_resolution(ctx, I, aug)


@dataclass(frozen=True)
class LGImage:
    complex: "Complex"                # over R: the cone model of C (x)^L T
    CQ1: "Complex"
    CQ0: "Complex"
    tps1: tuple                        # TensorProduct per degree of C with Q1
    tps0: tuple
    one_delta: "ChainMap"
    cone_data: "ConeData"
    source: "Complex"


def tensor_complex(ctx, C: Complex, Q: Bimodule):
    """C (x)_S Q termwise (Q an S-R-bimodule): a complex over R."""
    tps = tuple(tensor_over(ctx.S, C.term(n), Q, check=False)
                for n in C.support())
    terms = tuple(tp.module for tp in tps)
    diffs = []
    for k, n in enumerate(range(C.lo, C.hi)):
        diffs.append(tensor_on_left_morphism(tps[k], tps[k + 1], C.diff(n)))
    cx = make_complex(Q.carrier.algebra, C.lo, terms, diffs, check=True)
    return cx, tps


def _tp_at(tps, C: Complex, ctx, Q: Bimodule, n: int):
    if C.lo <= n <= C.hi:
        return tps[n - C.lo]
    return tensor_over(ctx.S, zero_module(ctx.S), Q, check=False)


def LG(ctx, C: Complex) -> LGImage:
    """C (x)^L T as the cone of 1 (x) delta on the two-term presentation."""
    CQ1, tps1 = tensor_complex(ctx, C, ctx.Q1)
    CQ0, tps0 = tensor_complex(ctx, C, ctx.Q0)
    comps = {}
    for n in C.support():
        src = _tp_at(tps1, C, ctx, ctx.Q1, n)
        dst = _tp_at(tps0, C, ctx, ctx.Q0, n)
        comps[n] = tensor_on_right_morphism(src, dst, ctx.delta.mat)
    one_delta = make_chain_map(CQ1, CQ0, comps, check=True)
    cd = cone(one_delta)
    return LGImage(cd.complex, CQ1, CQ0, tps1, tps0, one_delta, cd, C)


def LG_on_chain_map(ctx, f: ChainMap, lg_src: LGImage, lg_dst: LGImage) -> ChainMap:
    """LG(f): blockwise f (x) 1 on both cone columns."""
    comps = {}
    lo = min(lg_src.complex.lo, lg_dst.complex.lo)
    hi = max(lg_src.complex.hi, lg_dst.complex.hi)
    for n in range(lo, hi + 1):
        src_term = lg_src.complex.term(n)
        dst_term = lg_dst.complex.term(n)
        if src_term.dim == 0 or dst_term.dim == 0:
            comps[n] = ModuleMorphism.zero(src_term, dst_term)
            continue
        s_injs = lg_src.cone_data.injs[n]
        s_projs = lg_src.cone_data.projs[n]
        d_injs = lg_dst.cone_data.injs[n]
        fq1 = tensor_on_left_morphism(
            _tp_at(lg_src.tps1, lg_src.source, ctx, ctx.Q1, n + 1),
            _tp_at(lg_dst.tps1, lg_dst.source, ctx, ctx.Q1, n + 1),
            f.comp(n + 1))
        fq0 = tensor_on_left_morphism(
            _tp_at(lg_src.tps0, lg_src.source, ctx, ctx.Q0, n),
            _tp_at(lg_dst.tps0, lg_dst.source, ctx, ctx.Q0, n),
            f.comp(n))
        mat = (s_projs[0].mat @ fq1.mat @ d_injs[0].mat
               + s_projs[1].mat @ fq0.mat @ d_injs[1].mat)
        comps[n] = ModuleMorphism(src_term, dst_term, mat, check=False)
    return make_chain_map(lg_src.complex, lg_dst.complex, comps, check=True)


def restrict_complex_to_field(X: Complex) -> Complex:
    """Forget the module structure: the same terms over the base field."""
    from .algebras import base_field_algebra
    k_alg = base_field_algebra(X.algebra.field)
    F = X.algebra.field
    terms = [RightModule(k_alg, [Mat.identity(F, t.dim)], check=False)
             for t in X.terms]
    diffs = []
    for i, d in enumerate(X.diffs):
        diffs.append(ModuleMorphism(terms[i], terms[i + 1], d.mat, check=False))
    return Complex(k_alg, X.lo, tuple(terms), tuple(diffs))


def lg_chain_endo(ctx, lg: LGImage, r_idx: int) -> ChainMap:
    """The chain endomorphism of the cone model induced by the lifts of
    right multiplication by the r-th basis element of R."""
    F = ctx.S.field
    C = lg.source
    comps = {}
    for n in range(lg.complex.lo, lg.complex.hi + 1):
        term = lg.complex.term(n)
        if term.dim == 0:
            comps[n] = ModuleMorphism.zero(term, term)
            continue
        injs = lg.cone_data.injs[n]
        projs = lg.cone_data.projs[n]
        mat = Mat.zero(F, term.dim, term.dim)
        for (col, lam, Q, tps, deg) in (
                (0, ctx.lifts1[r_idx], ctx.Q1, lg.tps1, n + 1),
                (1, ctx.lifts0[r_idx], ctx.Q0, lg.tps0, n)):
            tp = _tp_at(tps, C, ctx, Q, deg)
            if tp.module.dim == 0:
                continue
            dn = C.term(deg).dim
            dq = Q.carrier.dim
            plain_rows = []
            for i in range(dn):
                for j in range(dq):
                    row = [F.zero] * (dn * dq)
                    for k in range(dq):
                        c = lam.rows[j][k]
                        if c != F.zero:
                            row[i * dq + k] = c
                    plain_rows.append(tuple(row))
            act = tp.space.lift @ Mat(F, plain_rows, dn * dq) @ tp.space.proj
            mat = mat + (projs[col].mat @ act @ injs[col].mat)
        comps[n] = ModuleMorphism(term, term, mat, check=False)
    return make_chain_map(lg.complex, lg.complex, comps, check=True)


def lg_cohomology_R_module(ctx, lg: LGImage, n: int):
    """H^n of the cone model with the lifted right R-action (the module law
    is verified exactly at construction)."""
    h = cohomology(lg.complex, n)
    if h.module.dim == 0:
        return zero_module(ctx.R), h
    actions = []
    for r_idx in range(ctx.R.dim):
        endo = lg_chain_endo(ctx, lg, r_idx)
        actions.append(cohomology_induced_map(endo, n).morphism.mat)
    return RightModule(ctx.R, actions, check=True), h


# -- derived counit and unit -------------------------------------------------------


@dataclass(frozen=True)
class DerivedCounit:
    chain_map: "ChainMap"     # LG(RH(X)) -> i(X), at base-field level
    rh: RHImage
    lg: LGImage
    is_quasi_iso: bool
    equivariant: bool         # induced maps intertwine the lifted R-actions


def derived_counit(ctx, X: Complex) -> DerivedCounit:
    """The evaluation chain map Tot(Hom(T, I) (x) [Q1 -> Q0]) -> I.

    The cone model carries no strict termwise R-structure, so the chain map
    lives at base-field level; on cohomology the lifted R-actions are
    constructed and the induced maps are verified to be R-linear."""
    rh = RH(ctx, X)
    lg = LG(ctx, rh.complex)
    I = rh.resolution
    Ik = restrict_complex_to_field(I)
    F = ctx.R.field
    comps = {}
    lo = min(lg.complex.lo, Ik.lo)
    hi = max(lg.complex.hi, Ik.hi)
    for n in range(lo, hi + 1):
        src = lg.complex.term(n)
        dst = Ik.term(n)
        if src.dim == 0 or dst.dim == 0:
            comps[n] = ModuleMorphism.zero(src, dst)
            continue
        C = rh.complex
        him = rh.himages[n - I.lo] if I.lo <= n <= I.hi else None
        tp0 = _tp_at(lg.tps0, C, ctx, ctx.Q0, n)
        dq0 = ctx.Q0.carrier.dim
        if him is None or not him.basis:
            ev = Mat.zero(F, tp0.module.dim, dst.dim)
        else:
            plain_rows = []
            for h in him.basis:
                for k in range(dq0):
                    plain_rows.append(vec_matmul(ctx.eps.mat.rows[k], h.mat))
            plain = Mat(F, plain_rows, dst.dim)
            ev = tp0.space.lift @ plain
        mat = lg.cone_data.projs[n][1].mat @ ev
        comps[n] = ModuleMorphism(src, dst, mat, check=False)
    cm = make_chain_map(lg.complex, Ik, comps, check=True)
    qiso = quasi_iso(cm)
    equivariant = True
    for n in range(lo - 1, hi + 2):
        im = cohomology_induced_map(cm, n)
        h_lg_R, _ = lg_cohomology_R_module(ctx, lg, n)
        h_I = cohomology(I, n)
        if h_lg_R.dim != im.source_module.dim or h_I.module.dim != im.target_module.dim:
            raise DerivedError("internal: cohomology bases disagree across fields")
        try:
            ModuleMorphism(h_lg_R, h_I.module, im.morphism.mat, check=True)
        except Exception:
            equivariant = False
    return DerivedCounit(cm, rh, lg, qiso, equivariant)


@dataclass(frozen=True)
class DerivedUnit:
    chain_map: "ChainMap"    # p(C) -> Hom(T, i(G(pC)))
    pC: "Complex"
    paug: "ChainMap"
    g_complex: "Complex"
    is_quasi_iso: bool


def derived_unit(ctx, C: Complex) -> DerivedUnit:
    """The unit p(C) -> RH(LG(C)) computed in the K-projective model, where
    LG is the plain tensor of the projective resolution."""
    from .equivalence import G, G_on_morphism, H, H_on_morphism, unit
    pC, paug = projective_resolution_cx(C)
    if not pC.terms:
        Z = zero_complex(ctx.S)
        zm = make_chain_map(pC, Z, {}, check=False)
        return DerivedUnit(zm, pC, paug, zero_complex(ctx.R), C.is_zero())
    gterms = []
    gdiffs = []
    for n in pC.support():
        gterms.append(G(ctx, pC.term(n)).module)
    for n in range(pC.lo, pC.hi):
        gdiffs.append(G_on_morphism(ctx, pC.diff(n)))
    A_cx = make_complex(ctx.R, pC.lo, gterms, gdiffs, check=True)
    iA, augA = injective_resolution(A_cx)
    rh = RH_from_resolution(ctx, iA, augA)
    comps = {}
    for n in pC.support():
        N = pC.term(n)
        eta = unit(ctx, N).morphism
        hA = H(ctx, G(ctx, N).module)
        target_him = rh.himages[n - iA.lo] if iA.lo <= n <= iA.hi else None
        if target_him is None:
            comps[n] = ModuleMorphism.zero(N, rh.complex.term(n))
            continue
        haug = H_on_morphism(ctx, augA.comp(n), hA, target_him)
        comps[n] = eta.then(haug)
    cm = make_chain_map(pC, rh.complex, comps, check=True)
    return DerivedUnit(cm, pC, paug, A_cx, quasi_iso(cm))


# -- long exact sequence checks ------------------------------------------------------


def _connecting_map(alpha: ChainMap, beta: ChainMap, n: int):
    """Connecting homomorphism H^n(C") -> H^(n+1)(A) for the termwise short
    exact sequence 0 -> A --alpha--> B --beta--> C" -> 0."""
    A_cx, B_cx, C_cx = alpha.source, alpha.target, beta.target
    F = A_cx.algebra.field
    hc = cohomology(C_cx, n)
    ha = cohomology(A_cx, n + 1)
    if hc.module.dim == 0 or ha.module.dim == 0:
        return InducedMap(n, hc.module, ha.module,
                          ModuleMorphism.zero(hc.module, ha.module),
                          hc.module.dim == ha.module.dim == 0), hc, ha
    from .linalg import coordinates_in_echelon, echelon_pivots, solve_left_many
    eyes = [tuple(F.one if j == i else F.zero for j in range(hc.module.dim))
            for i in range(hc.module.dim)]
    sections = solve_left_many(hc.proj.mat, eyes)
    cvecs = [vec_matmul(zc, hc.cocycle_incl.mat) for zc in sections]
    yvecs = solve_left_many(beta.comp(n).mat, cvecs)
    piv_a = echelon_pivots(ha.cocycle_incl.mat)
    rows = []
    for yvec in yvecs:
        if yvec is None:
            raise DerivedError("internal: beta is not surjective in the snake")
        wvec = vec_matmul(yvec, B_cx.diff(n).mat)
        xvec = solve_left(alpha.comp(n + 1).mat, wvec)
        if xvec is None:
            raise DerivedError("internal: snake preimage through alpha missing")
        c = coordinates_in_echelon(ha.cocycle_incl.mat, piv_a, xvec)
        if c is None:
            raise DerivedError("internal: snake output is not a cocycle")
        rows.append(vec_matmul(c, ha.proj.mat))
    mor = ModuleMorphism(hc.module, ha.module,
                         Mat(F, rows, ha.module.dim), check=True)
    return InducedMap(n, hc.module, ha.module, mor, mor.is_iso()), hc, ha


def long_exact_sequence_nodes(alpha: ChainMap, beta: ChainMap) -> list[dict]:
    """All nodes of ... -> H^n(A) -> H^n(B) -> H^n(C) -> H^(n+1)(A) -> ...
    with exactness verified at each one."""
    A_cx, B_cx, C_cx = alpha.source, alpha.target, beta.target
    lo = min(A_cx.lo, B_cx.lo, C_cx.lo) - 1
    hi = max(A_cx.hi, B_cx.hi, C_cx.hi) + 1
    maps = []
    for n in range(lo, hi + 1):
        a_n = cohomology_induced_map(alpha, n)
        b_n = cohomology_induced_map(beta, n)
        d_n, _, _ = _connecting_map(alpha, beta, n)
        maps.append(("alpha", n, a_n))
        maps.append(("beta", n, b_n))
        maps.append(("delta", n, d_n))
    nodes = []
    for i in range(len(maps) - 1):
        kind_f, nf, f = maps[i]
        kind_g, ng, g = maps[i + 1]
        if f.target_module.dim != g.source_module.dim:
            raise DerivedError("internal: LES maps do not line up")
        comp_zero = True
        if f.morphism is not None and g.morphism is not None and \
                f.target_module.dim:
            comp_zero = f.morphism.then(g.morphism).is_zero()
        rk_f = rank(f.morphism.mat) if f.morphism is not None else 0
        rk_g = rank(g.morphism.mat) if g.morphism is not None else 0
        exact = comp_zero and (rk_f == f.target_module.dim - rk_g)
        nodes.append({"at": f"H^{ng}({kind_g}-source)", "incoming": kind_f,
                      "outgoing": kind_g, "exact": exact})
    return nodes


def les_check(ctx, C: Complex) -> dict:
    """For C termwise Tor-free against T (e.g. C = RH(X)): the short exact
    sequence of complexes 0 -> C(x)Q1 -> C(x)Q0 -> C(x)T -> 0, both long
    exact sequences (the second from the cone), and the degreewise
    comparison of C(x)T with the cone model."""
    from .homology import trivial_right_bimodule
    F = ctx.R.field
    CQ1, tps1 = tensor_complex(ctx, C, ctx.Q1)
    CQ0, tps0 = tensor_complex(ctx, C, ctx.Q0)
    # base-field model of C (x) T for the sequence machinery, and the honest
    # R-module model for the equivariance of the final comparison
    bimT_k = trivial_right_bimodule(ctx.T_left, ctx.S)
    CT, tpsT = tensor_complex(ctx, C, bimT_k)
    CT_R, tpsT_R = tensor_complex(ctx, C, ctx.bimT)
    alpha_comps = {}
    beta_comps = {}
    termwise = []
    for n in C.support():
        t1 = _tp_at(tps1, C, ctx, ctx.Q1, n)
        t0 = _tp_at(tps0, C, ctx, ctx.Q0, n)
        tT = _tp_at(tpsT, C, ctx, bimT_k, n)
        a = tensor_on_right_morphism(t1, t0, ctx.delta.mat)
        b = tensor_on_right_morphism(t0, tT, ctx.eps.mat)
        alpha_comps[n] = a
        beta_comps[n] = b
        inj = a.is_injective()
        surj = b.is_surjective()
        mid = a.then(b).is_zero() and \
            rank(a.mat) + rank(b.mat) == t0.module.dim
        termwise.append({"degree": n, "left_exact": inj, "mid_exact": mid,
                         "right_exact": surj})
    alpha = make_chain_map(CQ1, CQ0, alpha_comps, check=True)
    beta = make_chain_map(CQ0, CT, beta_comps, check=True)
    nodes_star = long_exact_sequence_nodes(alpha, beta)
    # the cone sequence 0 -> CQ0 -> Cone(alpha) -> CQ1[1] -> 0
    cd = cone(alpha)
    nodes_star2 = long_exact_sequence_nodes(cd.incl_target, cd.proj_shifted)
    # degreewise comparison Cone(1 x delta) ~ C (x) T
    comp_comps = {}
    for n in range(cd.complex.lo, cd.complex.hi + 1):
        src = cd.complex.term(n)
        dst = CT.term(n)
        if src.dim == 0 or dst.dim == 0:
            comp_comps[n] = ModuleMorphism.zero(src, dst)
            continue
        comp_comps[n] = ModuleMorphism(
            src, dst, cd.projs[n][1].mat @ beta_comps[n].mat, check=False)
    comparison = make_chain_map(cd.complex, CT, comp_comps, check=True)
    # the cone model is exactly LG(C); reconstruct it to get the lifted actions
    lg = LG(ctx, C)
    iso_by_degree = {}
    equivariant = True
    for n in range(min(cd.complex.lo, CT.lo) - 1, max(cd.complex.hi, CT.hi) + 2):
        im = cohomology_induced_map(comparison, n)
        iso_by_degree[n] = im.is_iso
        h_lift, _ = lg_cohomology_R_module(ctx, lg, n)
        h_ct = cohomology(CT_R, n)
        if h_lift.dim != im.source_module.dim or h_ct.module.dim != im.target_module.dim:
            raise DerivedError("internal: comparison bases disagree")
        if h_lift.dim:
            try:
                ModuleMorphism(h_lift, h_ct.module, im.morphism.mat, check=True)
            except Exception:
                equivariant = False
    return {
        "termwise": termwise,
        "les_nodes": nodes_star,
        "cone_les_nodes": nodes_star2,
        "cone_vs_tensor_iso": iso_by_degree,
        "comparison_equivariant": equivariant,
        "all_exact": all(e["left_exact"] and e["mid_exact"] and e["right_exact"]
                         for e in termwise)
        and all(x["exact"] for x in nodes_star)
        and all(x["exact"] for x in nodes_star2)
        and all(iso_by_degree.values())
        and equivariant,
    }


# -- derived Hom groups ----------------------------------------------------------


@dataclass(frozen=True)
class HomComplexData:
    """Total Hom complex Hom(P, Y) for P a projective resolution of X."""
    P: "Complex"
    paug: "ChainMap"
    Y: "Complex"
    degree: int
    dim: int
    basis_families: tuple          # each: dict degree -> ModuleMorphism P^i -> Y^(i+n)
    cocycle_rows: Mat              # all cocycles (rows, flattened coordinates)
    boundary_rows: Mat             # coboundaries inside them
    slot_info: tuple               # (i, hom_basis) per contributing degree


def _hom_slots(P: Complex, Y: Complex, n: int):
    from .linalg import echelon_pivots
    slots = []
    for i in P.support():
        target = Y.term(i + n)
        if P.term(i).dim == 0 or target.dim == 0:
            continue
        basis = hom_space(P.term(i), target)
        if basis:
            F = P.algebra.field
            flat = Mat(F, [tuple(x for r in b.mat.rows for x in r) for b in basis],
                       basis[0].mat.nrows * basis[0].mat.ncols)
            slots.append((i, basis, flat, echelon_pivots(flat)))
    return slots


def _family_to_vec(F, slots, fam) -> tuple:
    from .linalg import coordinates_in_echelon
    out = []
    for (i, basis, flat, piv) in slots:
        m = fam.get(i)
        if m is None:
            out.extend([F.zero] * len(basis))
        else:
            v = tuple(x for r in m.mat.rows for x in r)
            c = coordinates_in_echelon(flat, piv, v)
            if c is None:
                raise DerivedError("internal: family escapes the hom basis")
            out.extend(c)
    return tuple(out)


def _vec_to_family(F, slots, vec, P: Complex, Y: Complex, n: int) -> dict:
    fam = {}
    pos = 0
    for (i, basis, _flat, _piv) in slots:
        k = len(basis)
        coeffs = vec[pos:pos + k]
        pos += k
        acc = Mat.zero(F, P.term(i).dim, Y.term(i + n).dim)
        for c, b in zip(coeffs, basis):
            if c != F.zero:
                acc = acc + b.mat.scale(c)
        if not acc.is_zero():
            fam[i] = ModuleMorphism(P.term(i), Y.term(i + n), acc, check=False)
    return fam


def _hom_differential_vec(F, P, Y, n, slots_n, slots_n1, vec) -> tuple:
    """D(f)_i = f_i ; d_Y - (-1)^n d_P ; f_(i+1), flattened on degree n+1."""
    fam = _vec_to_family(F, slots_n, vec, P, Y, n)
    sign = F.one if n % 2 == 0 else F.neg(F.one)
    out_fam = {}
    for i in P.support():
        tgt = Y.term(i + n + 1)
        if P.term(i).dim == 0 or tgt.dim == 0:
            continue
        acc = Mat.zero(F, P.term(i).dim, tgt.dim)
        fi = fam.get(i)
        if fi is not None:
            acc = acc + fi.mat @ Y.diff(i + n).mat
        fi1 = fam.get(i + 1)
        if fi1 is not None:
            acc = acc - (P.diff(i).mat @ fi1.mat).scale(sign)
        if not acc.is_zero():
            out_fam[i] = ModuleMorphism(P.term(i), tgt, acc, check=False)
    return _family_to_vec(F, slots_n1, out_fam)


def derived_hom(X: Complex, Y: Complex, n: int,
                resolution=None) -> HomComplexData:
    """H^n of the total Hom complex from a projective resolution of X."""
    F = X.algebra.field
    if resolution is None:
        P, paug = projective_resolution_cx(X)
    else:
        P, paug = resolution
    slots_prev = _hom_slots(P, Y, n - 1)
    slots_n = _hom_slots(P, Y, n)
    slots_next = _hom_slots(P, Y, n + 1)
    dim_n = sum(len(b) for _, b, _f, _p in slots_n)
    if dim_n == 0:
        return HomComplexData(P, paug, Y, n, 0, (), Mat(F, [], 1), Mat(F, [], 1),
                              tuple(slots_n))
    # cocycles: kernel of D_n
    rows = []
    for i in range(dim_n):
        e = tuple(F.one if j == i else F.zero for j in range(dim_n))
        rows.append(_hom_differential_vec(F, P, Y, n, slots_n, slots_next, e))
    width_next = sum(len(b) for _, b, _f, _p in slots_next)
    Dn = Mat(F, rows, width_next) if width_next else Mat(F, rows, 0)
    ker_rows = left_kernel_basis(Dn) if width_next else \
        [tuple(F.one if j == i else F.zero for j in range(dim_n))
         for i in range(dim_n)]
    # boundaries: image of D_(n-1)
    dim_prev = sum(len(b) for _, b, _f, _p in slots_prev)
    b_rows = []
    for i in range(dim_prev):
        e = tuple(F.one if j == i else F.zero for j in range(dim_prev))
        b_rows.append(_hom_differential_vec(F, P, Y, n - 1, slots_prev, slots_n, e))
    ker = row_space_basis(Mat(F, ker_rows, dim_n)) if ker_rows else Mat(F, [], dim_n)
    bnd = row_space_basis(Mat(F, b_rows, dim_n)) if b_rows else Mat(F, [], dim_n)
    # class representatives extending the boundary space
    reps = []
    stacked = list(bnd.rows)
    cur = bnd.nrows
    for z in ker.rows:
        cand = stacked + [z]
        r = rank(Mat(F, cand, dim_n))
        if r > cur:
            reps.append(z)
            stacked = cand
            cur = r
    fams = tuple(_vec_to_family(F, slots_n, z, P, Y, n) for z in reps)
    return HomComplexData(P, paug, Y, n, len(reps), fams, ker, bnd, tuple(slots_n))


def derived_hom_dim(X: Complex, Y: Complex, n: int) -> int:
    return derived_hom(X, Y, n).dim


def hom_class_coordinates(data: HomComplexData, fam: dict) -> tuple:
    """Coordinates of a cocycle family's class in the representative basis."""
    F = data.P.algebra.field
    if data.dim == 0:
        vec = _family_to_vec(F, data.slot_info, fam)
        if any(x != F.zero for x in vec):
            # the class must be a boundary then
            if data.boundary_rows.nrows == 0 or coordinates_in_rowspace(
                    data.boundary_rows, vec) is None:
                raise DerivedError("class outside the trivial derived hom")
        return ()
    vec = _family_to_vec(F, data.slot_info, fam)
    rep_rows = [_family_to_vec(F, data.slot_info, f) for f in data.basis_families]
    basis_rows = rep_rows + list(data.boundary_rows.rows)
    sol = coordinates_in_rowspace(Mat(F, basis_rows, len(vec)), vec)
    if sol is None:
        raise DerivedError("family is not a cocycle class in this group")
    return tuple(sol[: data.dim])


# -- comparison lifts through injective resolutions --------------------------------


def lift_map_through_resolutions(P: Complex, comp: ChainMap,
                                 qX: ChainMap, iX: Complex, iY: Complex) -> ChainMap:
    """Find a chain map h : iX -> iY with (qX ; h) homotopic to comp, where
    comp : P -> iY and qX : P -> iX are given (P K-projective, iY K-injective;
    a solution exists and is found by one global linear solve)."""
    F = iX.algebra.field
    h_slots = []
    for m in iX.support():
        if iX.term(m).dim and iY.term(m).dim:
            basis = hom_space(iX.term(m), iY.term(m))
            if basis:
                h_slots.append((m, basis))
    s_slots = []
    for m in P.support():
        if P.term(m).dim and iY.term(m - 1).dim:
            basis = hom_space(P.term(m), iY.term(m - 1))
            if basis:
                s_slots.append((m, basis))
    nvars = sum(len(b) for _, b in h_slots) + sum(len(b) for _, b in s_slots)
    var_offsets = {}
    pos = 0
    for m, b in h_slots:
        var_offsets[("h", m)] = (pos, b)
        pos += len(b)
    for m, b in s_slots:
        var_offsets[("s", m)] = (pos, b)
        pos += len(b)

    eq_cols = []   # one column per scalar equation; rows are variables
    rhs = []

    def add_equations(coeff_map, const_mat, nrows, ncols):
        # coeff_map: var-key -> list of (basis_elt_matrix_factor_fn) realized
        # directly below as explicit matrices per basis element
        for r in range(nrows):
            for c in range(ncols):
                col = [F.zero] * nvars
                for key, mats in coeff_map.items():
                    off, basis = var_offsets[key]
                    for t, mat in enumerate(mats):
                        col[off + t] = F.add(col[off + t], mat.rows[r][c])
                eq_cols.append(tuple(col))
                rhs.append(const_mat.rows[r][c])

    # (a) chain-map equations: h^m d_iY - d_iX h^(m+1) = 0
    for m in range(iX.lo - 1, iX.hi + 1):
        nrows = iX.term(m).dim
        ncols = iY.term(m + 1).dim
        if nrows == 0 or ncols == 0:
            continue
        coeff = {}
        if ("h", m) in var_offsets:
            off, basis = var_offsets[("h", m)]
            coeff[("h", m)] = [b.mat @ iY.diff(m).mat for b in basis]
        if ("h", m + 1) in var_offsets:
            off, basis = var_offsets[("h", m + 1)]
            coeff[("h", m + 1)] = [-(iX.diff(m).mat @ b.mat) for b in basis]
        if coeff:
            add_equations(coeff, Mat.zero(F, nrows, ncols), nrows, ncols)
    # (b) homotopy equations: (qX ; h)^m - comp^m = s^m d_iY^(m-1) + d_P^m s^(m+1)
    for m in range(P.lo, P.hi + 1):
        nrows = P.term(m).dim
        ncols = iY.term(m).dim
        if nrows == 0 or ncols == 0:
            continue
        coeff = {}
        if ("h", m) in var_offsets:
            off, basis = var_offsets[("h", m)]
            coeff[("h", m)] = [qX.comp(m).mat @ b.mat for b in basis]
        if ("s", m) in var_offsets:
            off, basis = var_offsets[("s", m)]
            coeff[("s", m)] = [-(b.mat @ iY.diff(m - 1).mat) for b in basis]
        if ("s", m + 1) in var_offsets:
            off, basis = var_offsets[("s", m + 1)]
            coeff[("s", m + 1)] = [-(P.diff(m).mat @ b.mat) for b in basis]
        add_equations(coeff, comp.comp(m).mat, nrows, ncols)
    if not eq_cols:
        return make_chain_map(iX, iY, {}, check=True)
    # one row per scalar equation: solve E x = rhs for the variable vector x
    E = Mat(F, eq_cols, nvars)
    sol = solve_right(E, tuple(rhs))
    if sol is None:
        raise DerivedError("internal: comparison lift system is unsolvable")
    comps = {}
    for m, basis in h_slots:
        off, basis2 = var_offsets[("h", m)]
        acc = Mat.zero(F, iX.term(m).dim, iY.term(m).dim)
        for t, b in enumerate(basis2):
            c = sol[off + t]
            if c != F.zero:
                acc = acc + b.mat.scale(c)
        comps[m] = ModuleMorphism(iX.term(m), iY.term(m), acc, check=False)
    return make_chain_map(iX, iY, comps, check=True)


def shift_chain_map(f: ChainMap, k: int) -> ChainMap:
    """f[k] : X[k] -> Y[k] (componentwise reindexing; no signs needed)."""
    Xs = shift(f.source, k)
    Ys = shift(f.target, k)
    comps = {}
    for n in range(Xs.lo, Xs.hi + 1):
        comps[n] = ModuleMorphism(Xs.term(n), Ys.term(n), f.comp(n + k).mat,
                                  check=False)
    return make_chain_map(Xs, Ys, comps, check=True)


def family_as_chain_map(P: Complex, Y: Complex, n: int, fam: dict) -> ChainMap:
    """A degree-n Hom-complex cocycle family as a chain map P -> Y[n]."""
    Yn = shift(Y, n)
    comps = {}
    for i in P.support():
        m = fam.get(i)
        if m is not None:
            comps[i] = ModuleMorphism(P.term(i), Yn.term(i), m.mat, check=False)
    return make_chain_map(P, Yn, comps, check=True)


def rh_on_resolution_map(ctx, h: ChainMap, hims_src, lo_src: int,
                         hims_dst, lo_dst: int,
                         src_cx: Complex, dst_cx: Complex) -> ChainMap:
    """Hom(T, h) termwise for a map between termwise-injective complexes."""
    from .equivalence import H_on_morphism, H
    comps = {}
    for n in range(min(src_cx.lo, dst_cx.lo), max(src_cx.hi, dst_cx.hi) + 1):
        if src_cx.term(n).dim == 0 or dst_cx.term(n).dim == 0:
            comps[n] = ModuleMorphism.zero(src_cx.term(n), dst_cx.term(n))
            continue
        him_s = hims_src[n - lo_src]
        him_d = hims_dst[n - lo_dst]
        comps[n] = H_on_morphism(ctx, h.comp(n), him_s, him_d)
    return make_chain_map(src_cx, dst_cx, comps, check=True)


def fully_faithful_check(ctx, pairs, window) -> dict:
    """For pairs (X, Y) of bounded complexes over R and degrees in `window`:
    derived Hom dimensions agree with the S side and the induced map on the
    derived Hom groups is bijective."""
    entries = []
    for pi, (X, Y) in enumerate(pairs):
        PX, paugX = projective_resolution_cx(X)
        iX, augX = injective_resolution(X)
        iY, augY = injective_resolution(Y)
        rhX = RH_from_resolution(ctx, iX, augX)
        rhY = RH_from_resolution(ctx, iY, augY)
        PS, paugS = projective_resolution_cx(rhX.complex)
        qX = compose_chain_maps(paugX, augX)
        for n in window:
            dR = derived_hom(X, Y, n, resolution=(PX, paugX))
            dS = derived_hom(rhX.complex, rhY.complex, n, resolution=(PS, paugS))
            ok_dims = dR.dim == dS.dim
            bij = True
            if dR.dim:
                iYn = shift(iY, n)
                augYn = shift_chain_map(augY, n)
                rows = []
                for fam in dR.basis_families:
                    fcm = family_as_chain_map(PX, Y, n, fam)
                    comp_c = compose_chain_maps(fcm, augYn)
                    h = lift_map_through_resolutions(PX, comp_c, qX, iX, iYn)
                    rhYn = shift(rhY.complex, n)
                    Hh = rh_on_resolution_map(ctx, h, rhX.himages, iX.lo,
                                              rhY.himages, iY.lo - n,
                                              rhX.complex, rhYn)
                    comp_s = compose_chain_maps(paugS, Hh)
                    fam_s = {}
                    for i in PS.support():
                        m = comp_s.comp(i)
                        if not m.is_zero():
                            fam_s[i] = ModuleMorphism(PS.term(i),
                                                      rhY.complex.term(i + n),
                                                      m.mat, check=False)
                    rows.append(hom_class_coordinates(dS, fam_s))
                F = ctx.R.field
                induced = Mat(F, rows, dS.dim)
                bij = ok_dims and rank(induced) == dR.dim
            entries.append({"pair": pi, "degree": n, "dim_R": dR.dim,
                            "dim_S": dS.dim, "dims_match": ok_dims,
                            "bijective": bij})
    return {"entries": entries,
            "all_ok": all(e["dims_match"] and e["bijective"] for e in entries)}


# -- kernel of LG and the derived multiplicative system ------------------------------


def ker_LG_member(ctx, C: Complex) -> bool:
    """All cohomology of C (x)^L T vanishes."""
    lg = LG(ctx, C)
    rng = range(lg.complex.lo - 1, lg.complex.hi + 2)
    return all(cohomology(lg.complex, n).module.dim == 0 for n in rng)


def is_acyclic(X: Complex) -> bool:
    return all(cohomology(X, n).module.dim == 0
               for n in range(X.lo - 1, X.hi + 2))


def sigma_derived_member(ctx, f: ChainMap) -> bool:
    """LG(f) invertible in the derived category; cross-checked against the
    triangle characterization via the cone."""
    lg_src = LG(ctx, f.source)
    lg_dst = LG(ctx, f.target)
    lgf = LG_on_chain_map(ctx, f, lg_src, lg_dst)
    by_qiso = quasi_iso(lgf)
    cd = cone(f)
    by_cone = ker_LG_member(ctx, cd.complex)
    if by_qiso != by_cone:
        raise DerivedError(
            "inconsistency: LG(f) invertibility disagrees with cone membership")
    return by_qiso


def lg_cone_compare(ctx, f: ChainMap) -> bool:
    """LG(cone f) and cone(LG f) are isomorphic complexes via the block
    shuffle (one -1 on the X-Q1 block); the shuffle is verified to be an
    exact chain isomorphism."""
    U = cone(f)
    lgU = LG(ctx, U.complex)
    lgX = LG(ctx, f.source)
    lgY = LG(ctx, f.target)
    lgf = LG_on_chain_map(ctx, f, lgX, lgY)
    V = cone(lgf)
    F = ctx.S.field
    lo = min(lgU.complex.lo, V.complex.lo)
    hi = max(lgU.complex.hi, V.complex.hi)
    comps = {}
    for n in range(lo, hi + 1):
        src = lgU.complex.term(n)
        dst = V.complex.term(n)
        if src.dim != dst.dim:
            return False
        if src.dim == 0:
            continue
        mat = Mat.zero(F, src.dim, dst.dim)
        uprojs1 = U.projs.get(n + 1)
        uprojs0 = U.projs.get(n)
        lgU_projs = lgU.cone_data.projs.get(n)
        v_injs = V.injs.get(n)
        lgX_injs = lgX.cone_data.injs.get(n + 1)
        lgY_injs = lgY.cone_data.injs.get(n)
        # a-block (sign -1): U^(n+1) Q1-part -> X^(n+2) x Q1 -> LG(X)^(n+1) -> V
        if uprojs1 is not None and lgU_projs is not None and v_injs is not None \
                and lgX_injs is not None:
            tpU1 = _tp_at(lgU.tps1, lgU.source, ctx, ctx.Q1, n + 1)
            tpX1 = _tp_at(lgX.tps1, f.source, ctx, ctx.Q1, n + 2)
            if tpU1.module.dim and tpX1.module.dim:
                a_split = tensor_on_left_morphism(tpU1, tpX1, uprojs1[0])
                mat = mat - (lgU_projs[0].mat @ a_split.mat
                             @ lgX_injs[0].mat @ v_injs[0].mat)
        # b-block: U^(n+1) Q1-part -> Y^(n+1) x Q1 -> LG(Y)^n -> V
        if uprojs1 is not None and lgU_projs is not None and v_injs is not None \
                and lgY_injs is not None:
            tpU1 = _tp_at(lgU.tps1, lgU.source, ctx, ctx.Q1, n + 1)
            tpY1 = _tp_at(lgY.tps1, f.target, ctx, ctx.Q1, n + 1)
            if tpU1.module.dim and tpY1.module.dim:
                b_split = tensor_on_left_morphism(tpU1, tpY1, uprojs1[1])
                mat = mat + (lgU_projs[0].mat @ b_split.mat
                             @ lgY_injs[0].mat @ v_injs[1].mat)
        # c-block: U^n Q0-part -> X^(n+1) x Q0 -> LG(X)^(n+1) -> V
        if uprojs0 is not None and lgU_projs is not None and v_injs is not None \
                and lgX_injs is not None:
            tpU0 = _tp_at(lgU.tps0, lgU.source, ctx, ctx.Q0, n)
            tpX0 = _tp_at(lgX.tps0, f.source, ctx, ctx.Q0, n + 1)
            if tpU0.module.dim and tpX0.module.dim:
                c_split = tensor_on_left_morphism(tpU0, tpX0, uprojs0[0])
                mat = mat + (lgU_projs[1].mat @ c_split.mat
                             @ lgX_injs[1].mat @ v_injs[0].mat)
        # d-block: U^n Q0-part -> Y^n x Q0 -> LG(Y)^n -> V
        if uprojs0 is not None and lgU_projs is not None and v_injs is not None \
                and lgY_injs is not None:
            tpU0 = _tp_at(lgU.tps0, lgU.source, ctx, ctx.Q0, n)
            tpY0 = _tp_at(lgY.tps0, f.target, ctx, ctx.Q0, n)
            if tpU0.module.dim and tpY0.module.dim:
                d_split = tensor_on_left_morphism(tpU0, tpY0, uprojs0[1])
                mat = mat + (lgU_projs[1].mat @ d_split.mat
                             @ lgY_injs[1].mat @ v_injs[1].mat)
        comps[n] = ModuleMorphism(src, dst, mat, check=False)
    shuffle = make_chain_map(lgU.complex, V.complex, comps, check=True)
    return quasi_iso(shuffle) and all(
        comps[n].is_iso() for n in comps if comps[n].source.dim)


# -- random bounded complexes -------------------------------------------------------


def random_bounded_complex(pool, rng, algebra, max_len: int = 4,
                           max_term_dim: int = 8) -> Complex:
    """Seeded random bounded complex with terms summed from the pool and
    exact differentials (each picked inside the d-squared-zero solution
    space)."""
    from .modules import direct_sum as dsum
    L = rng.randint(1, max_len)
    lo = rng.randint(-2, 0)
    terms = []
    for _ in range(L):
        picks = []
        budget = max_term_dim
        for _ in range(rng.randint(0, 2)):
            cand = pool[rng.randrange(len(pool))]
            if cand.dim and cand.dim <= budget:
                picks.append(cand)
                budget -= cand.dim
        if picks:
            terms.append(dsum(picks)[0])
        else:
            terms.append(zero_module(algebra))
    diffs = []
    F = algebra.field
    prev = None
    for i in range(L - 1):
        src, dst = terms[i], terms[i + 1]
        basis = hom_space(src, dst) if src.dim and dst.dim else ()
        if basis and prev is not None and not prev.is_zero():
            # restrict to maps with prev ; g = 0
            good = []
            stack_rows = []
            for b in basis:
                stack_rows.append(tuple(x for r in (prev.mat @ b.mat).rows
                                        for x in r))
            K = left_kernel_basis(Mat(F, stack_rows, prev.mat.nrows * dst.dim)) \
                if stack_rows else []
            combos = K
            if combos:
                coeffs = combos[rng.randrange(len(combos))]
                acc = Mat.zero(F, src.dim, dst.dim)
                for c, b in zip(coeffs, basis):
                    if c != F.zero:
                        acc = acc + b.mat.scale(c)
                d = ModuleMorphism(src, dst, acc, check=False)
            else:
                d = ModuleMorphism.zero(src, dst)
        elif basis:
            coeffs = [F.of_int(rng.randint(-2, 2)) for _ in basis]
            acc = Mat.zero(F, src.dim, dst.dim)
            for c, b in zip(coeffs, basis):
                if c != F.zero:
                    acc = acc + b.mat.scale(c)
            d = ModuleMorphism(src, dst, acc, check=False)
        else:
            d = ModuleMorphism.zero(src, dst)
        diffs.append(d)
        prev = d
    return make_complex(algebra, lo, terms, diffs, check=True)
