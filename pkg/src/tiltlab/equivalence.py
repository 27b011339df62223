"""The equivalence engine around a tilting module T over R with S = End(T):

    H = Hom(T, -) : Mod-R -> Mod-S        G = - (x)_S T : Mod-S -> Mod-R
    E1 = Ext^1(T, -)                      T1 = Tor_1^S(-, T)

together with the natural maps (counit, unit, xi, theta), the class
predicates for the torsion pairs on both sides and the perpendicular
classes, the theorem round-trip verification, and the left-fraction (Ore)
witnesses.

Everything is built on the two-term projective presentation of T as a left
S-module obtained by applying Hom(-, T) to the coresolution of R; its terms
are honest S-R-bimodules (right action on values), so all tensor complexes
carry strict right R-structures.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebras import Algebra
from .homology import (
    Bimodule, ExtGroup, ext1, ext1_dim, ext2_dim, id_le_1, minimal_presentation,
    tensor_on_left_morphism, tensor_over, tor1_via_two_term, TensorProduct,
    duality, injective_cogenerator,
)
from .linalg import Mat, coordinates_in_rowspace, rank, row_space_basis, vec_matmul
from .modules import (
    ModuleError, ModuleMorphism, RightModule, direct_sum, hom_dim, hom_space,
    indecomposable_summands, is_isomorphic, reject_of, regular_module, _flatten,
)
from .tilting import TiltingCertificate, is_tilting


class ContextError(ValueError):
    pass


@dataclass(frozen=True)
class TiltingContext:
    """Everything derived from a tilting module T over R.

    Q0 = Hom(T0, T) and Q1 = Hom(T1, T) are left S-modules (stored as right
    modules over S.opposite()); they carry no strict right R-structure --
    right multiplication on T by r only lifts to left-S endomorphisms
    lam0/lam1 of the presentation, and those lifts induce the R-actions on
    tensor cohomology (Tor and the derived tensor).
    """
    R: Algebra
    T: RightModule
    certificate: TiltingCertificate
    S: Algebra
    end_basis: tuple[ModuleMorphism, ...]   # basis of End(T) realizing S
    bimT: Bimodule                           # T as an S-R-bimodule (strict)
    T_left: RightModule                      # T's left S-structure (over S^op)
    Q0_left: RightModule                     # Hom(T0, T) as left S-module
    Q1_left: RightModule                     # Hom(T1, T) as left S-module
    Q0: Bimodule                             # Q0 with the trivial base-field right leg
    Q1: Bimodule                             # Q1 with the trivial base-field right leg
    delta: ModuleMorphism                    # Q1 -> Q0, left-S morphism
    eps: ModuleMorphism                      # Q0 -> T, left-S morphism
    lifts0: tuple[Mat, ...]                  # lam0(r) per R-basis element
    lifts1: tuple[Mat, ...]                  # lam1(r) per R-basis element
    Td: RightModule                          # dual of T as a right S-module

    def s_element_matrix(self, coords) -> Mat:
        F = self.S.field
        acc = Mat.zero(F, self.T.dim, self.T.dim)
        for c, b in zip(coords, self.end_basis):
            if c != F.zero:
                acc = acc + b.mat.scale(c)
        return acc


def _hom_left_module(ctx_T: RightModule, source: RightModule, S: Algebra,
                     end_basis) -> tuple[RightModule, tuple[ModuleMorphism, ...]]:
    """Hom(source, T) as a left S-module (postcomposition), stored as a
    right module over S.opposite()."""
    from .linalg import coordinates_in_echelon, echelon_pivots
    homs = hom_space(source, ctx_T)
    F = S.field
    n = len(homs)
    ncols = source.dim * ctx_T.dim
    flat = Mat(F, [_flatten(h.mat) for h in homs], ncols)
    piv = echelon_pivots(flat)

    def coords_of(mat: Mat):
        c = coordinates_in_echelon(flat, piv, _flatten(mat))
        if c is None:
            raise ContextError("internal: hom space is not closed")
        return c

    left_actions = []
    for s_idx in range(S.dim):
        Fs = end_basis[s_idx].mat
        rows = [coords_of(h.mat @ Fs) for h in homs]
        left_actions.append(Mat(F, rows, n))
    left_mod = RightModule(S.opposite(), left_actions, check=True)
    return left_mod, homs


def build_context(T: RightModule, bound: int | None = None, seed: int = 0,
                  certificate: TiltingCertificate | None = None) -> TiltingContext:
    """Assemble the full tilting context; verifies exactness of the induced
    two-term presentation and the endomorphism double-centralizer map."""
    from .homology import end_algebra
    R = T.algebra
    if certificate is None:
        res = is_tilting(T, bound=bound, seed=seed)
        if res.status == "undecided":
            raise ContextError("tilting status undecided: " + "; ".join(res.failures))
        if res.status != "tilting":
            raise ContextError("module is not tilting: " + "; ".join(res.failures))
        certificate = res.certificate
    from .homology import lift_endomorphism_through_cover, \
        restrict_through_injection, trivial_right_bimodule
    S, end_basis, bimT = end_algebra(T)
    cor = certificate.coresolution
    Q0_left, Q0_homs = _hom_left_module(T, cor.T0, S, end_basis)
    Q1_left, Q1_homs = _hom_left_module(T, cor.T1, S, end_basis)
    F = S.field
    # delta: precompose with pi ;  Hom(T1,T) -> Hom(T0,T)
    ncols0 = cor.T0.dim * T.dim
    flat0 = Mat(F, [_flatten(h.mat) for h in Q0_homs], ncols0)
    drows = []
    for h in Q1_homs:
        c = coordinates_in_rowspace(flat0, _flatten(cor.pi.mat @ h.mat))
        if c is None:
            raise ContextError("internal: delta image escapes Hom(T0, T)")
        drows.append(c)
    delta = ModuleMorphism(Q1_left, Q0_left, Mat(F, drows, len(Q0_homs)),
                           check=True)
    # eps: evaluate at w = mu(1)
    w = cor.mu(tuple(R.unit))
    T_left = bimT.as_left_module()
    erows = [vec_matmul(w, h.mat) for h in Q0_homs]
    eps = ModuleMorphism(Q0_left, T_left, Mat(F, erows, T.dim), check=True)
    # exactness of 0 -> Q1 -> Q0 -> T -> 0
    if rank(delta.mat) != len(Q1_homs):
        raise ContextError("presentation: delta is not injective")
    if not eps.is_surjective():
        raise ContextError("presentation: eps is not surjective")
    from .linalg import left_kernel_basis
    ker = left_kernel_basis(eps.mat)
    ker_span = row_space_basis(Mat(F, ker, len(Q0_homs))) if ker else Mat(F, [], len(Q0_homs))
    if ker_span != row_space_basis(delta.mat):
        raise ContextError("presentation: im(delta) differs from ker(eps)")
    _check_projective_left(S, Q0_left)
    _check_projective_left(S, Q1_left)
    _check_double_centralizer(R, bimT)
    # chain lifts of right multiplication through the presentation: these
    # induce every right R-structure on the tensor side
    lifts0 = []
    lifts1 = []
    for r_idx in range(R.dim):
        rho = T.actions[r_idx]    # left-S-linear endomorphism of T_left
        lam0 = lift_endomorphism_through_cover(eps, rho)
        lam1 = restrict_through_injection(delta, lam0)
        lifts0.append(lam0)
        lifts1.append(lam1)
    Q0_bim = trivial_right_bimodule(Q0_left, S)
    Q1_bim = trivial_right_bimodule(Q1_left, S)
    Td = RightModule(S, [b.mat.transpose() for b in end_basis], check=True)
    return TiltingContext(R, T, certificate, S, tuple(end_basis), bimT, T_left,
                          Q0_left, Q1_left, Q0_bim, Q1_bim, delta, eps,
                          tuple(lifts0), tuple(lifts1), Td)


def _check_projective_left(S: Algebra, left: RightModule):
    """The left structure must be projective: all indecomposable summands
    occur in the left regular module."""
    if left.dim == 0:
        return
    reg = regular_module(S.opposite())
    reg_parts = [s.module for s in indecomposable_summands(reg)]
    for s in indecomposable_summands(left):
        if not any(is_isomorphic(s.module, p).status == "iso" for p in reg_parts):
            raise ContextError("presentation term is not projective over S")


def _check_double_centralizer(R: Algebra, bimT: Bimodule):
    """The canonical map R -> End of T's left S-structure (r acting by right
    multiplication) must be bijective."""
    T_left = bimT.as_left_module()
    endos = hom_space(T_left, T_left)
    if len(endos) != R.dim:
        raise ContextError(
            f"double centralizer fails: dim End = {len(endos)} vs dim R = {R.dim}")
    F = R.field
    rho_rows = [_flatten(a) for a in bimT.carrier.actions]
    if rank(Mat(F, rho_rows, T_left.dim * T_left.dim)) != R.dim:
        raise ContextError("double centralizer fails: R does not embed")


# -- the four functors ---------------------------------------------------------


@dataclass(frozen=True)
class HImage:
    module: RightModule                  # over S
    basis: tuple[ModuleMorphism, ...]    # maps T -> M realizing the basis


@lru_cache(maxsize=None)
def H(ctx: TiltingContext, M: RightModule) -> HImage:
    """Hom(T, M) as a right S-module (S acts by precomposition)."""
    from .linalg import coordinates_in_echelon, echelon_pivots
    homs = hom_space(ctx.T, M)
    F = ctx.S.field
    n = len(homs)
    if n == 0:
        from .modules import zero_module
        return HImage(zero_module(ctx.S), ())
    ncols = ctx.T.dim * M.dim
    flat = Mat(F, [_flatten(h.mat) for h in homs], ncols)
    piv = echelon_pivots(flat)
    actions = []
    for s_idx in range(ctx.S.dim):
        Fs = ctx.end_basis[s_idx].mat
        rows = []
        for h in homs:
            c = coordinates_in_echelon(flat, piv, _flatten(Fs @ h.mat))
            if c is None:
                raise ContextError("internal: H action escaped the hom space")
            rows.append(c)
        actions.append(Mat(F, rows, n))
    return HImage(RightModule(ctx.S, actions, check=True), tuple(homs))


def H_on_morphism(ctx: TiltingContext, f: ModuleMorphism,
                  src: HImage, dst: HImage) -> ModuleMorphism:
    """Hom(T, f): postcompose with f."""
    from .linalg import coordinates_in_echelon, echelon_pivots
    F = ctx.S.field
    if not dst.basis:
        return ModuleMorphism.zero(src.module, dst.module)
    ncols = ctx.T.dim * f.target.dim
    flat = Mat(F, [_flatten(h.mat) for h in dst.basis], ncols)
    piv = echelon_pivots(flat)
    rows = []
    for h in src.basis:
        c = coordinates_in_echelon(flat, piv, _flatten(h.mat @ f.mat))
        if c is None:
            raise ContextError("internal: H(f) escaped the hom space")
        rows.append(c)
    return ModuleMorphism(src.module, dst.module,
                          Mat(F, rows, len(dst.basis)), check=False)


@lru_cache(maxsize=None)
def G(ctx: TiltingContext, N: RightModule) -> TensorProduct:
    """N (x)_S T as a right R-module."""
    return tensor_over(ctx.S, N, ctx.bimT, check=True)


def G_on_morphism(ctx: TiltingContext, u: ModuleMorphism) -> ModuleMorphism:
    return tensor_on_left_morphism(G(ctx, u.source), G(ctx, u.target), u)


@dataclass(frozen=True)
class E1Image:
    module: RightModule        # over S
    ext: ExtGroup


@lru_cache(maxsize=None)
def E1(ctx: TiltingContext, M: RightModule) -> E1Image:
    """Ext^1(T, M) as a right S-module (functorial precomposition action)."""
    e = ext1(ctx.T, M)
    F = ctx.S.field
    n = e.dim
    pres = e.presentation
    if n == 0:
        from .modules import zero_module
        return E1Image(zero_module(ctx.S), e)
    # lift each S-basis endomorphism through the cover and restrict to the syzygy
    actions = []
    from .homology import lift_endomorphism_through_cover, restrict_through_injection
    for s_idx in range(ctx.S.dim):
        Fs = ctx.end_basis[s_idx].mat
        lam0 = lift_endomorphism_through_cover(pres.epi, Fs)
        omega = restrict_through_injection(pres.incl, lam0)
        rows = []
        for rep in e.cocycles:
            moved = omega @ rep.mat
            rows.append(e.cocycle_class_coords(
                ModuleMorphism(pres.syz, M, moved, check=False)))
        actions.append(Mat(F, rows, n))
    return E1Image(RightModule(ctx.S, actions, check=True), e)


@dataclass(frozen=True)
class T1Image:
    module: RightModule          # over R (kernel carrier as R-module)
    inclusion: ModuleMorphism    # into N (x) Q1
    NQ1: TensorProduct
    NQ0: TensorProduct
    induced: ModuleMorphism


@lru_cache(maxsize=None)
def T1(ctx: TiltingContext, N: RightModule) -> T1Image:
    """Tor_1^S(N, T) = ker(N (x) Q1 -> N (x) Q0); the right R-action comes
    from the context's chain lifts of right multiplication."""
    from .modules import zero_module
    tor_k, NQ1, NQ0, induced, incl = tor1_via_two_term(
        ctx.S, N, ctx.Q1, ctx.Q0, ctx.delta)
    F = ctx.S.field
    if tor_k.dim == 0:
        return T1Image(zero_module(ctx.R), incl, NQ1, NQ0, induced)
    dn = N.dim
    d1 = ctx.Q1_left.dim
    actions = []
    for r_idx in range(ctx.R.dim):
        lam1 = ctx.lifts1[r_idx]
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
        from .linalg import coordinates_in_echelon, echelon_pivots
        piv = echelon_pivots(incl.mat)
        rows = []
        for r in (incl.mat @ on_nq1).rows:
            coords = coordinates_in_echelon(incl.mat, piv, r)
            if coords is None:
                raise ContextError("internal: lifted action does not preserve Tor")
            rows.append(coords)
        actions.append(Mat(F, rows, tor_k.dim))
    module = RightModule(ctx.R, actions, check=True)
    return T1Image(module, incl, NQ1, NQ0, induced)


# -- natural maps ---------------------------------------------------------------


@dataclass(frozen=True)
class NaturalMapRecord:
    kind: str                    # "counit" | "unit" | "xi" | "theta"
    source: RightModule
    target: RightModule
    morphism: ModuleMorphism | None
    is_iso: bool
    note: str = ""


def counit(ctx: TiltingContext, M: RightModule) -> NaturalMapRecord:
    """Evaluation H(M) (x)_S T -> M."""
    him = H(ctx, M)
    tp = tensor_over(ctx.S, him.module, ctx.bimT, check=False)
    F = ctx.R.field
    dT = ctx.T.dim
    plain_rows = []
    for h in him.basis:
        plain_rows.extend(h.mat.rows)         # row (j, k) = h_j(e_k)
    if not plain_rows:
        plain = Mat(F, [], M.dim)
    else:
        plain = Mat(F, plain_rows, M.dim)
    mat = tp.space.lift @ plain
    phi = ModuleMorphism(tp.module, M, mat, check=True)
    # well-definedness: the plain map must factor through the quotient
    if tp.space.proj @ mat != plain:
        raise ContextError("internal: counit does not respect tensor relations")
    return NaturalMapRecord("counit", tp.module, M, phi, phi.is_iso())


def unit(ctx: TiltingContext, N: RightModule) -> NaturalMapRecord:
    """N -> Hom(T, N (x)_S T)."""
    tp = G(ctx, N)
    him = H(ctx, tp.module)
    F = ctx.S.field
    if not him.basis:
        eta = ModuleMorphism.zero(N, him.module)
        return NaturalMapRecord("unit", N, him.module, eta,
                                N.dim == 0)
    ncols = ctx.T.dim * tp.module.dim
    flat = Mat(F, [_flatten(h.mat) for h in him.basis], ncols)
    rows = []
    for i in range(N.dim):
        img_rows = []
        for k in range(ctx.T.dim):
            idx = i * ctx.T.dim + k
            img_rows.append(tuple(tp.space.proj.rows[idx]))
        cand = Mat(F, img_rows, tp.module.dim)
        c = coordinates_in_rowspace(flat, _flatten(cand))
        if c is None:
            raise ContextError("internal: unit image is not a morphism")
        rows.append(c)
    eta = ModuleMorphism(N, him.module, Mat(F, rows, len(him.basis)), check=True)
    return NaturalMapRecord("unit", N, him.module, eta, eta.is_iso())


def xi(ctx: TiltingContext, M: RightModule) -> NaturalMapRecord:
    """Degree-0 cohomology component of the derived counit on M[0]; the
    classical comparison Tor_1(Ext^1(T, M), T) -> M when Hom(T, M) = 0."""
    from .derived import one_term_complex, derived_counit, cohomology_induced_map
    X = one_term_complex(M)
    dc = derived_counit(ctx, X)
    h0 = cohomology_induced_map(dc.chain_map, 0)
    flag = hom_dim(ctx.T, M) == 0 and h0.is_iso
    return NaturalMapRecord("xi", h0.source_module, h0.target_module,
                            h0.morphism, flag,
                            note="iso flag requires the torsion-free side")


def theta(ctx: TiltingContext, N: RightModule) -> NaturalMapRecord:
    """Degree-0 cohomology component of the derived unit on N[0]; the
    classical comparison N -> Ext^1(T, Tor_1(N, T)) when N (x) T = 0."""
    from .derived import one_term_complex, derived_unit, cohomology_induced_map
    C = one_term_complex(N)
    du = derived_unit(ctx, C)
    h0 = cohomology_induced_map(du.chain_map, 0)
    flag = G(ctx, N).module.dim == 0 and h0.is_iso
    return NaturalMapRecord("theta", h0.source_module, h0.target_module,
                            h0.morphism, flag,
                            note="iso flag requires vanishing tensor image")


# -- class predicates -------------------------------------------------------------


@dataclass
class ClassPredicates:
    ctx: TiltingContext
    e_dimension_cap: int
    e_members: tuple[RightModule, ...]   # nonzero members found up to the cap

    def in_T(self, M: RightModule) -> bool:
        return ext1_dim(self.ctx.T, M) == 0

    def in_F(self, M: RightModule) -> bool:
        return hom_dim(self.ctx.T, M) == 0

    def in_TTd(self, N: RightModule) -> bool:
        by_hom = hom_dim(N, self.ctx.Td) == 0
        by_tensor = G(self.ctx, N).module.dim == 0
        if by_hom != by_tensor:
            raise ContextError(
                "class characterizations disagree: Hom(N, Td) = 0 vs N (x) T = 0")
        return by_hom

    def in_FTd(self, N: RightModule) -> bool:
        return reject_of(self.ctx.Td, N)[0].dim == 0

    def in_E(self, N: RightModule) -> bool:
        by_tensor = (G(self.ctx, N).module.dim == 0
                     and T1(self.ctx, N).module.dim == 0)
        by_perp = (hom_dim(N, self.ctx.Td) == 0
                   and ext1_dim(N, self.ctx.Td) == 0)
        if by_tensor != by_perp:
            raise ContextError(
                "left-perpendicular characterizations of the kernel class disagree")
        return by_tensor

    def in_M_sampled(self, N: RightModule) -> bool:
        """Right-perpendicularity to every enumerated kernel-class member,
        in Ext degrees 1 and 2 (degree 2 via a syzygy step); degrees beyond
        2 are untested and recorded as such by the reporting layer."""
        for Emod in self.e_members:
            if hom_dim(Emod, N) != 0 or ext1_dim(Emod, N) != 0 \
                    or ext2_dim(Emod, N) != 0:
                return False
        return True

    def in_Y(self, N: RightModule) -> bool:
        return unit(self.ctx, N).is_iso

    def in_X(self, N: RightModule) -> bool:
        return theta(self.ctx, N).is_iso


def class_predicates(ctx: TiltingContext, s_probes: list[RightModule],
                     dim_cap: int) -> ClassPredicates:
    """Predicates bundle; kernel-class members are collected from the probe
    list up to the dimension cap (at this scale the sweep finds none)."""
    pred = ClassPredicates(ctx, dim_cap, ())
    members = []
    for N in s_probes:
        if 0 < N.dim <= dim_cap and pred.in_E(N):
            members.append(N)
    pred.e_members = tuple(members)
    return pred


# -- theorem verification -----------------------------------------------------------


def verify_theorem(ctx: TiltingContext, probes_R: list[RightModule],
                   probes_S: list[RightModule], dim_cap: int = 12) -> dict:
    """Round-trip and image-class verification of the two equivalences."""
    pred = class_predicates(ctx, probes_S, dim_cap)
    entries = []
    failures = []

    def record(check, ok, detail=""):
        entries.append({"check": check, "ok": bool(ok), "detail": detail})
        if not ok:
            failures.append(check + (f": {detail}" if detail else ""))

    for i, M in enumerate(probes_R):
        him = H(ctx, M)
        record(f"H image in Y [probe {i}]",
               pred.in_FTd(him.module) and pred.in_M_sampled(him.module))
        cm = counit(ctx, M)
        record(f"counit iso iff torsion [probe {i}]",
               cm.is_iso == pred.in_T(M))
        record(f"Tor1 of H vanishes [probe {i}]",
               T1(ctx, him.module).module.dim == 0)
        e1m = E1(ctx, M)
        record(f"Ext image in X-class [probe {i}]",
               pred.in_TTd(e1m.module) and pred.in_M_sampled(e1m.module))
        if pred.in_T(M):
            record(f"G(H(M)) ~ M via counit [probe {i}]", cm.is_iso)
        if pred.in_F(M):
            xm = xi(ctx, M)
            record(f"xi iso on torsion-free [probe {i}]", xm.is_iso)
            record(f"Tor1(Ext1(M)) ~ M dims [probe {i}]",
                   T1(ctx, e1m.module).module.dim == M.dim)
    for j, N in enumerate(probes_S):
        tpN = G(ctx, N)
        record(f"G image in torsion class [probe {j}]", pred.in_T(tpN.module))
        un = unit(ctx, N)
        in_Y = pred.in_FTd(N) and pred.in_M_sampled(N)
        record(f"unit iso iff Y membership [probe {j}]", un.is_iso == in_Y)
        t1n = T1(ctx, N)
        record(f"Tor image torsion-free [probe {j}]", pred.in_F(t1n.module))
        th = theta(ctx, N)
        in_X = pred.in_TTd(N) and pred.in_M_sampled(N)
        record(f"theta iso iff X membership [probe {j}]", th.is_iso == in_X)
        # triangle identities (exact)
        record(f"triangle identity on G [probe {j}]",
               _triangle_G(ctx, N))
        record(f"triangle identity on H side [probe {j}]",
               _triangle_H(ctx, N))
    return {"entries": entries, "failures": failures,
            "e_members_found": len(pred.e_members), "e_dim_cap": dim_cap}


def _triangle_G(ctx: TiltingContext, N: RightModule) -> bool:
    """counit at G(N) composed with G(unit at N) is the identity of G(N)."""
    eta = unit(ctx, N)
    Geta = G_on_morphism(ctx, eta.morphism)
    cm = counit(ctx, G(ctx, N).module)
    comp = Geta.then(cm.morphism)
    return comp.mat == Mat.identity(ctx.R.field, G(ctx, N).module.dim)


def _triangle_H(ctx: TiltingContext, N: RightModule) -> bool:
    """H(counit at M) composed after unit at H(M) is the identity, taking
    M = G(N) so both sides are computable on the S side."""
    M = G(ctx, N).module
    him = H(ctx, M)
    eta = unit(ctx, him.module)
    cm = counit(ctx, M)
    Hcm = H_on_morphism(ctx, cm.morphism, H(ctx, cm.morphism.source), him)
    comp = eta.morphism.then(Hcm)
    return comp.mat == Mat.identity(ctx.S.field, him.module.dim)


# -- Ore / left fraction witnesses ----------------------------------------------------


def sigma_member(ctx: TiltingContext, u: ModuleMorphism) -> bool:
    """u is in the multiplicative system when u (x) 1_T is invertible."""
    return G_on_morphism(ctx, u).is_iso()


def ore_left_completion(ctx: TiltingContext, s: ModuleMorphism, f: ModuleMorphism):
    """Given s : X -> Y in Sigma and f : X -> Z, produce t : Z -> W in Sigma
    and g : Y -> W with g s = t f (constructed through the adjunction)."""
    if not sigma_member(ctx, s):
        raise ModuleError("s is not in the multiplicative system")
    if s.source != f.source:
        raise ModuleError("span legs must share their source")
    Z = f.target
    Y = s.target
    t_rec = unit(ctx, Z)
    t = t_rec.morphism
    hgY = H(ctx, G(ctx, Y).module)
    hgZ = H(ctx, G(ctx, Z).module)
    Gf = G_on_morphism(ctx, f)
    Gs = G_on_morphism(ctx, s)
    HGf = H_on_morphism(ctx, Gf, H(ctx, G(ctx, f.source).module), hgZ)
    HGs = H_on_morphism(ctx, Gs, H(ctx, G(ctx, s.source).module), hgY)
    from .linalg import inverse
    inv = inverse(HGs.mat)
    if inv is None:
        raise ModuleError("internal: H(G(s)) is not invertible for s in Sigma")
    etaY = unit(ctx, Y).morphism
    g = ModuleMorphism(Y, hgZ.module, etaY.mat @ inv @ HGf.mat, check=True)
    if s.then(g).mat != f.then(t).mat:
        raise ModuleError("internal: left-fraction completion equation fails")
    if not sigma_member(ctx, t):
        raise ModuleError("internal: completion leg is not in Sigma")
    return t, g


def ore_equalizer(ctx: TiltingContext, s: ModuleMorphism, f: ModuleMorphism,
                  g: ModuleMorphism):
    """Given s in Sigma with f s = g s, produce t in Sigma with t f = t g."""
    if not sigma_member(ctx, s):
        raise ModuleError("s is not in the multiplicative system")
    if s.then(f).mat != s.then(g).mat:
        raise ModuleError("precondition f s = g s fails")
    Z = f.target
    t = unit(ctx, Z).morphism
    if f.then(t).mat != g.then(t).mat:
        raise ModuleError("internal: equalizing leg fails its equation")
    if not sigma_member(ctx, t):
        raise ModuleError("internal: equalizing leg is not in Sigma")
    return t


# -- the dual module and partial cotilting -----------------------------------------


def dual_module(ctx: TiltingContext) -> RightModule:
    """T^d with its right S-action (precomposition, transposed)."""
    return ctx.Td


def dual_module_regression(ctx: TiltingContext) -> bool:
    """T^d agrees with Hom(T, W) as a right S-module (W the injective
    cogenerator); the runtime definition is the direct transpose."""
    W = injective_cogenerator(ctx.R)
    hw = H(ctx, W)
    return is_isomorphic(ctx.Td, hw.module).status == "iso"


def partial_cotilting_check(ctx: TiltingContext) -> dict:
    """The three finite clauses for T^d over S, plus the duality identity."""
    Td = ctx.Td
    checks = {}
    checks["injective_dimension_le_1"] = id_le_1(Td)
    tor_td = T1(ctx, Td).module.dim
    selfext_left = ext1_dim(ctx.T_left, ctx.T_left)
    checks["tor_Td_T_vanishes"] = tor_td == 0
    checks["dual_identity_ext_left_vanishes"] = selfext_left == 0
    checks["selfext_Td_vanishes"] = ext1_dim(Td, Td) == 0
    checks["product_clause_note"] = (
        "direct-product closure reduced to finite products at this scale")
    return checks


def ext_tor_duality_identity(ctx: TiltingContext, N: RightModule) -> bool:
    """dim Ext^1_S(N, T^d) equals dim Tor_1^S(N, T)."""
    return ext1_dim(N, ctx.Td) == T1(ctx, N).module.dim
