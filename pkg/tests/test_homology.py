import pytest

from tiltlab.linalg import GF, QQ, Mat
from tiltlab.algebras import base_field_algebra, build_path_algebra, dual_numbers, \
    linear_quiver
from tiltlab.modules import (
    ModuleMorphism, RightModule, direct_sum, hom_dim, indecomposable_summands,
    is_isomorphic, module_from_quiver_data, regular_module, simple_at_vertex,
    zero_module, kernel_submodule, span_submodule, submodule,
)
from tiltlab.homology import (
    Bimodule, Presentation, duality, end_algebra, ext1, ext1_dim, ext2_dim,
    extension_module, injective_cogenerator, injective_hull, is_injective,
    is_projective, id_le_1, lift_endomorphism_through_cover, minimal_presentation,
    pd_le_1, projective_cover, projective_indecomposables, regular_bimodule,
    restrict_through_injection, syzygy, tensor_over, top, tor1_via_two_term,
    tor1_with_lifted_action, trivial_right_bimodule,
)
from tiltlab.oracles import oracle_ext_dim, oracle_hom_dim, oracle_tensor_dim, \
    oracle_tor1_dim


@pytest.fixture(scope="module")
def a2():
    return build_path_algebra(QQ, linear_quiver(2))


@pytest.fixture(scope="module")
def mods(a2):
    P1 = module_from_quiver_data(a2, [1, 1], {"a1": Mat.from_int_rows(QQ, [[1]])})
    P2 = simple_at_vertex(a2, 1)
    S1 = simple_at_vertex(a2, 0)
    return P1, P2, S1


def test_projective_indecomposables_a2(a2):
    pdata = projective_indecomposables(a2.algebra)
    assert sorted(m.dim for m in pdata.modules) == [1, 2]
    assert sorted(s.dim for s in pdata.simples) == [1, 1]


def test_projective_indecomposables_base_field():
    A = base_field_algebra(QQ)
    pdata = projective_indecomposables(A)
    assert [m.dim for m in pdata.modules] == [1]


def test_projective_indecomposables_dual_numbers():
    pa = dual_numbers(QQ)
    pdata = projective_indecomposables(pa.algebra)
    assert [m.dim for m in pdata.modules] == [2]


def test_top_and_cover_s1(a2, mods):
    P1, P2, S1 = mods
    t, _ = top(P1)
    assert t.dim == 1
    P, h = projective_cover(S1)
    assert is_isomorphic(P, P1).status == "iso"
    assert h.is_surjective()
    s = syzygy(S1)
    assert s.dim == 1
    assert is_isomorphic(s, P2).status == "iso"


def test_cover_of_projective_is_identity_like(a2, mods):
    P1, _, _ = mods
    P, h = projective_cover(P1)
    assert P.dim == P1.dim and h.is_iso()
    assert syzygy(P1).dim == 0
    Z = zero_module(a2.algebra)
    P0, h0 = projective_cover(Z)
    assert P0.dim == 0


def test_pd_le_1(a2, mods):
    P1, P2, S1 = mods
    assert pd_le_1(P1) and pd_le_1(S1) and pd_le_1(P2)
    pa = dual_numbers(QQ)
    S = simple_at_vertex(pa, 0)
    assert is_projective(regular_module(pa.algebra))
    assert not pd_le_1(S)
    # syzygy of the dual-numbers simple is the simple again
    assert is_isomorphic(syzygy(S), S).status == "iso"


def test_ext1_matches_oracle(a2, mods):
    P1, P2, S1 = mods
    sample = [P1, P2, S1, direct_sum([P1, S1])[0], regular_module(a2.algebra)]
    for m in sample:
        for n in sample:
            assert ext1_dim(m, n) == oracle_ext_dim(m, n), (m, n)


def test_ext1_projective_vanishes(a2, mods):
    P1, P2, S1 = mods
    R = regular_module(a2.algebra)
    for n in (P1, P2, S1, R):
        assert ext1_dim(R, n) == 0
        assert ext1_dim(P1, n) == 0


def test_ext1_presentation_independence(a2, mods):
    P1, P2, S1 = mods
    pres = minimal_presentation(S1)
    # pad the cover with an extra projective mapping by zero
    Pext, injs, projs = direct_sum([pres.cover, P2])
    epi_rows = list(pres.epi.mat.rows) + [tuple(QQ.zero for _ in range(S1.dim))]
    epi = ModuleMorphism(Pext, S1, Mat(QQ, epi_rows, S1.dim))
    ker, kincl = kernel_submodule(epi)
    padded = Presentation(S1, Pext, epi, ker, kincl)
    for n in (P1, P2, S1):
        assert ext1(S1, n, padded).dim == ext1(S1, n).dim


def test_extension_realizes_p1(a2, mods):
    P1, P2, S1 = mods
    ext = ext1(S1, P2)
    assert ext.dim == 1
    E, incl, proj = extension_module(P2, S1, ext, (QQ.one,))
    assert is_isomorphic(E, P1).status == "iso"
    # exactness: ker(proj) = im(incl)
    ker, _ = kernel_submodule(proj)
    assert ker.dim == 1
    # split case
    E0, incl0, proj0 = extension_module(P2, S1, ext, (QQ.zero,))
    assert len(indecomposable_summands(E0)) == 2


def test_extension_zero_left_term(a2, mods):
    P1, P2, S1 = mods
    Z = zero_module(a2.algebra)
    ext = ext1(S1, Z)
    assert ext.dim == 0
    E, _, proj = extension_module(Z, S1, ext, ())
    assert is_isomorphic(E, S1).status == "iso"


def test_duality_basics(a2, mods):
    P1, P2, S1 = mods
    D = duality(P1)
    assert D.dim == P1.dim
    DD = duality(D)
    assert DD == P1  # transpose twice is literal identity
    Z = zero_module(a2.algebra)
    assert duality(Z).dim == 0
    assert is_injective(D)


def test_duality_swaps_covers_and_hulls(a2, mods):
    P1, P2, S1 = mods
    # I(S1) = D(P(D(S1)))
    I, mono = injective_hull(S1)
    assert mono.is_injective()
    # over A2, the injective hull of S1 is S1 itself (S1 = top(P1) = soc(I1)?)
    # compute instead structural facts: hull of S2 is 2-dimensional
    I2, mono2 = injective_hull(P2)
    assert I2.dim == 2
    assert mono2.is_injective()
    # hull of zero
    Z = zero_module(a2.algebra)
    IZ, _ = injective_hull(Z)
    assert IZ.dim == 0


def test_injective_hull_of_injective(a2, mods):
    P1, P2, S1 = mods
    W = injective_cogenerator(a2.algebra)
    assert W.dim == 3
    # every simple embeds into W
    assert hom_dim(S1, W) >= 1 and hom_dim(P2, W) >= 1
    I, mono = injective_hull(W)
    assert I.dim == W.dim and mono.is_iso()


def test_id_le_1(a2, mods):
    P1, P2, S1 = mods
    for m in (P1, P2, S1):
        assert id_le_1(m)  # hereditary
    pa = dual_numbers(QQ)
    S = simple_at_vertex(pa, 0)
    assert not id_le_1(S)
    assert id_le_1(regular_module(pa.algebra))  # self-injective


def test_tensor_unit_law(a2, mods):
    P1, P2, S1 = mods
    A = a2.algebra
    bim = regular_bimodule(A)
    bim.validate()
    for n in (P1, P2, S1):
        tp = tensor_over(A, n, bim)
        assert tp.module.dim == n.dim
        assert is_isomorphic(tp.module, n).status == "iso"
        assert oracle_tensor_dim(A, n, bim.as_left_module()) == n.dim


def test_tensor_matches_oracle(a2, mods):
    P1, P2, S1 = mods
    A = a2.algebra
    bim = regular_bimodule(A)
    for n in (P1, P2, S1):
        got = tensor_over(A, n, bim).module.dim
        assert got == oracle_tensor_dim(A, n, bim.as_left_module())


def test_tor_dual_numbers_lifted_action():
    pa = dual_numbers(QQ)
    B = pa.algebra
    S_right = simple_at_vertex(pa, 0)
    # left B-module S as a right module over B^op (commutative: same actions)
    S_left = RightModule(B.opposite(), S_right.actions, check=True)
    B_left = RightModule(B.opposite(), [B.left_mult_matrix_basis(i)
                                        for i in range(B.dim)], check=True)
    # augmentation B ->> S and inclusion (x) = S -> B
    aug = ModuleMorphism(B_left, S_left, Mat.from_int_rows(QQ, [[1], [0]]))
    delta = ModuleMorphism(S_left, B_left, Mat.from_int_rows(QQ, [[0, 1]]))
    # S as a B-B-bimodule
    S_bim = Bimodule(S_right, B, tuple(S_right.actions))
    S_bim.validate()
    tor = tor1_with_lifted_action(B, S_right, S_left, B_left, delta, aug, S_bim)
    assert tor.dim == 1
    assert oracle_tor1_dim(B, S_right, S_left) == 1
    # x acts as zero on Tor1(S, S)
    x_idx = pa.arrow_basis_index("x")
    assert tor.actions[x_idx].is_zero()


def test_tor_lift_homotopy_independence():
    pa = dual_numbers(QQ)
    B = pa.algebra
    S_right = simple_at_vertex(pa, 0)
    S_left = RightModule(B.opposite(), S_right.actions, check=False)
    B_left = RightModule(B.opposite(), [B.left_mult_matrix_basis(i)
                                        for i in range(B.dim)], check=False)
    aug = ModuleMorphism(B_left, S_left, Mat.from_int_rows(QQ, [[1], [0]]))
    delta = ModuleMorphism(S_left, B_left, Mat.from_int_rows(QQ, [[0, 1]]))
    S_bim = Bimodule(S_right, B, tuple(S_right.actions))
    x_idx = pa.arrow_basis_index("x")
    # two different lifts of right multiplication by x: differ by mult-by-x
    rho_x = Mat.from_int_rows(QQ, [[0]])  # x acts as 0 on S
    lam0_a = lift_endomorphism_through_cover(aug, rho_x)
    Lx = B.left_mult_matrix_basis(x_idx)
    lam0_b = lam0_a + Lx  # still satisfies lam0 @ aug = aug @ rho since aug kills x B
    assert lam0_b @ aug.mat == aug.mat @ rho_x
    overrides_a = [None] * B.dim
    overrides_b = [None] * B.dim
    overrides_a[x_idx] = lam0_a
    overrides_b[x_idx] = lam0_b
    tor_a = tor1_with_lifted_action(B, S_right, S_left, B_left, delta, aug, S_bim,
                                    lam0_override=overrides_a)
    tor_b = tor1_with_lifted_action(B, S_right, S_left, B_left, delta, aug, S_bim,
                                    lam0_override=overrides_b)
    assert tor_a.actions == tor_b.actions


def test_tor_flat_cases(a2, mods):
    P1, P2, S1 = mods
    A = a2.algebra
    # presentation of the left module A: 0 -> 0 -> A -> A -> 0
    B_left = RightModule(A.opposite(), [A.left_mult_matrix_basis(i)
                                        for i in range(A.dim)], check=False)
    Zl = zero_module(A.opposite())
    delta = ModuleMorphism(Zl, B_left, Mat(QQ, [], A.dim), check=False)
    Q1b = trivial_right_bimodule(Zl, A)
    Q0b = trivial_right_bimodule(B_left, A)
    for n in (P1, P2, S1):
        tor, *_ = tor1_via_two_term(A, n, Q1b, Q0b, delta)
        assert tor.dim == 0


def test_ext2_hereditary_vanishes(a2, mods):
    P1, P2, S1 = mods
    for m in (P1, P2, S1):
        for n in (P1, P2, S1):
            assert ext2_dim(m, n) == 0
    pa = dual_numbers(QQ)
    S = simple_at_vertex(pa, 0)
    assert ext2_dim(S, S) == 1


def test_end_algebra_packaging(a2, mods):
    P1, P2, S1 = mods
    T = direct_sum([P1, S1])[0]
    S, basis, bim = end_algebra(T)
    assert S.dim == 3
    bim.validate()
    # End(simple) of the base field size
    S2alg, _, _ = end_algebra(P2)
    assert S2alg.dim == 1


def test_end_of_regular_is_the_algebra(a2):
    A = a2.algebra
    R = regular_module(A)
    S, basis, _ = end_algebra(R)
    assert S.dim == A.dim
    # canonical map a -> left multiplication is an algebra isomorphism:
    # check it is multiplicative on basis pairs after expressing in S's basis
    from tiltlab.linalg import coordinates_in_rowspace, row_space_basis
    from tiltlab.modules import _flatten
    F = A.field
    flat = Mat(F, [_flatten(b.mat) for b in basis], A.dim * A.dim)
    def to_S(vec):
        L = A.left_mult_matrix(vec)
        return coordinates_in_rowspace(flat, _flatten(L))
    for i in range(A.dim):
        for j in range(A.dim):
            bi = tuple(F.one if k == i else F.zero for k in range(A.dim))
            bj = tuple(F.one if k == j else F.zero for k in range(A.dim))
            lhs = to_S(A.mul_vec(bi, bj))
            rhs = S.mul_vec(to_S(bi), to_S(bj))
            assert lhs == tuple(rhs)
