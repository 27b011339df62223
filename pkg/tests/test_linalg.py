import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tiltlab.linalg import (
    GF, QQ, FieldError, Mat, charpoly, image_basis, inverse, left_kernel_basis,
    poly_divmod, poly_gcd, poly_mul, rank, right_kernel_basis, row_space_basis,
    solve_left, solve_right, vec_matmul,
)


def qmat(rows):
    return Mat.from_int_rows(QQ, rows)


def pmat(p, rows):
    return Mat.from_int_rows(GF(p), rows)


def test_rank_trivial_cases():
    assert rank(Mat.identity(QQ, 2)) == 2
    assert rank(Mat.zero(QQ, 2, 2)) == 0


def test_rank_dependent_rows():
    # [[1,2],[2,4]] has a vanishing 2x2 minor and a nonzero entry
    assert rank(qmat([[1, 2], [2, 4]])) == 1


def test_kernel_identity_and_zero():
    assert right_kernel_basis(Mat.identity(QQ, 3)) == []
    ker = right_kernel_basis(Mat.zero(QQ, 3, 3))
    assert len(ker) == 3
    # canonical output: standard basis vectors
    assert ker == [tuple(Fraction(1 if i == j else 0) for j in range(3)) for i in range(3)]


def test_kernel_sum_vector():
    ker = right_kernel_basis(qmat([[1, -1]]))
    assert len(ker) == 1
    v = ker[0]
    assert v[0] == v[1] != 0


def test_solve_cases():
    ident = Mat.identity(QQ, 3)
    b = (Fraction(3), Fraction(-1), Fraction(2))
    assert solve_right(ident, b) == b
    x = solve_right(qmat([[1, 1]]), (Fraction(2),))
    assert x is not None and x[0] + x[1] == 2
    assert solve_right(qmat([[1], [0]]), (Fraction(0), Fraction(1))) is None


def test_inverse_cases():
    assert inverse(Mat.identity(QQ, 4)) == Mat.identity(QQ, 4)
    m = qmat([[1, 1], [0, 1]])
    assert inverse(m) == qmat([[1, -1], [0, 1]])
    assert inverse(qmat([[1, 2], [2, 4]])) is None


def test_image_basis_zero_is_empty():
    assert image_basis(Mat.zero(QQ, 3, 2)) == []


def test_field_errors():
    with pytest.raises(FieldError):
        GF(6)
    with pytest.raises(FieldError):
        qmat([[1]]) @ pmat(5, [[1]])


def _random_mat(rng, field, nr, nc, lo=-4, hi=4):
    return Mat.from_int_rows(field, [[rng.randint(lo, hi) for _ in range(nc)] for _ in range(nr)])


def test_rank_nullity_randomized():
    rng = random.Random(7)
    for _ in range(40):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        m = _random_mat(rng, QQ, nr, nc)
        assert rank(m) + len(right_kernel_basis(m)) == nc
        for v in right_kernel_basis(m):
            col = Mat(QQ, [(x,) for x in v], 1)
            assert (m @ col).is_zero()


def test_rank_nullity_empty_matrix():
    m = Mat(QQ, [], 3)
    assert rank(m) == 0
    assert len(right_kernel_basis(m)) == 3


def test_solve_verifies_randomized():
    rng = random.Random(11)
    hits = 0
    for _ in range(60):
        nr, nc = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_mat(rng, QQ, nr, nc)
        b = tuple(Fraction(rng.randint(-4, 4)) for _ in range(nr))
        x = solve_right(m, b)
        if x is not None:
            hits += 1
            got = vec_matmul(x, m.transpose())
            assert got == b
    assert hits > 10


def test_qq_fp_agreement_randomized():
    # ranks agree mod p when no pivot denominator/determinant is divisible by p
    rng = random.Random(13)
    p = 10007
    for _ in range(30):
        nr, nc = rng.randint(1, 6), rng.randint(1, 6)
        rows = [[rng.randint(-9, 9) for _ in range(nc)] for _ in range(nr)]
        rq = rank(Mat.from_int_rows(QQ, rows))
        rp = rank(Mat.from_int_rows(GF(p), rows))
        # over a huge prime and tiny integer entries, no accidental rank drop
        assert rq == rp


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=5))
@settings(max_examples=60, deadline=None)
def test_rowspace_canonical_idempotent(rows):
    m = Mat.from_int_rows(QQ, rows)
    b = row_space_basis(m)
    assert row_space_basis(b) == b


def test_left_kernel_matches_transpose():
    m = qmat([[1, 0], [1, 0], [0, 1]])
    lk = left_kernel_basis(m)
    assert len(lk) == 1
    assert vec_matmul(lk[0], m) == (Fraction(0), Fraction(0))


def test_charpoly_known_values():
    assert charpoly(Mat.identity(QQ, 3)) == (Fraction(1), Fraction(-3), Fraction(3), Fraction(-1))
    m = qmat([[0, 1], [-1, 0]])
    assert charpoly(m) == (Fraction(1), Fraction(0), Fraction(1))
    m2 = pmat(2, [[1, 1], [0, 1]])
    assert charpoly(m2) == (1, 0, 1)  # (t-1)^2 = t^2 + 1 mod 2


def test_charpoly_cayley_hamilton_randomized():
    rng = random.Random(3)
    for _ in range(15):
        n = rng.randint(1, 4)
        m = _random_mat(rng, QQ, n, n, -3, 3)
        coeffs = charpoly(m)  # high-to-low
        acc = Mat.zero(QQ, n, n)
        power = Mat.identity(QQ, n)
        for c in reversed(coeffs):  # low-to-high
            acc = acc + power.scale(c)
            power = power @ m
        assert acc.is_zero()


def test_poly_helpers():
    F = GF(5)
    a = [1, 0, 1]  # 1 + t^2
    b = [1, 1]     # 1 + t
    q, r = poly_divmod(F, poly_mul(F, a, b), b)
    assert q == a and r == []
    g = poly_gcd(F, poly_mul(F, a, b), b)
    assert g == [1, 1]


def test_solve_left_convention():
    m = qmat([[1, 2], [0, 1]])
    x = solve_left(m, (Fraction(1), Fraction(0)))
    assert x is not None
    assert vec_matmul(x, m) == (Fraction(1), Fraction(0))
