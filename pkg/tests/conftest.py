import pytest

from tiltlab.linalg import QQ, Mat
from tiltlab.algebras import build_path_algebra, linear_quiver
from tiltlab.modules import direct_sum, module_from_quiver_data, simple_at_vertex
from tiltlab.equivalence import build_context


@pytest.fixture(scope="session")
def a2q():
    return build_path_algebra(QQ, linear_quiver(2))


@pytest.fixture(scope="session")
def a2q_modules(a2q):
    P1 = module_from_quiver_data(a2q, [1, 1], {"a1": Mat.from_int_rows(QQ, [[1]])})
    P2 = simple_at_vertex(a2q, 1)
    S1 = simple_at_vertex(a2q, 0)
    return {"P1": P1, "P2": P2, "S1": S1}


@pytest.fixture(scope="session")
def a2q_ctx(a2q, a2q_modules):
    T = direct_sum([a2q_modules["P1"], a2q_modules["S1"]])[0]
    return build_context(T)
