import pytest

from finalg.finord import FiniteAlgebra


def make_chain(n, names=None, arrow=None):
    leq = [[1 if i <= j else 0 for j in range(n)] for i in range(n)]
    A = FiniteAlgebra(leq, bottom=0, top=n - 1, names=names)
    return A.with_ops(meet=A.glb_table, join=A.lub_table, arrow=arrow)


def make_bool4(names=("0", "a", "b", "1"), arrow=None):
    leq = [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]
    A = FiniteAlgebra(leq, bottom=0, top=3, names=names)
    return A.with_ops(meet=A.glb_table, join=A.lub_table, arrow=arrow)


def ej1_arrow(A):
    """x -> y = 1 if x <= y else y."""
    n = A.size
    return [[A.top if A.leq[a][b] else b for b in range(n)] for a in range(n)]


@pytest.fixture
def chain2():
    return make_chain(2, ["0", "1"])


@pytest.fixture
def chain3():
    return make_chain(3, ["0", "a", "1"])


@pytest.fixture
def bool4():
    return make_bool4()


@pytest.fixture
def chain3_his():
    # three-element chain with the non-residuated implication
    return make_chain(3, ["0", "a", "1"],
                      arrow=[[2, 1, 2], [0, 2, 2], [0, 0, 2]])


@pytest.fixture
def chain2_sh():
    # two-element chain where 0 -> 1 = 0
    return make_chain(2, ["0", "1"], arrow=[[1, 0], [0, 1]])


@pytest.fixture
def chain2_ha():
    return make_chain(2, ["0", "1"], arrow=[[1, 1], [0, 1]])


@pytest.fixture
def bool4_ej1():
    A = make_bool4()
    return A.with_ops(arrow=ej1_arrow(A))


@pytest.fixture
def kleene_chain3():
    # smallest nontrivial centered involutive chain
    return make_chain(3, ["0", "c", "1"]).with_ops(
        involution=[2, 1, 0], center=1)
