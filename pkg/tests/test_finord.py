import random

import pytest

from finalg.errors import InputError, PreconditionError
from finalg.finord import (
    FiniteAlgebra,
    dual_product_order,
    glb,
    is_distributive_lattice,
    lub,
    validate_poset,
)

from .conftest import make_bool4, make_chain


def test_validate_poset_accepts_singleton_and_chain():
    assert validate_poset([[1]]).ok
    assert validate_poset([[1, 1], [0, 1]]).ok


def test_validate_poset_reports_antisymmetry_witness():
    report = validate_poset([[1, 1], [1, 1]])
    assert not report.ok
    assert ("antisymmetry", (0, 1)) in report.violations


def test_validate_poset_reports_all_axioms():
    report = validate_poset([[0, 1, 0], [0, 1, 1], [0, 0, 1]])
    axioms = {a for a, _ in report.violations}
    assert "reflexivity" in axioms
    # 0 <= 1 <= 2 but the (0,2) entry is missing
    assert ("transitivity", (0, 1, 2)) in report.violations


def test_validate_poset_rejects_non_square():
    with pytest.raises(InputError):
        validate_poset([[1, 1], [0, 1], [0, 0]])


def test_glb_on_chain_and_antichain():
    c2 = make_chain(2)
    assert glb(c2, 0, 1).element == 0
    assert lub(c2, 0, 1).element == 1
    anti = FiniteAlgebra([[1, 0], [0, 1]])
    assert not glb(anti, 0, 1).exists
    assert not lub(anti, 0, 1).exists


def test_glb_bool4():
    b4 = make_bool4()
    assert glb(b4, 1, 2).element == 0
    assert lub(b4, 1, 2).element == 3


def test_bounds_antichain_with_bottom_only():
    # bottom plus two incomparable elements
    P = FiniteAlgebra([[1, 1, 1], [0, 1, 0], [0, 0, 1]], bottom=0)
    assert glb(P, 1, 2).element == 0
    assert not lub(P, 1, 2).exists


def test_index_out_of_range():
    c2 = make_chain(2)
    with pytest.raises(InputError):
        glb(c2, 0, 5)


def test_dual_product_order_singleton():
    P = FiniteAlgebra([[1]])
    assert dual_product_order(P) == ((1,),)


def test_dual_product_order_two_chain():
    c2 = make_chain(2)
    order = dual_product_order(c2)
    # pair indices: (0,0)=0, (0,1)=1, (1,0)=2, (1,1)=3
    assert order[1][0] and order[0][2] and order[1][3] and order[3][2]
    assert not order[2][0] and not order[0][1]
    assert validate_poset(order).ok
    assert all(order[i][i] for i in range(4))


def test_dual_product_order_diagonal_embeds_original():
    b4 = make_bool4()
    order = dual_product_order(b4)
    n = b4.size
    for fixed in range(n):
        for i in range(n):
            for j in range(n):
                assert (order[i * n + fixed][j * n + fixed]
                        == b4.leq[i][j])


def test_duality_of_bounds():
    b4 = make_bool4()
    rev = FiniteAlgebra([[b4.leq[j][i] for j in range(4)] for i in range(4)])
    for a in range(4):
        for b in range(4):
            assert glb(b4, a, b).element == lub(rev, a, b).element


def test_meet_table_agrees_with_glb_everywhere():
    b4 = make_bool4()
    for a in range(4):
        for b in range(4):
            assert glb(b4, a, b).element == b4.meet[a][b]


def test_distributive_chain_and_bool4():
    assert is_distributive_lattice(make_chain(4))[0]
    assert is_distributive_lattice(make_bool4())[0]


def test_diamond_is_not_distributive():
    leq = [[1, 1, 1, 1, 1],
           [0, 1, 0, 0, 1],
           [0, 0, 1, 0, 1],
           [0, 0, 0, 1, 1],
           [0, 0, 0, 0, 1]]
    A = FiniteAlgebra(leq, bottom=0, top=4)
    A = A.with_ops(meet=A.glb_table, join=A.lub_table)
    ok, witness = is_distributive_lattice(A)
    assert not ok
    x, y, z = witness
    lhs = A.meet[x][A.join[y][z]]
    rhs = A.join[A.meet[x][y]][A.meet[x][z]]
    assert lhs != rhs


def test_distributivity_preconditions():
    P = FiniteAlgebra([[1, 0], [0, 1]])
    with pytest.raises(PreconditionError):
        is_distributive_lattice(P)


def test_construction_rejects_bad_tables():
    with pytest.raises(InputError):
        FiniteAlgebra([[1, 1], [0, 1]], meet=[[0, 1], [1, 1]])
    with pytest.raises(InputError):
        FiniteAlgebra([[1, 1], [0, 1]], bottom=1)
    with pytest.raises(InputError):
        FiniteAlgebra([[1, 1], [0, 1]], involution=[0, 0])
    with pytest.raises(InputError):
        FiniteAlgebra([[1, 1], [0, 1]], involution=[1, 0], center=0)
    with pytest.raises(InputError):
        FiniteAlgebra([[1, 1], [1, 1]])
    with pytest.raises(InputError):
        FiniteAlgebra([[1, 1], [0, 1]], names=["x", "x"])


def random_poset(rng, n):
    leq = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                leq[i][j] = 1
    for k in range(n):
        for i in range(n):
            if leq[i][k]:
                row_k = leq[k]
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = 1
    return FiniteAlgebra(leq)


def naive_bound(P, a, b, upper):
    rel = (lambda x, y: P.leq[y][x]) if upper else (lambda x, y: P.leq[x][y])
    bounds = [m for m in range(P.size) if rel(m, a) and rel(m, b)]
    best = [m for m in bounds if all(rel(x, m) for x in bounds)]
    return best[0] if best else None


def test_bounds_match_naive_scan_on_random_posets():
    rng = random.Random(20240817)
    for _ in range(1000):
        n = rng.randint(1, 8)
        P = random_poset(rng, n)
        a = rng.randrange(n)
        b = rng.randrange(n)
        assert glb(P, a, b).element == naive_bound(P, a, b, upper=False)
        assert lub(P, a, b).element == naive_bound(P, a, b, upper=True)
