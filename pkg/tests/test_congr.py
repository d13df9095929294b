import pytest

from finalg import congr
from finalg import kalman as km
from finalg import search
from finalg import varieties as V
from finalg.congr import Congruence, Filter
from finalg.errors import InputError, PreconditionError

from .conftest import make_bool4, make_chain


def lattice_ops(A):
    return [A.glb_table, A.lub_table]


def test_congruence_canonical_blocks():
    theta = Congruence.from_blocks(4, [[0, 1], [2, 3]])
    assert theta.block == (0, 0, 2, 2)
    assert theta.blocks() == ((0, 1), (2, 3))
    with pytest.raises(InputError):
        Congruence(3, (0, 2, 2))
    with pytest.raises(InputError):
        Congruence.from_blocks(3, [[0, 1]])


def test_congruence_lattice_operations():
    a = Congruence.from_blocks(4, [[0, 1], [2], [3]])
    b = Congruence.from_blocks(4, [[0], [1, 2], [3]])
    assert a.meet(b) == Congruence.identity(4)
    assert a.refines(Congruence.total(4))
    assert not Congruence.total(4).refines(a)


def test_counts_on_chains():
    c2, c3 = make_chain(2), make_chain(3)
    assert len(congr.enumerate_congruences(c2, lattice_ops(c2))) == 2
    assert len(congr.enumerate_congruences(c3, lattice_ops(c3))) == 4
    one = make_chain(1)
    assert len(congr.enumerate_congruences(one, lattice_ops(one))) == 1


def brute_force_congruences(A, ops):
    return sorted((theta for theta in congr.all_partitions(A.size)
                   if congr.is_compatible(theta, ops)),
                  key=lambda t: t.block)


def test_closure_enumeration_matches_brute_force_everywhere():
    cases = []
    for n in range(1, 6):
        for L in search.enumerate_lattices(n):
            cases.append((L, lattice_ops(L)))
    b4 = make_bool4()
    ej1 = b4.with_ops(arrow=[[3 if b4.leq[a][c] else c for c in range(4)]
                             for a in range(4)])
    cases.append((ej1, lattice_ops(ej1) + [ej1.arrow]))
    c3 = make_chain(3, arrow=[[2, 1, 2], [0, 2, 2], [0, 0, 2]])
    cases.append((c3, lattice_ops(c3) + [c3.arrow]))
    k = km.kalman_of_bdl(make_chain(2))
    cases.append((k.algebra, lattice_ops(k.algebra) + [k.algebra.involution]))
    for A, ops in cases:
        fast = congr.enumerate_congruences(A, ops)
        assert fast == brute_force_congruences(A, ops)


def his_pair_algebra(H):
    return km.kalman_of_his(H).algebra


@pytest.fixture
def T2(chain2_ha):
    return his_pair_algebra(chain2_ha)


@pytest.fixture
def T4(bool4_ej1):
    return his_pair_algebra(bool4_ej1)


def test_identity_and_total_are_well_behaved(T2, T4):
    for T in (T2, T4):
        assert congr.is_well_behaved(T, Congruence.identity(T.size))[0]
        assert congr.is_well_behaved(T, Congruence.total(T.size))[0]


def test_wb_violating_clause_search(T4):
    # some equivalence compatible with arrow and involution fails the
    # biconditional clause
    found = None
    for theta in congr.all_partitions(T4.size):
        ok_ops = congr.is_compatible(theta, [T4.arrow, T4.involution])
        ok, detail = congr.is_well_behaved(T4, theta)
        if ok_ops and not ok and detail[0] == "C2":
            found = (theta, detail)
            break
    assert found is not None
    theta, (clause, witness) = found
    x, y = witness[:2]
    lubt = T4.lub_table
    c = T4.center
    inv = T4.involution
    both = (theta.relates(lubt[x][c], lubt[y][c])
            and theta.relates(lubt[inv[x]][c], lubt[inv[y]][c]))
    assert theta.relates(x, y) != both


def test_wb_enumeration_matches_brute_force(T2, T4, chain3_his):
    for T in (T2, T4, his_pair_algebra(chain3_his)):
        fast = congr.enumerate_wb_congruences(T)
        slow = congr.enumerate_wb_congruences_bruteforce(T)
        assert fast == slow


def test_wb_count_equals_center_congruence_count(T2, T4, bool4_ej1, chain2_ha):
    for T, H in ((T2, chain2_ha), (T4, bool4_ej1)):
        wb = congr.enumerate_wb_congruences(T)
        conc = congr.enumerate_congruences(H, [H.glb_table, H.arrow])
        assert len(wb) == len(conc)


def test_gamma_sigma_inverse_bijections(T4):
    wb = congr.enumerate_wb_congruences(T4)
    C = km.center_algebra(T4)
    conc = congr.enumerate_congruences(C, [C.meet, C.arrow])
    seen = []
    for theta in wb:
        tau = congr.gamma_restrict(T4, theta)
        assert tau in conc
        assert congr.sigma_expand(T4, tau) == theta
        seen.append(tau)
    assert sorted(seen, key=lambda t: t.block) == conc
    # order preservation both ways
    for t1 in wb:
        for t2 in wb:
            assert t1.refines(t2) == congr.gamma_restrict(
                T4, t1).refines(congr.gamma_restrict(T4, t2))


def test_full_congruences_equal_wb_at_lattice_level(T4, T2):
    # with total lattice operations every full congruence is well
    # behaved and conversely
    for T in (T2, T4):
        full = congr.enumerate_congruences(
            T, [T.meet, T.join, T.arrow, T.involution])
        assert full == congr.enumerate_wb_congruences(T)


def test_wb_congruences_closed_under_intersection(T4):
    wb = congr.enumerate_wb_congruences(T4)
    for a in wb:
        for b in wb:
            met = a.meet(b)
            assert congr.is_well_behaved(T4, met)[0]
            assert met in wb


def test_sigma_rejects_non_congruence(T4):
    # relating the two atoms of the center without the rest is not a
    # center congruence
    with pytest.raises(PreconditionError):
        congr.sigma_expand(T4, Congruence.from_blocks(4, [[1, 2], [0], [3]]))


def test_quotient_identity_and_total(T4):
    ident = Congruence.identity(T4.size)
    Q = congr.quotient_wb(T4, ident)
    ok, _ = search.are_isomorphic(
        Q.with_ops(meet=None, join=None, names=None, validate=False),
        T4.with_ops(meet=None, join=None, names=None, validate=False))
    assert ok
    total = Congruence.total(T4.size)
    assert congr.quotient_wb(T4, total).size == 1


def test_quotient_passes_battery_and_identifies_blocks(chain3):
    H = chain3.with_ops(arrow=V.residuum_table(chain3))
    T = his_pair_algebra(H)
    for theta in congr.enumerate_wb_congruences(T):
        Q = congr.quotient_wb(T, theta)
        assert km.check_khis_battery(Q).ok
        # join with the center block is the block of the join
        blk = theta.block
        reps = sorted(set(blk))
        index = {r: i for i, r in enumerate(reps)}
        for x in range(T.size):
            vx = T.lub_table[x][T.center]
            assert (Q.lub_table[index[blk[x]]][Q.center]
                    == index[blk[vx]])


def test_quotient_rejects_non_wb(T4):
    bad = Congruence.from_blocks(T4.size, [[0, 1]] + [[i] for i in range(2, T4.size)])
    ok, _ = congr.is_well_behaved(T4, bad)
    if not ok:
        with pytest.raises(PreconditionError):
            congr.quotient_wb(T4, bad)


def test_filters_on_chains_and_fans():
    assert len(congr.enumerate_filters(make_chain(2))) == 2
    assert len(congr.enumerate_filters(make_chain(3))) == 3
    b4 = make_bool4()
    filters = congr.enumerate_filters(b4)
    members = {F.members() for F in filters}
    assert members == {(3,), (1, 3), (2, 3), (0, 1, 2, 3)}


def test_t_term_with_top_parameter(chain3_his):
    H = chain3_his
    n = H.size
    for a in range(n):
        for b in range(n):
            ab = H.arrow[a][b]
            expected = H.glb_table[H.arrow[ab][ab]][H.arrow[ab][ab]]
            assert congr.t_term(H, a, b, H.top) == expected


def test_t_term_boolean_two_chain(chain2_ha):
    assert congr.t_term(chain2_ha, 0, 1, 1) == 1


def test_congruent_filters(chain3_his, bool4_ej1):
    # whole carrier is always congruent; the middle filter of the sample
    # chain is not
    H = chain3_his
    full = Filter((1, 1, 1))
    assert congr.is_congruent_filter(H, full)[0]
    mid = Filter((0, 1, 1))
    ok, witness = congr.is_congruent_filter(H, mid)
    assert not ok
    a, b, f = witness
    assert congr.t_term(H, a, b, f) not in mid


def test_every_filter_congruent_in_residuated_case():
    for base in (make_chain(2), make_chain(3), make_bool4()):
        H = base.with_ops(arrow=V.residuum_table(base))
        for F in congr.enumerate_filters(H):
            assert congr.is_congruent_filter(H, F)[0]


def test_theta_of_filter_characterizations(chain2_ha, bool4_ej1):
    for H in (chain2_ha, bool4_ej1):
        for F in congr.enumerate_filters(H):
            if not congr.is_congruent_filter(H, F)[0]:
                continue
            theta = congr.theta_of_filter(H, F)
            # meet characterization equals the biimplication one
            for a in range(H.size):
                for b in range(H.size):
                    assert theta.relates(a, b) == (
                        congr.biimp(H, a, b) in F)


def test_theta_of_filter_examples(chain2_ha):
    assert congr.theta_of_filter(
        chain2_ha, Filter((0, 1))) == Congruence.identity(2)
    assert congr.theta_of_filter(
        chain2_ha, Filter((1, 1))) == Congruence.total(2)


def test_congruence_filter_bijection(chain2_ha, bool4_ej1, chain3_his):
    for H in (chain2_ha, bool4_ej1, chain3_his):
        ops = [H.glb_table, H.lub_table, H.arrow]
        cons = congr.enumerate_congruences(H, ops)
        cfs = [F for F in congr.enumerate_filters(H)
               if congr.is_congruent_filter(H, F)[0]]
        assert len(cons) == len(cfs)
        for theta in cons:
            top_class = tuple(x for x in range(H.size)
                              if theta.relates(x, H.top))
            F = Filter(tuple(1 if x in top_class else 0
                             for x in range(H.size)))
            assert congr.is_congruent_filter(H, F)[0]
            assert congr.theta_of_filter(H, F) == theta


def test_generated_congruent_filter(chain3_his):
    H = chain3_his
    # the least congruent filter containing the middle element is the
    # whole carrier, mirroring the failed closure of the middle filter
    F = congr.congruent_filter_generated(H, [1])
    assert F.members() == (0, 1, 2)
    top_only = congr.congruent_filter_generated(H, [])
    assert top_only.members() == (2,)
    # minimality against the enumerated congruent filters
    for G in congr.enumerate_filters(H):
        if congr.is_congruent_filter(H, G)[0] and 1 in G:
            assert set(F.members()) <= set(G.members())


def test_principal_filters_in_residuated_case():
    for base in (make_chain(3), make_bool4()):
        H = base.with_ops(arrow=V.residuum_table(base))
        for a in range(H.size):
            F = congr.congruent_filter_generated(H, [a])
            expected = tuple(x for x in range(H.size) if H.leq[a][x])
            assert F.members() == expected


def test_principal_wb_congruences(T2):
    ident = congr.principal_wb_congruence(T2, [(0, 0)])
    assert ident == Congruence.identity(T2.size)
    total = congr.principal_wb_congruence(
        T2, [(T2.bottom, T2.top)])
    assert total == Congruence.total(T2.size)


def test_principal_wb_matches_center_transfer(T4):
    # the principal congruence is the lift of the center principal
    # congruence on the transferred pairs
    C = km.center_algebra(T4)
    celems = km.center_elements(T4)
    pos = {x: i for i, x in enumerate(celems)}
    lubt = T4.lub_table
    inv = T4.involution
    c = T4.center
    for x in range(T4.size):
        for y in range(T4.size):
            theta = congr.principal_wb_congruence(T4, [(x, y)])
            tau = congr.congruence_generated(
                C, [C.meet, C.arrow],
                [(pos[lubt[x][c]], pos[lubt[y][c]]),
                 (pos[lubt[inv[x]][c]], pos[lubt[inv[y]][c]])])
            assert congr.sigma_expand(T4, tau) == theta


def diamond_based_structure():
    """Implication over the three-atom diamond whose atom filter is
    congruent; the filter relation respects meet and arrow but not join,
    so every check downstream must stay inside the meet-arrow signature."""
    from finalg.finord import FiniteAlgebra

    leq = [[1, 1, 1, 1, 1], [0, 1, 0, 0, 1], [0, 0, 1, 0, 1],
           [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]]
    arrow = [[4, 4, 4, 4, 4],
             [0, 4, 0, 0, 4],
             [1, 1, 4, 1, 4],
             [1, 1, 1, 4, 4],
             [0, 1, 0, 0, 4]]
    H = FiniteAlgebra(leq, bottom=0, top=4, names=["0", "p", "q", "r", "1"])
    return H.with_ops(meet=H.glb_table, join=H.lub_table, arrow=arrow)


def test_filter_congruence_beyond_the_join_signature():
    H = diamond_based_structure()
    assert V.check_hemi_implicative_semilattice(H).ok
    F = Filter((0, 1, 0, 0, 1))
    assert congr.is_congruent_filter(H, F)[0]
    theta = congr.theta_of_filter(H, F)
    assert theta.blocks() == ((0, 2, 3), (1, 4))
    assert congr.is_compatible(theta, [H.glb_table, H.arrow])
    assert not congr.is_compatible(theta, [H.lub_table])


def test_machinery_on_partial_pair_algebra():
    # the diamond's componentwise tables do not close, so this covers
    # the scan-based partial-bound paths end to end
    H = diamond_based_structure()
    kalg = km.kalman_of_his(H)
    T = kalg.algebra
    assert T.size == 15 and T.meet is None
    assert km.check_khis_battery(T).ok
    wb = congr.enumerate_wb_congruences(T)
    conH = congr.enumerate_congruences(H, [H.glb_table, H.arrow])
    assert len(wb) == len(conH) == 3
    for theta in wb:
        tau = congr.gamma_restrict(T, theta)
        assert congr.sigma_expand(T, tau) == theta
        Q = congr.quotient_wb(T, theta)
        assert km.check_khis_battery(Q).ok
    assert km.alpha_map(kalg).is_isomorphism
    morph, _ = km.beta_with_kalman(T, level="his")
    assert morph.is_isomorphism


def test_q_term_basics(kleene_chain3):
    T = kleene_chain3.with_ops(arrow=km.khil_default_arrow(kleene_chain3))
    n = T.size
    for x in range(n):
        assert congr.q_term(T, x, x) == T.top
    # hand evaluation for bottom against top: both biimplications land
    # on the center, whose self-meet is the center
    c, top = T.center, T.top
    bi = T.glb_table[T.arrow[c][top]][T.arrow[top][c]]
    assert congr.q_term(T, 0, 2) == T.glb_table[bi][bi] == c


def test_q_term_orders_principal_congruences(chain2_sh, chain3):
    # in the semi-Heyting and residuated pair algebras the principal
    # congruence comparison reduces to the q-term order
    for H in (chain2_sh, chain3.with_ops(arrow=V.residuum_table(chain3))):
        T = his_pair_algebra(H)
        n = T.size
        for x in range(n):
            for y in range(n):
                theta = congr.principal_wb_congruence(T, [(x, y)])
                q1 = congr.q_term(T, x, y)
                for z in range(n):
                    for w in range(n):
                        assert theta.relates(z, w) == bool(
                            T.leq[q1][congr.q_term(T, z, w)])
