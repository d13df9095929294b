"""The pair construction K(-), the center construction C(-), the alpha
and beta maps, the interpolation condition, and the K-level axiom
batteries.

One skeleton (pair set, product-with-dual order, involution, center,
bounds, and lattice tables when they close) is computed per source order
and shared across every arrow attached to that source, since none of it
depends on the arrow.  All batteries evaluate meets and joins through
the partial glb/lub tables, so the same code serves both lattice-level
and semilattice-level structures; a required subterm that fails to exist
is reported as a violation of the axiom that needs it.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, PreconditionError, TheoremViolationError
from .finord import FiniteAlgebra, is_distributive_lattice
from .varieties import (
    CheckReport,
    check_centered_kleene,
    check_bounded_semilattice,
    check_hemi_implicative_semilattice,
    check_heyting,
    check_kleene_poset,
)


@dataclass(frozen=True)
class KalmanAlgebra:
    """A constructed pair algebra together with its source and pair list.

    ``pairs[i]`` is the source-index pair represented by element ``i`` of
    ``algebra``; the list is in lexicographic order.  ``star`` and
    ``weak_imp`` are only populated by the Heyting-level construction.
    """

    source: FiniteAlgebra
    pairs: tuple
    algebra: FiniteAlgebra
    star: tuple | None = None
    weak_imp: tuple | None = None

    def index_of(self, a, b):
        return _pair_lookup(self.pairs)[(a, b)]


@lru_cache(maxsize=None)
def _pair_lookup_cached(pairs):
    return {p: i for i, p in enumerate(pairs)}


def _pair_lookup(pairs):
    return _pair_lookup_cached(pairs)


def kalman_pairs(P):
    """All pairs (a, b) whose meet exists and equals bottom, lex ordered."""
    if P.bottom is None:
        raise PreconditionError("pair construction requires a bottom element")
    n = P.size
    glbt = P.glb_table
    bottom = P.bottom
    return [(a, b) for a in range(n) for b in range(n) if glbt[a][b] == bottom]


@lru_cache(maxsize=None)
def _skeleton(leq, bottom, top, meet, join):
    """Arrow-independent part of K: pairs, order, involution, constants,
    and lattice tables whenever the componentwise operations stay inside
    the pair set.  Keyed on source content, shared across arrows."""
    src = FiniteAlgebra(leq, meet=meet, join=join, bottom=bottom, top=top,
                        validate=False)
    pairs = tuple(kalman_pairs(src))
    index = {p: i for i, p in enumerate(pairs)}
    k = len(pairs)
    kleq = [[0] * k for _ in range(k)]
    for i, (a, b) in enumerate(pairs):
        row = kleq[i]
        for j, (d, e) in enumerate(pairs):
            if leq[a][d] and leq[e][b]:
                row[j] = 1
    inv = tuple(index[(b, a)] for (a, b) in pairs)
    center = index[(bottom, bottom)]
    kbottom = index.get((bottom, top)) if top is not None else None
    ktop = index.get((top, bottom)) if top is not None else None
    kmeet = kjoin = None
    glbt = src.glb_table
    lubt = src.lub_table
    if src.meet_total and src.join_total:
        kmeet = []
        kjoin = []
        closed = True
        for (a, b) in pairs:
            mrow = []
            jrow = []
            for (d, e) in pairs:
                m = index.get((glbt[a][d], lubt[b][e]))
                j = index.get((lubt[a][d], glbt[b][e]))
                if m is None or j is None:
                    closed = False
                    break
                mrow.append(m)
                jrow.append(j)
            if not closed:
                break
            kmeet.append(tuple(mrow))
            kjoin.append(tuple(jrow))
        if not closed:
            kmeet = kjoin = None
        else:
            kmeet = tuple(kmeet)
            kjoin = tuple(kjoin)
    return pairs, tuple(tuple(r) for r in kleq), inv, center, kbottom, ktop, kmeet, kjoin


def _pair_names(P, pairs):
    return [f"({P.name_of(a)},{P.name_of(b)})" for (a, b) in pairs]


def _build(P, *, arrow=None, star=None, weak_imp=None):
    pairs, kleq, inv, center, kbottom, ktop, kmeet, kjoin = _skeleton(
        P.leq, P.bottom, P.top, P.meet, P.join)
    algebra = FiniteAlgebra(
        kleq, names=_pair_names(P, pairs), meet=kmeet, join=kjoin,
        arrow=arrow, involution=inv, bottom=kbottom, top=ktop,
        center=center, validate=False)
    return KalmanAlgebra(source=P, pairs=pairs, algebra=algebra,
                         star=star, weak_imp=weak_imp)


def kalman_of_poset(P):
    """K over a poset with bottom: order, involution and center only."""
    if P.bottom is None:
        raise PreconditionError("pair construction requires a bottom element")
    return _build(P)


def kalman_of_semilattice(H):
    """K over a bounded semilattice."""
    report = check_bounded_semilattice(H)
    if not report.ok:
        raise PreconditionError(f"not a bounded semilattice: {report.violations[0]}")
    return _build(H)


def _kalman_arrow(H, pairs):
    """(a,b) -> (d,e) := ((a->d) ∧ (e->b), a ∧ e), pairwise."""
    arrow = H.arrow
    glbt = H.glb_table
    index = _pair_lookup(pairs)
    table = []
    for (a, b) in pairs:
        arr_a = arrow[a]
        row = []
        for (d, e) in pairs:
            first = glbt[arr_a[d]][arrow[e][b]]
            second = glbt[a][e]
            target = index.get((first, second))
            if target is None:
                raise TheoremViolationError(
                    f"computed implication ({first},{second}) left the pair set "
                    f"for arguments ({a},{b}) -> ({d},{e})")
            row.append(target)
        table.append(tuple(row))
    return tuple(table)


def kalman_of_his(H):
    """K over a bounded hemi-implicative semilattice, with the pairwise
    implication attached."""
    if H.bottom is None:
        raise PreconditionError("pair construction requires a bottom element")
    report = check_hemi_implicative_semilattice(H)
    if not report.ok:
        raise PreconditionError(
            f"not a hemi-implicative semilattice: {report.violations[0]}")
    kalg = _build(H)
    arrow = _kalman_arrow(H, kalg.pairs)
    return KalmanAlgebra(source=H, pairs=kalg.pairs,
                         algebra=kalg.algebra.with_ops(arrow=arrow, validate=False))


def kalman_of_bdl(H):
    """K over a bounded distributive lattice: a centered Kleene algebra."""
    if not (H.meet_total and H.join_total and H.bottom is not None
            and H.top is not None):
        raise PreconditionError("pair construction over a lattice requires "
                                "total meet/join and both bounds")
    ok, witness = is_distributive_lattice(H)
    if not ok:
        raise PreconditionError(f"lattice is not distributive at {witness}")
    kalg = _build(H)
    if kalg.algebra.meet is None:
        raise TheoremViolationError(
            "componentwise lattice operations left the pair set on a "
            "distributive source")
    return kalg


def kalman_of_heyting(H):
    """K over a Heyting algebra, with residuated-lattice tables attached.

    The arrow is the pairwise implication, the monoid is
    (a,b)*(d,e) = (a∧d, (a->e)∧(d->b)), and the weak implication is
    (a,b)=>(d,e) = (a->d, a∧e).
    """
    report = check_heyting(H)
    if not report.ok:
        raise PreconditionError(f"not a Heyting algebra: {report.violations[0]}")
    kalg = kalman_of_bdl(H)
    pairs = kalg.pairs
    index = _pair_lookup(pairs)
    arrow_h = H.arrow
    glbt = H.glb_table
    star = []
    weak = []
    for (a, b) in pairs:
        srow = []
        wrow = []
        for (d, e) in pairs:
            s = (glbt[a][d], glbt[arrow_h[a][e]][arrow_h[d][b]])
            w = (arrow_h[a][d], glbt[a][e])
            if s not in index or w not in index:
                raise TheoremViolationError(
                    f"residuated operation left the pair set at ({a},{b}),({d},{e})")
            srow.append(index[s])
            wrow.append(index[w])
        star.append(tuple(srow))
        weak.append(tuple(wrow))
    arrow = _kalman_arrow(H, pairs)
    return KalmanAlgebra(source=H, pairs=pairs,
                         algebra=kalg.algebra.with_ops(arrow=arrow, validate=False),
                         star=tuple(star), weak_imp=tuple(weak))


KALMAN_CONSTRUCTIONS = {
    "poset": kalman_of_poset,
    "ms": kalman_of_semilattice,
    "his": kalman_of_his,
    "bdl": kalman_of_bdl,
    "ha": kalman_of_heyting,
}


# -- center --------------------------------------------------------------

def center_elements(T):
    """Original indices of the elements above the center, ascending."""
    if T.center is None:
        raise PreconditionError("center construction requires a center element")
    c = T.center
    return tuple(x for x in range(T.size) if T.leq[c][x])


def center_algebra(T):
    """The subalgebra of elements >= center, re-indexed ascending.

    The restricted meet must be total (it is whenever the source
    satisfies the meet-existence condition for elements above the
    center); the arrow, when present, must stay inside the carrier,
    which is exactly the first K-condition on the input.
    """
    elems = center_elements(T)
    pos = {x: i for i, x in enumerate(elems)}
    m = len(elems)
    leq = [[T.leq[elems[i]][elems[j]] for j in range(m)] for i in range(m)]
    glbt = T.glb_table
    meet = []
    for i in range(m):
        row = []
        for j in range(m):
            v = glbt[elems[i]][elems[j]]
            if v is None or v not in pos:
                raise InputError(
                    f"meet of {elems[i]} and {elems[j]} does not exist above "
                    "the center; input fails the meet-existence condition")
            row.append(pos[v])
        meet.append(tuple(row))
    lubt = T.lub_table
    join = []
    join_ok = True
    for i in range(m):
        row = []
        for j in range(m):
            v = lubt[elems[i]][elems[j]]
            if v is None:
                join_ok = False
                break
            row.append(pos[v])
        if not join_ok:
            break
        join.append(tuple(row))
    arrow = None
    if T.arrow is not None:
        arrow = []
        for i in range(m):
            row = []
            for j in range(m):
                v = T.arrow[elems[i]][elems[j]]
                if v not in pos:
                    raise InputError(
                        f"arrow is not closed above the center: "
                        f"{elems[i]} -> {elems[j]} = {v}; "
                        "input violates the first K-condition")
                row.append(pos[v])
            arrow.append(tuple(row))
    names = [T.name_of(x) for x in elems]
    return FiniteAlgebra(
        leq, names=names, meet=tuple(meet),
        join=tuple(join) if join_ok else None, arrow=arrow,
        bottom=pos[T.center],
        top=pos[T.top] if T.top is not None else None,
        validate=False)


# -- morphisms -----------------------------------------------------------

class Morphism:
    """A total map between two finite algebras with a recomputed
    preservation report.

    The isomorphism flag demands bijectivity plus two-sided order
    preservation plus preservation of every feature present on both
    sides; nothing is taken from how the map was constructed.
    """

    def __init__(self, dom, cod, mapping):
        mapping = tuple(mapping)
        if len(mapping) != dom.size:
            raise InputError("mapping length differs from domain size")
        for v in mapping:
            if not 0 <= v < cod.size:
                raise InputError(f"mapping value {v} out of codomain range")
        self.dom = dom
        self.cod = cod
        self.mapping = mapping

    def __call__(self, x):
        return self.mapping[x]

    @property
    def report(self):
        try:
            return self._report
        except AttributeError:
            self._report = self._compute_report()
            return self._report

    def _compute_report(self):
        dom, cod, f = self.dom, self.cod, self.mapping
        n = dom.size
        rep = {}
        rep["bijective"] = (len(set(f)) == n == cod.size)
        rep["order_preserving"] = all(
            cod.leq[f[a]][f[b]] for a in range(n) for b in range(n)
            if dom.leq[a][b])
        rep["order_reflecting"] = all(
            dom.leq[a][b] for a in range(n) for b in range(n)
            if cod.leq[f[a]][f[b]])
        dg, cg = dom.glb_table, cod.glb_table
        rep["preserves_existing_meets"] = all(
            cg[f[a]][f[b]] == f[dg[a][b]]
            for a in range(n) for b in range(n) if dg[a][b] is not None)
        dl, cl = dom.lub_table, cod.lub_table
        rep["preserves_existing_joins"] = all(
            cl[f[a]][f[b]] == f[dl[a][b]]
            for a in range(n) for b in range(n) if dl[a][b] is not None)
        if dom.arrow is not None and cod.arrow is not None:
            rep["preserves_arrow"] = all(
                f[dom.arrow[a][b]] == cod.arrow[f[a]][f[b]]
                for a in range(n) for b in range(n))
        if dom.involution is not None and cod.involution is not None:
            rep["preserves_involution"] = all(
                f[dom.involution[a]] == cod.involution[f[a]] for a in range(n))
        for const in ("bottom", "top", "center"):
            d = getattr(dom, const)
            c = getattr(cod, const)
            if d is not None and c is not None:
                rep[f"preserves_{const}"] = (f[d] == c)
        if dom.center is not None:
            cmask = [x for x in range(n) if dom.leq[dom.center][x]]
            rep["preserves_meets_above_center"] = all(
                cg[f[a]][f[b]] == f[dg[a][b]]
                for a in cmask for b in cmask if dg[a][b] is not None)
        return rep

    @property
    def injective(self):
        return len(set(self.mapping)) == self.dom.size

    @property
    def surjective(self):
        return len(set(self.mapping)) == self.cod.size

    @property
    def is_isomorphism(self):
        rep = self.report
        return all(rep.values())

    def __repr__(self):
        return f"Morphism({self.mapping})"


def compose(g, f):
    """g after f."""
    if f.cod.size != g.dom.size:
        raise InputError("composition size mismatch")
    return Morphism(f.dom, g.cod, tuple(g.mapping[v] for v in f.mapping))


def alpha_map(kalg):
    """a |-> (a, 0) from the source onto the center of its pair algebra.

    That this map is an isomorphism is a theorem about the construction,
    so it is asserted; a failure aborts loudly because it can only mean
    an implementation bug.
    """
    src = kalg.source
    T = kalg.algebra
    celems = center_elements(T)
    cpos = {x: i for i, x in enumerate(celems)}
    C = center_algebra(T)
    bottom = src.bottom
    mapping = [cpos[kalg.index_of(a, bottom)] for a in range(src.size)]
    morph = Morphism(src, C, mapping)
    if not morph.is_isomorphism:
        from .docio import serialize_algebra
        bad = [k for k, v in morph.report.items() if not v]
        raise TheoremViolationError(
            f"alpha is not an isomorphism (failing: {bad})",
            witness_text=serialize_algebra(src))
    return morph


def beta_map(T, level="auto"):
    """x |-> (x∨c, ∼x∨c) from T into the pair algebra of its center."""
    morph, _ = beta_with_kalman(T, level)
    return morph


def beta_with_kalman(T, level="auto"):
    """beta together with the freshly built pair algebra of the center.

    Injectivity is asserted unconditionally and surjectivity must agree
    with the interpolation condition; either mismatch aborts.
    """
    if T.center is None or T.involution is None:
        raise PreconditionError("beta requires involution and center")
    C = center_algebra(T)
    construct = _pick_level(C) if level == "auto" else KALMAN_CONSTRUCTIONS[level]
    kalg = construct(C)
    celems = center_elements(T)
    cpos = {x: i for i, x in enumerate(celems)}
    lubt = T.lub_table
    inv = T.involution
    c = T.center
    mapping = []
    for x in range(T.size):
        vee = lubt[x][c]
        nvee = lubt[inv[x]][c]
        if vee is None or nvee is None:
            raise PreconditionError(f"join with center missing for element {x}")
        mapping.append(kalg.index_of(cpos[vee], cpos[nvee]))
    morph = Morphism(T, kalg.algebra, mapping)
    if not morph.injective:
        from .docio import serialize_algebra
        raise TheoremViolationError("beta is not injective",
                                    witness_text=serialize_algebra(T))
    holds, _ = check_ck(T)
    if morph.surjective != holds:
        from .docio import serialize_algebra
        raise TheoremViolationError(
            "beta surjectivity disagrees with the interpolation condition",
            witness_text=serialize_algebra(T))
    return morph, kalg


def _pick_level(C):
    bounded = C.bottom is not None and C.top is not None
    if C.arrow is not None and C.meet_total and C.join_total and bounded:
        have_res = check_heyting(C).ok
        return kalman_of_heyting if have_res else kalman_of_his
    if C.arrow is not None:
        return kalman_of_his
    if (C.meet_total and C.join_total and bounded
            and is_distributive_lattice(C, require_bounds=False)[0]):
        return kalman_of_bdl
    if C.meet_total and bounded:
        return kalman_of_semilattice
    return kalman_of_poset


def kalman_of_morphism(f, construct):
    """Apply the construction to a morphism: (a, b) |-> (f a, f b).

    ``construct`` is one of the construction routines; it is applied to
    both endpoints.  A pair that maps outside the target pair set means
    the given map was not a morphism of the source category.
    """
    kd = construct(f.dom)
    kc = construct(f.cod)
    lookup = _pair_lookup(kc.pairs)
    mapping = []
    for (a, b) in kd.pairs:
        target = (f.mapping[a], f.mapping[b])
        if target not in lookup:
            raise InputError(
                f"pair {target} leaves the target pair set; the given map "
                "does not preserve existing meets into bottom")
        mapping.append(lookup[target])
    return Morphism(kd.algebra, kc.algebra, mapping)


# -- the interpolation condition and the K batteries ----------------------

def check_ck(T):
    """For all x, y >= c with x∧y = c there is z with z∨c = x, ∼z∨c = y.

    Depends only on the order, involution and center, so the outcome is
    cached per skeleton.
    """
    if T.center is None or T.involution is None:
        raise PreconditionError("interpolation check requires involution and center")
    return _check_ck_cached(T.leq, T.involution, T.center)


@lru_cache(maxsize=65536)
def _check_ck_cached(leq, involution, center):
    T = FiniteAlgebra(leq, involution=involution, center=center,
                      validate=False)
    n = T.size
    c = center
    glbt = T.glb_table
    lubt = T.lub_table
    inv = involution
    above = [x for x in range(n) if leq[c][x]]
    for x in above:
        gx = glbt[x]
        for y in above:
            if gx[y] != c:
                continue
            if not any(lubt[z][c] == x and lubt[inv[z]][c] == y
                       for z in range(n)):
                return False, (x, y)
    return True, None


K_CONDITION_NAMES = ("K1", "K2", "K3", "K4", "K5", "K6", "K7")


def _battery_context(T):
    if T.center is None or T.involution is None or T.arrow is None:
        raise PreconditionError("K batteries require involution, center and arrow")
    if T.top is None or T.bottom is None:
        raise PreconditionError("K batteries require both bounds")
    n = T.size
    lubt = T.lub_table
    c = T.center
    vee_c = []
    for x in range(n):
        v = lubt[x][c]
        if v is None:
            raise PreconditionError(f"join with center missing for element {x}")
        vee_c.append(v)
    return n, T.leq, T.glb_table, lubt, T.arrow, T.involution, c, T.top, vee_c


def check_k_conditions(T, which=("K1", "K2", "K3", "K4", "K5")):
    """Evaluate the requested K-conditions exhaustively.

    A meet or join required by a condition that does not exist counts as
    a violation of that condition, witnessed by the offending elements.
    """
    n, leq, glbt, lubt, arrow, inv, c, top, vee_c = _battery_context(T)
    violations = []
    for name in which:
        if name not in K_CONDITION_NAMES:
            raise InputError(f"unknown K-condition {name}")
        found = _K_EVALUATORS[name](n, leq, glbt, lubt, arrow, inv, c, top, vee_c)
        if found is not None:
            violations.append((name, found))
    return CheckReport(label="K-conditions", ok=not violations,
                       violations=tuple(violations))


def _k1(n, leq, glbt, lubt, arrow, inv, c, top, vee_c):
    for x in range(n):
        ax = arrow[x]
        for y in range(n):
            if not leq[c][ax[vee_c[y]]]:
                return (x, y)
    return None


def _k2(n, leq, glbt, lubt, arrow, inv, c, top, vee_c):
    for x in range(n):
        gx = glbt[x]
        axc = arrow[vee_c[x]]
        for y in range(n):
            vy = vee_c[y]
            m = gx[axc[vy]]
            if m is None or not leq[m][vy]:
                return (x, y)
    return None


def _k3(n, leq, glbt, lubt, arrow, inv, c, top, vee_c):
    for x in range(n):
        if arrow[x][x] != top:
            return (x,)
    return None


def _k4(n, leq, glbt, lubt, arrow, inv, c, top, vee_c):
    wedge_c = [glbt[x][c] for x in range(n)]
    for x in range(n):
        ax = arrow[x]
        wnx = wedge_c[inv[x]]
        for y in range(n):
            lhs = wedge_c[ax[y]]
            wy = wedge_c[y]
            if lhs is None or wnx is None or wy is None:
                return (x, y)
            rhs = lubt[wnx][wy]
            if rhs is None or lhs != rhs:
                return (x, y)
    return None


def _k5(n, leq, glbt, lubt, arrow, inv, c, top, vee_c):
    for x in range(n):
        ax = arrow[x]
        axc = arrow[vee_c[x]]
        for y in range(n):
            lhs = lubt[ax[inv[y]]][c]
            rhs = glbt[axc[vee_c[inv[y]]]][arrow[vee_c[y]][vee_c[inv[x]]]]
            if lhs is None or rhs is None or lhs != rhs:
                return (x, y)
    return None


def _k6(n, leq, glbt, lubt, arrow, inv, c, top, vee_c):
    for x in range(n):
        vx = vee_c[x]
        for y in range(n):
            vy = vee_c[y]
            m = glbt[vx][vy]
            if m is None or not leq[x][arrow[vy][m]]:
                return (x, y)
    return None


def _k7(n, leq, glbt, lubt, arrow, inv, c, top, vee_c):
    for x in range(n):
        ax = arrow[x]
        for y in range(n):
            vy = vee_c[y]
            axvy = ax[vy]
            for z in range(n):
                vz = vee_c[z]
                m = glbt[vy][vz]
                if m is None:
                    return (x, y, z)
                rhs = glbt[axvy][ax[vz]]
                if rhs is None or ax[m] != rhs:
                    return (x, y, z)
    return None


_K_EVALUATORS = {"K1": _k1, "K2": _k2, "K3": _k3, "K4": _k4, "K5": _k5,
                 "K6": _k6, "K7": _k7}


def check_km_conditions(T):
    """The order-level semilattice conditions on a centered structure.

    KM1 is the full Kleene-poset battery; KM2 the bounds; KM3 meet
    existence against elements above the center; KM4 the modular-style
    join/meet exchange for those elements.  None of it involves the
    arrow, so the outcome is cached per skeleton.
    """
    if T.center is None or T.involution is None:
        raise PreconditionError("KM battery requires involution and center")
    return _check_km_cached(T.leq, T.involution, T.center, T.bottom, T.top)


@lru_cache(maxsize=65536)
def _check_km_cached(leq, involution, center, bottom, top):
    T = FiniteAlgebra(leq, involution=involution, center=center,
                      bottom=bottom, top=top, validate=False)
    n = T.size
    leq = T.leq
    glbt = T.glb_table
    lubt = T.lub_table
    c = T.center
    violations = []
    kp = check_kleene_poset(T)
    if not kp.ok:
        violations.append(("KM1", kp.violations[0]))
    if T.bottom is None or any(not leq[T.bottom][j] for j in range(n)):
        violations.append(("KM2", ("bottom",)))
    elif T.top is None or any(not leq[j][T.top] for j in range(n)):
        violations.append(("KM2", ("top",)))
    above = [x for x in range(n) if leq[c][x]]
    found = None
    for x in above:
        gx = glbt[x]
        for y in range(n):
            if gx[y] is None:
                found = (x, y)
                break
        if found:
            break
    if found:
        violations.append(("KM3", found))
    else:
        found = None
        for x in above:
            gx = glbt[x]
            for y in range(n):
                vy = lubt[y][c]
                if vy is None:
                    found = (x, y)
                    break
                lhs = lubt[gx[y]][c]
                if lhs is None or lhs != gx[vy]:
                    found = (x, y)
                    break
            if found:
                break
        if found:
            violations.append(("KM4", found))
    return CheckReport(label="KM-conditions", ok=not violations,
                       violations=tuple(violations))


def check_khis_battery(T):
    """Everything a K-level implicative structure must satisfy: the KM
    battery plus the first five K-conditions."""
    km = check_km_conditions(T)
    k = check_k_conditions(T)
    violations = km.violations + k.violations
    return CheckReport(label="KhIS0", ok=not violations, violations=violations)


def check_khil_conditions(T):
    """The five Hilbert-level K-conditions."""
    n, leq, glbt, lubt, arrow, inv, c, top, vee_c = _battery_context(T)
    violations = []
    found = None
    for x in range(n):
        vx = vee_c[x]
        for y in range(n):
            if arrow[vx][arrow[y][vx]] != top:
                found = (x, y)
                break
        if found:
            break
    if found:
        violations.append(("KHil1", found))
    found = None
    for x in range(n):
        ax = arrow[x]
        for y in range(n):
            vy = vee_c[y]
            axvy = ax[vy]
            for z in range(n):
                vz = vee_c[z]
                if ax[arrow[vy][vz]] != arrow[axvy][ax[vz]]:
                    found = (x, y, z)
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(("KHil2", found))
    found = None
    for x in range(n):
        for y in range(n):
            if x != y and arrow[x][y] == top and arrow[y][x] == top:
                found = (x, y)
                break
        if found:
            break
    if found:
        violations.append(("KHil3", found))
    found = None
    for x in range(n):
        gx = glbt[x]
        axc = arrow[vee_c[x]]
        for y in range(n):
            vy = vee_c[y]
            lhs = gx[axc[vy]]
            rhs = gx[vy]
            if lhs is None or rhs is None or lhs != rhs:
                found = (x, y)
                break
        if found:
            break
    if found:
        violations.append(("KHil4", found))
    found = None
    for x in range(n):
        ax = arrow[x]
        for y in range(n):
            vy = vee_c[y]
            axvy = ax[vy]
            for z in range(n):
                vz = vee_c[z]
                m = glbt[vy][vz]
                if m is None:
                    found = (x, y, z)
                    break
                rhs = glbt[axvy][ax[vz]]
                if rhs is None or not leq[ax[m]][rhs]:
                    found = (x, y, z)
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(("KHil5", found))
    return CheckReport(label="KHil-conditions", ok=not violations,
                       violations=tuple(violations))


def check_ksh_condition(T):
    """The semi-Heyting-level exchange condition plus KHil4.

    On success the derived consequences (the sixth K-condition and the
    interpolation condition) are asserted; their failure would
    contradict a theorem and aborts.
    """
    n, leq, glbt, lubt, arrow, inv, c, top, vee_c = _battery_context(T)
    violations = []
    khil = check_khil_conditions(T)
    for name, witness in khil.violations:
        if name == "KHil4":
            violations.append((name, witness))
    found = None
    for x in range(n):
        gx = glbt[x]
        vx = vee_c[x]
        for y in range(n):
            vy = vee_c[y]
            ayz = arrow[vy]
            m_xy = glbt[vx][vy]
            if m_xy is None:
                found = (x, y, y)
                break
            axy = arrow[m_xy]
            for z in range(n):
                vz = vee_c[z]
                m_xz = glbt[vx][vz]
                lhs = gx[ayz[vz]]
                if m_xz is None or lhs is None:
                    found = (x, y, z)
                    break
                rhs = gx[axy[m_xz]]
                if rhs is None or lhs != rhs:
                    found = (x, y, z)
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(("KSH3", found))
    report = CheckReport(label="KSH-conditions", ok=not violations,
                         violations=tuple(violations))
    if report.ok:
        k6 = check_k_conditions(T, which=("K6",))
        holds, witness = check_ck(T)
        if not k6.ok or not holds:
            from .docio import serialize_algebra
            raise TheoremViolationError(
                "structure passes the KSH battery but fails a consequence "
                f"(K6 ok={k6.ok}, interpolation ok={holds})",
                witness_text=serialize_algebra(T))
    return report


def khil_default_arrow(T):
    """The four-case implication definable on any centered Kleene algebra."""
    report = check_centered_kleene(T)
    if not report.ok:
        raise PreconditionError(f"not a centered Kleene algebra: {report.violations[0]}")
    n = T.size
    leq = T.leq
    meet = T.glb_table
    join = T.lub_table
    inv = T.involution
    c = T.center
    top = T.top
    table = []
    for x in range(n):
        vx = join[x][c]
        wx = meet[x][c]
        nx = inv[x]
        row = []
        for y in range(n):
            up = leq[vx][join[y][c]]
            down = leq[wx][meet[y][c]]
            if up and down:
                v = top
            elif up:
                v = join[nx][meet[y][c]]
            elif down:
                v = join[y][meet[nx][c]]
            else:
                v = join[meet[join[y][c]][nx]][meet[join[nx][c]][y]]
            row.append(v)
        table.append(tuple(row))
    return tuple(table)
