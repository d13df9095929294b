"""Exhaustive enumeration of small algebras, isomorphism testing, and
counterexample hunting.

Lattices are generated by adding elements in linear-extension order with
strict down-sets chosen among down-closed subsets; meets are final as
soon as both arguments exist and joins are final as soon as any upper
bound exists, so both lattice conditions (and distributivity, when
requested) prune partial structures.  One representative per isomorphism
class is emitted by keeping only labelings whose upper-triangle reading
is the lexicographic minimum over all linear extensions, computed by
branch and bound; bottom is always element 0 and top element n-1.
"""

import itertools
from dataclasses import dataclass

from .errors import InputError, PreconditionError
from .finord import FiniteAlgebra
from . import varieties
from . import kalman as km


# -- lattice generation ----------------------------------------------------


def _completed_lattice(below):
    """Build leq matrix from below*-masks."""
    n = len(below)
    return tuple(tuple(1 if (below[j] >> i) & 1 else 0 for j in range(n))
                 for i in range(n))


def _key_of_labeling(below):
    """Upper-triangle column reading of the order, as a bit tuple."""
    n = len(below)
    out = []
    for k in range(1, n):
        bk = below[k]
        for i in range(k):
            out.append((bk >> i) & 1)
    return tuple(out)


def _canonical_key(below):
    """Lex-min upper-triangle reading over all linear extensions.

    Branch and bound: positions are filled in order; a position may take
    any unused element whose strict lower set is already placed, and a
    column lexicographically above the best prefix kills the branch.
    """
    n = len(below)
    down = [below[i] & ~(1 << i) for i in range(n)]
    best = [None]

    def rec(placed, placed_mask, key):
        depth = len(placed)
        if depth == n:
            best[0] = tuple(key)
            return
        candidates = [e for e in range(n)
                      if not (placed_mask >> e) & 1
                      and down[e] & ~placed_mask == 0]
        scored = []
        for e in candidates:
            col = tuple(1 if (down[e] >> placed[i]) & 1 else 0
                        for i in range(depth))
            scored.append((col, e))
        scored.sort()
        for col, e in scored:
            new_key = key + list(col)
            if best[0] is not None:
                prefix = best[0][:len(new_key)]
                if tuple(new_key) > prefix:
                    continue
            placed.append(e)
            rec(placed, placed_mask | (1 << e), new_key)
            placed.pop()

    rec([], 0, [])
    return best[0]


def _iter_down_closed(down, count, force=0):
    """All down-closed subsets of the first ``count`` elements containing
    the forced mask.  Elements are adjoined in increasing order, which
    reaches every down-closed superset exactly once."""
    subsets = [force]
    for e in range(count):
        if (force >> e) & 1:
            continue
        need = down[e]
        extra = []
        for s in subsets:
            if s & need == need:
                extra.append(s | (1 << e))
        subsets.extend(extra)
    return subsets


def _lattice_children(below, meets, joins, n, distributive):
    """Extensions of a partial bounded-lattice structure by one element."""
    k = len(below)
    down = [below[i] & ~(1 << i) for i in range(k)]
    is_top = (k == n - 1)
    if is_top:
        choices = [(1 << k) - 1]
    else:
        choices = _iter_down_closed(down, k, force=1)
    for D in choices:
        new_below = below + [D | (1 << k)]
        new_meets = [row[:] for row in meets] + [[None] * (k + 1)]
        for row in new_meets[:-1]:
            row.append(None)
        new_joins = [row[:] for row in joins] + [[None] * (k + 1)]
        for row in new_joins[:-1]:
            row.append(None)
        ok = True
        for j in range(k):
            if (D >> j) & 1:
                m = j
            else:
                clb = D & new_below[j]
                m = None
                mm = clb
                while mm:
                    low = mm & -mm
                    e = low.bit_length() - 1
                    if clb & ~new_below[e] == 0:
                        m = e
                        break
                    mm ^= low
                if m is None:
                    ok = False
                    break
            new_meets[j][k] = new_meets[k][j] = m
        if not ok:
            continue
        new_meets[k][k] = k
        new_joins[k][k] = k
        # joins become defined (or must be re-checked) for pairs under k
        members = [j for j in range(k) if (D >> j) & 1]
        for a_i in range(len(members)):
            a = members[a_i]
            for b in members[a_i:]:
                ubs = [x for x in range(k + 1)
                       if (new_below[x] >> a) & 1 and (new_below[x] >> b) & 1]
                least = None
                for u in ubs:
                    if all((new_below[x] >> u) & 1 for x in ubs):
                        least = u
                        break
                if least is None:
                    ok = False
                    break
                new_joins[a][b] = new_joins[b][a] = least
            if not ok:
                break
        if not ok:
            continue
        for j in range(k):
            if (D >> j) & 1:
                new_joins[j][k] = new_joins[k][j] = k
        if distributive and _distributive_conflict(new_meets, new_joins, k + 1):
            continue
        yield new_below, new_meets, new_joins


def _distributive_conflict(meets, joins, size):
    """A defined instance of x∧(y∨z) != (x∧y)∨(x∧z); final, so prunable."""
    for x in range(size):
        mx = meets[x]
        for y in range(size):
            mxy = mx[y]
            jy = joins[y]
            for z in range(y, size):
                yz = jy[z]
                if yz is None or mxy is None:
                    continue
                mxz = mx[z]
                if mxz is None:
                    continue
                lhs = mx[yz]
                rhs = joins[mxy][mxz]
                if lhs is not None and rhs is not None and lhs != rhs:
                    return True
    return False


def enumerate_lattices(n, distributive=False, modulo_iso=True):
    """Bounded lattices on n elements, one per isomorphism class when
    ``modulo_iso``; element 0 is bottom and n-1 is top."""
    if n < 1:
        raise InputError("carrier size must be at least 1")
    if n == 1:
        yield _finish_lattice([1], [[0]], [[0]])
        return

    def rec(below, meets, joins):
        if len(below) == n:
            if not modulo_iso or _key_of_labeling(below) == _canonical_key(below):
                yield _finish_lattice(below, meets, joins)
            return
        for child in _lattice_children(below, meets, joins, n, distributive):
            yield from rec(*child)

    yield from rec([1], [[0]], [[0]])


def _finish_lattice(below, meets, joins):
    n = len(below)
    leq = _completed_lattice(below)
    meet = tuple(tuple(row) for row in meets)
    join = tuple(tuple(row) for row in joins)
    return FiniteAlgebra(leq, meet=meet, join=join, bottom=0, top=n - 1,
                         validate=False)


# -- involutions over lattices ---------------------------------------------


def order_reversing_involutions(P):
    """All self-inverse bijections that reverse the order.

    Built by pairing the smallest unpaired element with every candidate
    partner; antitone consistency against already-paired elements prunes
    the branch early.
    """
    n = P.size
    leq = P.leq
    out = []
    assign = [None] * n

    def compatible(x, y):
        # x paired with y: check against every settled pair
        for a in range(n):
            fa = assign[a]
            if fa is None:
                continue
            for b, fb in ((x, y), (y, x)):
                if leq[a][b] and not leq[fb][fa]:
                    return False
                if leq[b][a] and not leq[fa][fb]:
                    return False
        return True

    def rec(free):
        if not free:
            out.append(tuple(assign))
            return
        x = free[0]
        for y in free:
            if not compatible(x, y):
                continue
            assign[x] = y
            assign[y] = x
            rec([z for z in free if z != x and z != y])
            assign[x] = None
            assign[y] = None

    rec(list(range(n)))
    return [f for f in out if _antitone(leq, f)]


def _antitone(leq, f):
    n = len(f)
    return all(leq[f[b]][f[a]] for a in range(n) for b in range(n)
               if leq[a][b])


def enumerate_de_morgan_family(n, label):
    """De Morgan / Kleene / centered Kleene algebras on n elements,
    modulo isomorphism."""
    out = []
    for base in enumerate_lattices(n, distributive=True, modulo_iso=True):
        group = []
        for inv in order_reversing_involutions(base):
            fixed = [x for x in range(n) if inv[x] == x]
            A = base.with_ops(involution=inv, validate=False)
            if label in ("Kleene", "CenteredKleene") and _kleene_fails(A):
                continue
            if label == "CenteredKleene":
                if len(fixed) != 1:
                    continue
                A = A.with_ops(center=fixed[0], validate=False)
            group.append(A)
        out.extend(_dedupe_isomorphic(group))
    return out


def _kleene_fails(A):
    n = A.size
    inv = A.involution
    meet = A.glb_table
    join = A.lub_table
    leq = A.leq
    for x in range(n):
        lo = meet[x][inv[x]]
        for y in range(n):
            if not leq[lo][join[y][inv[y]]]:
                return True
    return False


def _dedupe_isomorphic(algebras):
    kept = []
    for A in algebras:
        if not any(are_isomorphic(A, B)[0] for B in kept):
            kept.append(A)
    return kept


# -- arrow-table enumeration -------------------------------------------------


def his_cell_candidates(base):
    """Per-cell admissible values for the hemi-implicative family:
    the diagonal is pinned to top and cell (a,b) may hold any v with
    a∧v <= b."""
    n = base.size
    meet = base.glb_table
    leq = base.leq
    top = base.top
    cells = []
    for a in range(n):
        for b in range(n):
            if a == b:
                cells.append((top,))
            else:
                cells.append(tuple(v for v in range(n) if leq[meet[a][v]][b]))
    return cells


def iter_his_arrows(base):
    """Every arrow table making the base hemi-implicative, row by row."""
    n = base.size
    cells = his_cell_candidates(base)
    for flat in itertools.product(*cells):
        yield tuple(flat[i * n:(i + 1) * n] for i in range(n))


def count_his_arrows(base):
    total = 1
    for cell in his_cell_candidates(base):
        total *= len(cell)
    return total


def his_arrow_by_index(base, index):
    """Mixed-radix decoding of an arrow table; used by parallel shards."""
    n = base.size
    cells = his_cell_candidates(base)
    flat = []
    for cell in reversed(cells):
        index, r = divmod(index, len(cell))
        flat.append(cell[r])
    flat.reverse()
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


_ARROW_FILTERS = {
    "hIS0": varieties.check_hemi_implicative_semilattice,
    "Hil0": varieties.check_hilbert_with_infimum,
    "IS0": varieties.check_implicative_semilattice,
    "hBDL": varieties.check_hemi_implicative_lattice,
    "SH": varieties.check_semi_heyting,
    "HA": varieties.check_heyting,
}

_LATTICE_SIDE = ("hBDL", "SH", "HA")


def enumerate_arrow_tables(base, label):
    """Every arrow table putting the base in the named class.

    Candidates are pruned cell by cell with the hemi-implicative
    necessary conditions (all six supported classes satisfy them) and
    then filtered by the full class checker.
    """
    if label not in _ARROW_FILTERS:
        raise InputError(f"unsupported arrow class {label}")
    if not base.meet_total or base.top is None or base.bottom is None:
        raise PreconditionError("arrow enumeration requires a bounded "
                                "meet-semilattice base")
    if label in _LATTICE_SIDE and not base.join_total:
        raise PreconditionError(f"{label} needs a lattice base")
    checker = _ARROW_FILTERS[label]
    join = base.lub_table if label in _LATTICE_SIDE else base.join
    carrier = FiniteAlgebra(base.leq, names=base.names, meet=base.glb_table,
                            join=join, bottom=base.bottom, top=base.top,
                            validate=False)
    for arrow in iter_his_arrows(base):
        A = carrier.with_ops(arrow=arrow, validate=False)
        if checker(A).ok:
            yield A


def enumerate_nelson_lattices(n):
    """Nelson lattices on n elements, modulo isomorphism.

    The monoid table is enumerated directly: commutative, unit top,
    x*y below x∧y (all necessary), then associativity, residuation and
    the remaining axioms are checked; the arrow is the residuum.
    """
    out = []
    for base in enumerate_lattices(n, distributive=True, modulo_iso=True):
        group = []
        for star in _iter_monoid_tables(base):
            arrow = _residuum_of_star(base, star)
            if arrow is None:
                continue
            A = base.with_ops(arrow=arrow, validate=False)
            if varieties.check_nelson_lattice(A).ok:
                group.append(A)
        out.extend(_dedupe_isomorphic(group))
    return out


def _iter_monoid_tables(base):
    n = base.size
    meet = base.glb_table
    leq = base.leq
    down = [[v for v in range(n) if leq[v][x]] for x in range(n)]
    free = [(x, y) for x in range(n) for y in range(x, n)
            if x != base.top and y != base.top and x != base.bottom
            and y != base.bottom]

    def candidates(x, y):
        return down[meet[x][y]]

    def rec(i, table):
        if i == len(free):
            yield [row[:] for row in table]
            return
        x, y = free[i]
        for v in candidates(x, y):
            table[x][y] = table[y][x] = v
            yield from rec(i + 1, table)
        table[x][y] = table[y][x] = None

    table = [[None] * n for _ in range(n)]
    for z in range(n):
        table[base.top][z] = table[z][base.top] = z
        table[base.bottom][z] = table[z][base.bottom] = base.bottom
    for t in rec(0, table):
        if _associative(t, n):
            yield tuple(tuple(row) for row in t)


def _associative(table, n):
    for x in range(n):
        for y in range(n):
            txy = table[x][y]
            for z in range(n):
                if table[txy][z] != table[x][table[y][z]]:
                    return False
    return True


def _residuum_of_star(base, star):
    """arrow[a][b] = max{t : t*a <= b}, None-out if some max is missing."""
    n = base.size
    leq = base.leq
    arrow = []
    for a in range(n):
        row = []
        for b in range(n):
            sat = [t for t in range(n) if leq[star[t][a]][b]]
            best = None
            for t in sat:
                if all(leq[u][t] for u in sat):
                    best = t
                    break
            if best is None:
                return None
            row.append(best)
        arrow.append(tuple(row))
    return tuple(arrow)


# -- class-level enumeration -------------------------------------------------


def enumerate_algebras(label, max_size, modulo_iso=True):
    """Stream class members by size, then in canonical generation order."""
    for n in range(1, max_size + 1):
        yield from enumerate_algebras_of_size(label, n, modulo_iso)


def enumerate_algebras_of_size(label, n, modulo_iso=True):
    if label == "MS":
        for base in enumerate_lattices(n, distributive=False,
                                       modulo_iso=modulo_iso):
            yield FiniteAlgebra(base.leq, meet=base.meet, bottom=0, top=n - 1,
                                validate=False)
    elif label == "BDL":
        yield from enumerate_lattices(n, distributive=True,
                                      modulo_iso=modulo_iso)
    elif label == "Lattice":
        yield from enumerate_lattices(n, distributive=False,
                                      modulo_iso=modulo_iso)
    elif label in ("DeMorgan", "Kleene", "CenteredKleene"):
        yield from enumerate_de_morgan_family(n, label)
    elif label in ("hIS0", "Hil0", "IS0"):
        for base in enumerate_algebras_of_size("MS", n, modulo_iso):
            group = enumerate_arrow_tables(base, label)
            yield from (_dedupe_arrow_structures(base, group)
                        if modulo_iso else group)
    elif label in ("hBDL", "SH", "HA"):
        for base in enumerate_algebras_of_size("BDL", n, modulo_iso):
            group = enumerate_arrow_tables(base, label)
            yield from (_dedupe_arrow_structures(base, group)
                        if modulo_iso else group)
    elif label == "NelsonLattice":
        yield from enumerate_nelson_lattices(n)
    else:
        raise InputError(f"enumeration not supported for class {label}")


def lattice_automorphisms(base):
    n = base.size
    leq = base.leq
    perms = []
    for perm in itertools.permutations(range(n)):
        if all(leq[perm[i]][perm[j]] == leq[i][j]
               for i in range(n) for j in range(n)):
            perms.append(perm)
    return perms


def _dedupe_arrow_structures(base, group):
    """Arrow tables on a fixed base are isomorphic iff related by a base
    automorphism; keep the first member of each orbit."""
    autos = [(g, _inverse_perm(g)) for g in lattice_automorphisms(base)]
    n = base.size
    seen = set()
    for A in group:
        arrow = A.arrow
        orbit = min(
            tuple(tuple(g[arrow[ginv[i]][ginv[j]]] for j in range(n))
                  for i in range(n))
            for g, ginv in autos)
        if orbit not in seen:
            seen.add(orbit)
            yield A


def _inverse_perm(g):
    inv = [0] * len(g)
    for i, v in enumerate(g):
        inv[v] = i
    return tuple(inv)


# -- isomorphism -------------------------------------------------------------


def _signature(A):
    return (A.meet is not None, A.join is not None, A.arrow is not None,
            A.involution is not None, A.bottom is not None,
            A.top is not None, A.center is not None)


def _invariant_vector(A, x):
    n = A.size
    updeg = sum(A.leq[x][j] for j in range(n))
    downdeg = sum(A.leq[j][x] for j in range(n))
    inv_fixed = A.involution is not None and A.involution[x] == x
    return (updeg, downdeg, x == A.bottom, x == A.top, x == A.center,
            inv_fixed)


def are_isomorphic(A, B):
    """Bijection preserving the order both ways and every present table
    and constant.  Feature signatures must match; size mismatch is just
    a negative answer."""
    if _signature(A) != _signature(B):
        raise InputError("optional-feature signatures differ")
    if A.size != B.size:
        return False, None
    n = A.size
    inv_a = [_invariant_vector(A, x) for x in range(n)]
    inv_b = [_invariant_vector(B, x) for x in range(n)]
    if sorted(inv_a) != sorted(inv_b):
        return False, None
    candidates = [[y for y in range(n) if inv_b[y] == inv_a[x]]
                  for x in range(n)]
    order = sorted(range(n), key=lambda x: len(candidates[x]))
    mapping = [None] * n
    used = [False] * n

    def consistent(x, y, placed):
        for x2 in placed:
            y2 = mapping[x2]
            if A.leq[x][x2] != B.leq[y][y2] or A.leq[x2][x] != B.leq[y2][y]:
                return False
        return True

    placed = []

    def rec(i):
        if i == n:
            return _full_table_match(A, B, mapping)
        x = order[i]
        for y in candidates[x]:
            if used[y]:
                continue
            if not consistent(x, y, placed):
                continue
            mapping[x] = y
            used[y] = True
            placed.append(x)
            if rec(i + 1):
                return True
            placed.pop()
            used[y] = False
            mapping[x] = None
        return False

    if rec(0):
        return True, tuple(mapping)
    return False, None


def _full_table_match(A, B, f):
    n = A.size
    for label in ("meet", "join", "arrow"):
        ta, tb = getattr(A, label), getattr(B, label)
        if ta is not None:
            for i in range(n):
                for j in range(n):
                    if f[ta[i][j]] != tb[f[i]][f[j]]:
                        return False
    if A.involution is not None:
        for i in range(n):
            if f[A.involution[i]] != B.involution[f[i]]:
                return False
    for label in ("bottom", "top", "center"):
        va, vb = getattr(A, label), getattr(B, label)
        if va is not None and f[va] != vb:
            return False
    return True


# -- counterexample search ---------------------------------------------------


@dataclass(frozen=True)
class EnumerationSpec:
    target_class: str
    max_size: int
    modulo_iso: bool = True
    predicate: str = "ck"

    def __post_init__(self):
        if self.max_size < 1:
            raise InputError("max size must be at least 1")


@dataclass(frozen=True)
class SearchOutcome:
    status: str  # "AllSatisfy" | "CounterexampleFound"
    witness_text: str | None
    witness_detail: str | None
    examined: int
    retained: int


def _pred_ck(A):
    holds, witness = km.check_ck(A)
    if holds:
        return True, None
    return False, f"interpolation fails at pair {witness}"


def _kalman_auto(A):
    """Construction level matching the signature: arrow-bearing sources
    lift with the implication, distributive lattices at lattice level,
    anything else as a bounded semilattice."""
    from .finord import is_distributive_lattice

    if A.arrow is not None:
        return km.kalman_of_his(A), "his"
    if A.join is not None and is_distributive_lattice(A)[0]:
        return km.kalman_of_bdl(A), "bdl"
    return km.kalman_of_semilattice(A), "ms"


def _pred_kalman_ck(A):
    kalg, _ = _kalman_auto(A)
    holds, witness = km.check_ck(kalg.algebra)
    if holds:
        return True, None
    return False, f"pair algebra fails interpolation at {witness}"


def _pred_kalman_battery(A):
    kalg, level = _kalman_auto(A)
    T = kalg.algebra
    if level == "his":
        report = km.check_khis_battery(T)
        if not report.ok:
            return False, f"K battery fails: {report.violations[0]}"
        return True, None
    report = km.check_km_conditions(T)
    if not report.ok:
        return False, f"KM battery fails: {report.violations[0]}"
    if level == "bdl":
        kleene = varieties.check_centered_kleene(T)
        if not kleene.ok:
            return False, f"Kleene battery fails: {kleene.violations[0]}"
    holds, witness = km.check_ck(T)
    if not holds:
        return False, f"interpolation fails at {witness}"
    return True, None


def _pred_kalman_k6_ck(A):
    if A.arrow is None:
        return True, None  # vacuous without an implication
    kalg, _ = _kalman_auto(A)
    T = kalg.algebra
    if not km.check_k_conditions(T, which=("K6",)).ok:
        return True, None
    holds, witness = km.check_ck(T)
    if holds:
        return True, None
    return False, f"K6 holds but interpolation fails at {witness}"


def _pred_khil_default(A):
    arrow = km.khil_default_arrow(A)
    T = A.with_ops(arrow=arrow, validate=False)
    k = km.check_k_conditions(T)
    if not k.ok:
        return False, f"default arrow fails {k.violations[0]}"
    khil = km.check_khil_conditions(T)
    if not khil.ok:
        return False, f"default arrow fails {khil.violations[0]}"
    return True, None


def _pred_ksh_implies_ck(A):
    """Vacuously true unless the KSH battery passes; then the sixth
    K-condition and interpolation must both hold.

    Applies to pair-level structures directly; source-level structures
    with an arrow are lifted through the construction, and centered
    Kleene algebras without an arrow get the default implication.
    """
    from .errors import TheoremViolationError

    if A.involution is not None and A.center is not None:
        T = A if A.arrow is not None else A.with_ops(
            arrow=km.khil_default_arrow(A), validate=False)
    elif A.arrow is not None:
        T = km.kalman_of_his(A).algebra
    else:
        return True, None
    try:
        km.check_ksh_condition(T)
    except TheoremViolationError as exc:
        return False, str(exc)
    return True, None


PREDICATES = {
    "ck": _pred_ck,
    "kalman-ck": _pred_kalman_ck,
    "kalman-battery": _pred_kalman_battery,
    "kalman-k6-implies-ck": _pred_kalman_k6_ck,
    "khil-default-battery": _pred_khil_default,
    "ksh-implies-ck": _pred_ksh_implies_ck,
}


def find_counterexample(spec, jobs=1):
    """First class member (size order, then canonical order) failing the
    predicate, or a clean bill with counts."""
    if spec.predicate not in PREDICATES:
        raise InputError(f"unknown predicate {spec.predicate}; known: "
                         + ", ".join(sorted(PREDICATES)))
    predicate = PREDICATES[spec.predicate]
    examined = 0
    retained = 0
    stream = enumerate_algebras(spec.target_class, spec.max_size,
                                spec.modulo_iso)
    if jobs and jobs > 1:
        return _find_counterexample_parallel(spec, stream, jobs)
    for A in stream:
        examined += 1
        retained += 1
        holds, detail = predicate(A)
        if not holds:
            from .docio import serialize_algebra
            return SearchOutcome("CounterexampleFound", serialize_algebra(A),
                                 detail, examined, retained)
    return SearchOutcome("AllSatisfy", None, None, examined, retained)


def _eval_chunk(args):
    predicate_name, chunk = args
    predicate = PREDICATES[predicate_name]
    for offset, A in enumerate(chunk):
        holds, detail = predicate(A)
        if not holds:
            return offset, A, detail
    return None


def _find_counterexample_parallel(spec, stream, jobs):
    import multiprocessing

    predicate = spec.predicate
    examined = 0
    chunk_size = 64
    outcome = None
    with multiprocessing.Pool(jobs) as pool:
        while True:
            chunks = []
            base_indices = []
            for _ in range(jobs * 4):
                chunk = list(itertools.islice(stream, chunk_size))
                if not chunk:
                    break
                base_indices.append(examined)
                examined += len(chunk)
                chunks.append((predicate, chunk))
            if not chunks:
                break
            results = pool.map(_eval_chunk, chunks)
            hits = [(base_indices[i] + r[0], r[1], r[2])
                    for i, r in enumerate(results) if r is not None]
            if hits:
                hits.sort(key=lambda h: h[0])
                _, A, detail = hits[0]
                from .docio import serialize_algebra
                outcome = SearchOutcome(
                    "CounterexampleFound", serialize_algebra(A), detail,
                    hits[0][0] + 1, hits[0][0] + 1)
                break
    if outcome is not None:
        return outcome
    return SearchOutcome("AllSatisfy", None, None, examined, examined)
