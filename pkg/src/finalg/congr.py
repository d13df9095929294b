"""Congruences, well-behaved congruences, quotients, filters and the
associated term machinery.

Congruence enumeration closes principal congruences under join in the
partition lattice.  Well-behaved congruences are enumerated through
their restriction to the center subalgebra: the second defining clause
is an "if and only if", so a well-behaved congruence is determined by
that restriction, which caps the candidates at the equivalence
relations on the center; each candidate is then checked against all
three defining clauses from scratch.  A plain all-partitions scan is
kept available as an independent oracle for small carriers.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import InputError, PreconditionError, TheoremViolationError
from .finord import FiniteAlgebra, validate_poset
from .kalman import center_elements, check_k_conditions, check_km_conditions


@dataclass(frozen=True)
class Congruence:
    """An equivalence relation given by block ids; the id of a block is
    its smallest member, so representation is canonical."""

    n: int
    block: tuple

    def __post_init__(self):
        if len(self.block) != self.n:
            raise InputError("block assignment length differs from carrier size")
        for i, b in enumerate(self.block):
            if not 0 <= b <= i:
                raise InputError("block ids must be the smallest member")
            if self.block[b] != b:
                raise InputError(f"block id {b} is not canonical")

    def relates(self, a, b):
        return self.block[a] == self.block[b]

    def blocks(self):
        out = {}
        for i, b in enumerate(self.block):
            out.setdefault(b, []).append(i)
        return tuple(tuple(out[b]) for b in sorted(out))

    def num_blocks(self):
        return len(set(self.block))

    def refines(self, other):
        """Every block of self lies inside a block of other."""
        return all(other.block[i] == other.block[self.block[i]]
                   for i in range(self.n))

    def meet(self, other):
        pairs = {}
        block = []
        for i in range(self.n):
            key = (self.block[i], other.block[i])
            block.append(pairs.setdefault(key, i))
        return Congruence(self.n, tuple(block))

    @staticmethod
    def identity(n):
        return Congruence(n, tuple(range(n)))

    @staticmethod
    def total(n):
        return Congruence(n, (0,) * n)

    @staticmethod
    def from_blocks(n, blocks):
        assign = [None] * n
        for blk in blocks:
            root = min(blk)
            for x in blk:
                if not 0 <= x < n:
                    raise InputError(f"block element {x} out of range")
                if assign[x] is not None:
                    raise InputError(f"element {x} appears in two blocks")
                assign[x] = root
        if any(v is None for v in assign):
            raise InputError("blocks do not cover the carrier")
        return Congruence(n, tuple(assign))

    @staticmethod
    def from_pairs(n, pairs):
        """Equivalence closure of the given pairs (no operation closure)."""
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        return Congruence(n, tuple(find(i) for i in range(n)))


def all_partitions(n):
    """Every equivalence relation on 0..n-1, as canonical Congruences."""
    def rec(i, assign, roots):
        if i == n:
            yield Congruence(n, tuple(assign))
            return
        for r in roots:
            assign.append(r)
            yield from rec(i + 1, assign, roots)
            assign.pop()
        assign.append(i)
        yield from rec(i + 1, assign, roots + [i])
        assign.pop()

    yield from rec(0, [], [])


def _normalize_ops(n, ops):
    unary, binary = [], []
    for table in ops:
        if table is None:
            continue
        if table and isinstance(table[0], (tuple, list)):
            if len(table) != n or any(len(r) != n for r in table):
                raise InputError("operation table size mismatch")
            binary.append(tuple(tuple(r) for r in table))
        else:
            if len(table) != n:
                raise InputError("operation table size mismatch")
            unary.append(tuple(table))
    return unary, binary


def is_compatible(theta, ops):
    """Compatibility of an equivalence with the given operation tables."""
    unary, binary = _normalize_ops(theta.n, ops)
    blk = theta.block
    n = theta.n
    for f in unary:
        for a in range(n):
            b = blk[a]
            if b != a and blk[f[a]] != blk[f[b]]:
                return False
    for f in binary:
        for a in range(n):
            b = blk[a]
            if b == a:
                continue
            fa, fb = f[a], f[b]
            for z in range(n):
                if blk[fa[z]] != blk[fb[z]] or blk[f[z][a]] != blk[f[z][b]]:
                    return False
    return True


def _principal_congruence(n, unary, binary, seed_pairs):
    """Smallest equivalence containing the seeds and compatible with the
    operations, by closure."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[max(ra, rb)] = min(ra, rb)
        return True

    for a, b in seed_pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        classes = {}
        for x in range(n):
            classes.setdefault(find(x), []).append(x)
        for members in classes.values():
            rep = members[0]
            for x in members[1:]:
                for f in unary:
                    if union(f[rep], f[x]):
                        changed = True
                for f in binary:
                    frep, fx = f[rep], f[x]
                    for z in range(n):
                        if union(frep[z], fx[z]):
                            changed = True
                        if union(f[z][rep], f[z][x]):
                            changed = True
    return Congruence(n, tuple(find(i) for i in range(n)))


def congruence_generated(H, ops, pairs):
    """Congruence of (H, ops) generated by the given pairs."""
    unary, binary = _normalize_ops(H.size, ops)
    return _principal_congruence(H.size, unary, binary, pairs)


def enumerate_congruences(H, ops):
    """All equivalences compatible with every listed operation.

    Principal congruences are closed under pairwise join (join of two
    congruences is the op-closure of their union) until stable.
    """
    n = H.size
    unary, binary = _normalize_ops(n, ops)
    found = {Congruence.identity(n)}
    principals = []
    for a in range(n):
        for b in range(a + 1, n):
            principals.append(_principal_congruence(n, unary, binary, [(a, b)]))
    found.update(principals)
    frontier = list(found)
    while frontier:
        new = []
        for theta in frontier:
            for p in principals:
                if p.refines(theta):
                    continue
                joined = _principal_congruence(
                    n, unary, binary,
                    [(i, theta.block[i]) for i in range(n)]
                    + [(i, p.block[i]) for i in range(n)])
                if joined not in found:
                    found.add(joined)
                    new.append(joined)
        frontier = new
    return sorted(found, key=lambda t: t.block)


def algebra_ops(H):
    """The operation tables present on H, for congruence computations."""
    ops = []
    if H.meet_total:
        ops.append(H.glb_table)
    if H.join_total:
        ops.append(H.lub_table)
    if H.arrow is not None:
        ops.append(H.arrow)
    if H.involution is not None:
        ops.append(H.involution)
    return ops


# -- well-behaved congruences ---------------------------------------------

def _center_context(T):
    if T.center is None or T.involution is None:
        raise PreconditionError("well-behaved congruences require involution and center")
    n = T.size
    c = T.center
    lubt = T.lub_table
    vee_c = []
    for x in range(n):
        v = lubt[x][c]
        if v is None:
            raise PreconditionError(f"join with center missing for element {x}")
        vee_c.append(v)
    return n, c, vee_c, center_elements(T)


def is_well_behaved(T, theta, *, c3_over_all=False):
    """The three defining clauses, checked from scratch.

    ``c3_over_all`` widens the third clause from the center subalgebra
    to the whole carrier; this is a diagnostic only, not part of the
    definition.
    Returns (ok, None) or (False, (clause, witness)).
    """
    n, c, vee_c, celems = _center_context(T)
    if theta.n != n:
        raise InputError("congruence carrier size mismatch")
    blk = theta.block
    inv = T.involution
    if T.arrow is None:
        raise PreconditionError("clause C1 requires an arrow table")
    arrow = T.arrow
    for a in range(n):
        b = blk[a]
        if b != a and blk[inv[a]] != blk[inv[b]]:
            return False, ("C1", (a, b))
    for a in range(n):
        b = blk[a]
        if b == a:
            continue
        aa, ab = arrow[a], arrow[b]
        for z in range(n):
            if blk[aa[z]] != blk[ab[z]] or blk[arrow[z][a]] != blk[arrow[z][b]]:
                return False, ("C1", (a, b, z))
    for x in range(n):
        for y in range(n):
            related = blk[x] == blk[y]
            both = (blk[vee_c[x]] == blk[vee_c[y]]
                    and blk[vee_c[inv[x]]] == blk[vee_c[inv[y]]])
            if related != both:
                return False, ("C2", (x, y))
    glbt = T.glb_table
    domain = range(n) if c3_over_all else celems
    for x in domain:
        for y in domain:
            if blk[x] != blk[y]:
                continue
            for z in domain:
                for w in domain:
                    if blk[z] != blk[w]:
                        continue
                    mxz = glbt[x][z]
                    myw = glbt[y][w]
                    if mxz is None or myw is None or blk[mxz] != blk[myw]:
                        return False, ("C3", (x, y, z, w))
    return True, None


def gamma_restrict(T, theta):
    """Restriction of a well-behaved congruence to the center carrier,
    re-indexed to center positions."""
    celems = center_elements(T)
    m = len(celems)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)
             if theta.relates(celems[i], celems[j])]
    return Congruence.from_pairs(m, pairs)


def sigma_expand(T, tau):
    """Lift of a center congruence: x related to y iff both x∨c, y∨c and
    ∼x∨c, ∼y∨c are related under tau.

    The lift of a genuine center congruence is always well-behaved; a
    failure aborts because it contradicts a theorem.
    """
    n, c, vee_c, celems = _center_context(T)
    pos = {x: i for i, x in enumerate(celems)}
    if tau.n != len(celems):
        raise InputError("center congruence carrier size mismatch")
    C = _center_subalgebra(T)
    # the center lives in the meet-arrow signature here; join
    # compatibility is not part of the contract (it follows anyway when
    # the center is distributive)
    ops = [C.glb_table] + ([C.arrow] if C.arrow is not None else [])
    if not is_compatible(tau, ops):
        raise PreconditionError("relation on the center is not a congruence there")
    inv = T.involution
    pairs = []
    for x in range(n):
        for y in range(x + 1, n):
            if (tau.relates(pos[vee_c[x]], pos[vee_c[y]])
                    and tau.relates(pos[vee_c[inv[x]]], pos[vee_c[inv[y]]])):
                pairs.append((x, y))
    theta = Congruence.from_pairs(n, pairs)
    ok, detail = is_well_behaved(T, theta)
    if not ok:
        from .docio import serialize_algebra
        raise TheoremViolationError(
            f"lift of a center congruence is not well-behaved: {detail}",
            witness_text=serialize_algebra(T))
    return theta


def _center_subalgebra(T):
    from .kalman import center_algebra
    return center_algebra(T)


@lru_cache(maxsize=4096)
def _lift_data(leq, involution, center):
    """Per-skeleton lift table: for every partition of the center
    carrier, the lifted relation on the whole carrier plus the
    arrow-independent clause outcomes.

    The lift of any partition satisfies the biconditional clause by
    construction and is automatically compatible with the involution
    (swapping x with ∼x swaps the two conjuncts defining the lift).
    The meet-compatibility clause quantifies only over center elements,
    where the lift restricts back to the partition, so it holds exactly
    when the partition respects the center meet.  Only compatibility
    with the arrow remains input-dependent.
    """
    T = FiniteAlgebra(leq, involution=involution, center=center,
                      validate=False)
    n = T.size
    c = center
    lubt = T.lub_table
    glbt = T.glb_table
    vee_c = []
    for x in range(n):
        v = lubt[x][c]
        if v is None:
            raise PreconditionError(f"join with center missing for element {x}")
        vee_c.append(v)
    celems = tuple(x for x in range(n) if leq[c][x])
    pos = {x: i for i, x in enumerate(celems)}
    m = len(celems)
    cmeet = tuple(tuple(pos[glbt[celems[i]][celems[j]]] for j in range(m))
                  for i in range(m))
    inv = involution
    entries = []
    for tau in all_partitions(m):
        pairs = []
        for x in range(n):
            for y in range(x + 1, n):
                if (tau.relates(pos[vee_c[x]], pos[vee_c[y]])
                        and tau.relates(pos[vee_c[inv[x]]], pos[vee_c[inv[y]]])):
                    pairs.append((x, y))
        theta = Congruence.from_pairs(n, pairs)
        meet_ok = is_compatible(tau, [cmeet])
        entries.append((tau, theta, meet_ok))
    return celems, tuple(entries)


def lifted_center_partitions(T):
    """(tau, theta, meet_ok) for every partition tau of the center:
    theta is the lift of tau and meet_ok its center-meet compatibility."""
    if T.center is None or T.involution is None:
        raise PreconditionError("lifts require involution and center")
    _, entries = _lift_data(T.leq, T.involution, T.center)
    return entries


def enumerate_wb_congruences(T):
    """All well-behaved congruences, in canonical order.

    The biconditional clause forces any well-behaved congruence to equal
    the lift of its center restriction, so scanning the partitions of
    the center is exhaustive; per lift only arrow compatibility needs
    checking (the remaining clauses are settled per skeleton, see
    ``_lift_data``).  ``enumerate_wb_congruences_bruteforce`` provides
    the assumption-free oracle.
    """
    if T.arrow is None:
        raise PreconditionError("well-behaved congruences require an arrow table")
    out = [theta for tau, theta, meet_ok in lifted_center_partitions(T)
           if meet_ok and is_compatible(theta, [T.arrow])]
    return sorted(set(out), key=lambda t: t.block)


def enumerate_wb_congruences_bruteforce(T):
    """Independent oracle: scan every partition of the carrier."""
    out = [theta for theta in all_partitions(T.size)
           if is_well_behaved(T, theta)[0]]
    return sorted(out, key=lambda t: t.block)


@lru_cache(maxsize=8192)
def _quotient_skeleton(leq, involution, center, bottom, top, block):
    """Arrow-independent part of a quotient: block order, induced
    involution and constants, poset validation, the order-level battery
    and projection monotonicity.  Cached per (skeleton, congruence)."""
    T = FiniteAlgebra(leq, involution=involution, center=center,
                      bottom=bottom, top=top, validate=False)
    n = T.size
    lubt = T.lub_table
    glbt = T.glb_table
    inv = involution
    c = center
    vee_c = [lubt[x][c] for x in range(n)]
    blk = block
    reps = tuple(sorted(set(blk)))
    index = {r: i for i, r in enumerate(reps)}
    m = len(reps)
    qleq = [[0] * m for _ in range(m)]
    for i, x in enumerate(reps):
        vx = vee_c[x]
        nx = vee_c[inv[x]]
        for j, y in enumerate(reps):
            vy = vee_c[y]
            ny = vee_c[inv[y]]
            a = glbt[vx][vy]
            b = glbt[ny][nx]
            if a is None or b is None:
                raise PreconditionError(
                    f"quotient order undefined at blocks of ({x},{y})")
            if blk[a] == blk[vx] and blk[b] == blk[ny]:
                qleq[i][j] = 1
    report = validate_poset(qleq)
    if not report.ok:
        return None, f"quotient order is not a partial order: {report.violations[0]}"
    qinv = tuple(index[blk[inv[x]]] for x in reps)
    Q0 = FiniteAlgebra(qleq, involution=qinv,
                       bottom=index[blk[bottom]] if bottom is not None else None,
                       top=index[blk[top]] if top is not None else None,
                       center=index[blk[c]], validate=False)
    if Q0.meet_total:
        Q0 = Q0.with_ops(meet=Q0.glb_table, validate=False)
    if Q0.join_total:
        Q0 = Q0.with_ops(join=Q0.lub_table, validate=False)
    km_report = check_km_conditions(Q0)
    if not km_report.ok:
        return None, f"quotient fails the order battery: {km_report.violations[0]}"
    for x in range(n):
        qx = index[blk[x]]
        for y in range(n):
            if leq[x][y] and not qleq[qx][index[blk[y]]]:
                return None, f"projection is not monotone at ({x},{y})"
    return (reps, index, Q0), None


def quotient_wb(T, theta, *, full_check=True, assume_wb=False):
    """Quotient by a well-behaved congruence.

    The order on blocks comes from the quotient-order definition (both
    the join-side and the involution-side memberships); the involution
    and arrow drop blockwise.  The result must be a poset and pass the
    full K-level battery; a failure aborts since the quotient theorem
    guarantees both.  ``assume_wb`` skips re-verifying the precondition
    when the caller just established it.
    """
    if not assume_wb:
        ok, detail = is_well_behaved(T, theta)
        if not ok:
            raise PreconditionError(f"congruence is not well-behaved: {detail}")
    skeleton, failure = _quotient_skeleton(
        T.leq, T.involution, T.center, T.bottom, T.top, theta.block)
    if failure is not None:
        from .docio import serialize_algebra
        raise TheoremViolationError(failure, witness_text=serialize_algebra(T))
    reps, index, Q0 = skeleton
    blk = theta.block
    arrow = T.arrow
    qarrow = tuple(tuple(index[blk[arrow[x][y]]] for y in reps) for x in reps)
    names = None
    if T.names is not None:
        names = ["{" + ",".join(T.name_of(i) for i in range(T.size)
                                if blk[i] == r) + "}" for r in reps]
    Q = Q0.with_ops(arrow=qarrow, names=names, validate=False)
    if full_check:
        k_report = check_k_conditions(Q)
        if not k_report.ok:
            from .docio import serialize_algebra
            raise TheoremViolationError(
                f"quotient fails the K battery: {k_report.violations[0]}",
                witness_text=serialize_algebra(T))
    return Q


# -- filters and term machinery -------------------------------------------

@dataclass(frozen=True)
class Filter:
    """An up-closed, meet-closed, nonempty subset, as a 0/1 membership
    vector."""

    membership: tuple

    def members(self):
        return tuple(i for i, v in enumerate(self.membership) if v)

    def __contains__(self, x):
        return bool(self.membership[x])

    @property
    def n(self):
        return len(self.membership)


def is_filter(H, subset):
    members = [i for i, v in enumerate(subset) if v]
    if not members:
        return False
    for x in members:
        if any(H.leq[x][y] and not subset[y] for y in range(H.size)):
            return False
    glbt = H.glb_table
    for x in members:
        for y in members:
            m = glbt[x][y]
            if m is None or not subset[m]:
                return False
    return True


def enumerate_filters(H):
    """All filters, ordered by membership vector."""
    if not H.meet_total:
        raise PreconditionError("filter enumeration requires a total meet")
    n = H.size
    out = []
    for bits in range(1, 1 << n):
        subset = tuple((bits >> i) & 1 for i in range(n))
        if is_filter(H, subset):
            out.append(Filter(subset))
    return sorted(out, key=lambda f: f.membership)


def biimp(H, a, b):
    """(a->b) ∧ (b->a)."""
    m = H.glb_table[H.arrow[a][b]][H.arrow[b][a]]
    if m is None:
        raise InputError(f"biimplication meet missing at ({a},{b})")
    return m


def t_term(H, a, b, f):
    """(a->b) <-> ((a∧f) -> (b∧f))."""
    if H.arrow is None:
        raise PreconditionError("t-term requires an arrow table")
    glbt = H.glb_table
    af = glbt[a][f]
    bf = glbt[b][f]
    if af is None or bf is None:
        raise InputError(f"t-term meet missing at ({a},{b},{f})")
    return biimp(H, H.arrow[a][b], H.arrow[af][bf])


def is_congruent_filter(H, F):
    """Closure of the filter under all t-terms with parameter in it."""
    if H.arrow is None:
        raise PreconditionError("congruent-filter test requires an arrow table")
    for f in F.members():
        for a in range(H.size):
            for b in range(H.size):
                if t_term(H, a, b, f) not in F:
                    return False, (a, b, f)
    return True, None


def theta_of_filter(H, F):
    """The relation a ~ b iff a∧f = b∧f for some member f.

    Defined from the meet characterization; requires a congruent filter
    and the result is verified to be a congruence of the meet-arrow
    signature (with the join as well when the carrier is a distributive
    lattice, where that follows).
    """
    ok, witness = is_congruent_filter(H, F)
    if not ok:
        raise PreconditionError(f"filter is not congruent (witness {witness})")
    n = H.size
    glbt = H.glb_table
    members = F.members()
    pairs = []
    for a in range(n):
        for b in range(a + 1, n):
            if any(glbt[a][f] == glbt[b][f] for f in members):
                pairs.append((a, b))
    theta = Congruence.from_pairs(n, pairs)
    ops = [glbt] + ([H.arrow] if H.arrow is not None else [])
    if not is_compatible(theta, ops):
        from .docio import serialize_algebra
        raise TheoremViolationError(
            "filter relation is not a congruence",
            witness_text=serialize_algebra(H))
    return theta


def _close_filter(H, subset):
    """Up-closure and meet-closure of a subset, to a fixpoint."""
    n = H.size
    glbt = H.glb_table
    leq = H.leq
    current = set(subset)
    changed = True
    while changed:
        changed = False
        for x in list(current):
            for y in range(n):
                if leq[x][y] and y not in current:
                    current.add(y)
                    changed = True
        for x in list(current):
            for y in list(current):
                m = glbt[x][y]
                if m is None:
                    raise InputError("meet missing during filter closure")
                if m not in current:
                    current.add(m)
                    changed = True
    return current


def congruent_filter_generated(H, X):
    """Least congruent filter containing X, by fixpoint iteration:
    close up and under meets, adjoin all t-terms with parameters inside,
    repeat until stable."""
    if H.arrow is None or H.top is None:
        raise PreconditionError("congruent filter generation requires arrow and top")
    current = _close_filter(H, set(X) | {H.top})
    n = H.size
    while True:
        new = set(current)
        for f in current:
            for a in range(n):
                for b in range(n):
                    new.add(t_term(H, a, b, f))
        new = _close_filter(H, new)
        if new == current:
            break
        current = new
    return Filter(tuple(1 if i in current else 0 for i in range(n)))


def principal_wb_congruence(T, pairs):
    """Least well-behaved congruence containing the pairs, computed by
    intersecting the enumerated lattice (the total relation always
    qualifies, so the intersection is over a nonempty family)."""
    candidates = [theta for theta in enumerate_wb_congruences(T)
                  if all(theta.relates(a, b) for a, b in pairs)]
    if not candidates:
        raise TheoremViolationError(
            "no well-behaved congruence contains the pairs; the total "
            "relation should always qualify")
    result = candidates[0]
    for theta in candidates[1:]:
        result = result.meet(theta)
    return result


def q_term(T, x, y):
    """((x∨c) <-> (y∨c)) ∧ ((∼x∨c) <-> (∼y∨c))."""
    if T.arrow is None or T.involution is None or T.center is None:
        raise PreconditionError("q-term requires arrow, involution and center")
    lubt = T.lub_table
    c = T.center
    inv = T.involution
    vx, vy = lubt[x][c], lubt[y][c]
    nvx, nvy = lubt[inv[x]][c], lubt[inv[y]][c]
    if None in (vx, vy, nvx, nvy):
        raise InputError(f"join with center missing for q-term at ({x},{y})")
    m = T.glb_table[biimp(T, vx, vy)][biimp(T, nvx, nvy)]
    if m is None:
        raise InputError(f"q-term meet missing at ({x},{y})")
    return m
