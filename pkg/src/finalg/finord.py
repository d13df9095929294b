"""Finite posets and partial lattice operations.

Carriers are index ranges 0..n-1.  The order matrix ``leq`` is the single
source of truth: any supplied meet/join tables are verified against the
greatest-lower-bound / least-upper-bound relations derived from ``leq``
and rejected on mismatch.  Partial operations return an explicit
:class:`MeetResult` instead of a sentinel index, so "does not exist" is
always distinguishable from "equals bottom".
"""

from dataclasses import dataclass
from functools import cached_property

from .errors import InputError, PreconditionError


@dataclass(frozen=True)
class MeetResult:
    """Outcome of a partial glb/lub: either an element or nothing."""

    element: int | None = None

    @property
    def exists(self):
        return self.element is not None

    def __bool__(self):
        return self.exists


DOES_NOT_EXIST = MeetResult(None)


@dataclass(frozen=True)
class PosetReport:
    ok: bool
    violations: tuple  # of (axiom, witness tuple)


def validate_poset(leq):
    """Check reflexivity, antisymmetry and transitivity of a 0/1 matrix.

    Returns a :class:`PosetReport` listing every failing witness.  A
    non-square matrix is an input error, not a violation.
    """
    n = len(leq)
    for row in leq:
        if len(row) != n:
            raise InputError("leq matrix is not square")
    violations = []
    for i in range(n):
        if not leq[i][i]:
            violations.append(("reflexivity", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if leq[i][j] and leq[j][i]:
                violations.append(("antisymmetry", (i, j)))
    for i in range(n):
        for j in range(n):
            if not leq[i][j]:
                continue
            row_j = leq[j]
            row_i = leq[i]
            for k in range(n):
                if row_j[k] and not row_i[k]:
                    violations.append(("transitivity", (i, j, k)))
    return PosetReport(ok=not violations, violations=tuple(violations))


def _freeze_matrix(m):
    return tuple(tuple(int(x) for x in row) for row in m)


def _freeze_vector(v):
    return tuple(int(x) for x in v)


class FiniteAlgebra:
    """A finite partially ordered carrier with optional operation tables.

    Fields: ``leq`` (n x n 0/1 matrix), optional ``meet``/``join``/``arrow``
    index tables, optional ``involution`` index array, optional
    ``bottom``/``top``/``center`` element indices, optional ``names``.

    Instances are immutable after construction; derived tables such as
    the glb table are lazily cached.  Construction validates the order
    axioms and the consistency of every supplied table against ``leq``
    unless ``validate=False`` (used by generators that build structures
    from already-verified components).
    """

    __slots__ = (
        "leq", "names", "meet", "join", "arrow", "involution",
        "bottom", "top", "center", "__dict__",
    )

    def __init__(self, leq, *, names=None, meet=None, join=None, arrow=None,
                 involution=None, bottom=None, top=None, center=None,
                 validate=True):
        self.leq = _freeze_matrix(leq)
        n = len(self.leq)
        self.names = tuple(str(x) for x in names) if names is not None else None
        self.meet = _freeze_matrix(meet) if meet is not None else None
        self.join = _freeze_matrix(join) if join is not None else None
        self.arrow = _freeze_matrix(arrow) if arrow is not None else None
        self.involution = _freeze_vector(involution) if involution is not None else None
        self.bottom = bottom
        self.top = top
        self.center = center
        if validate:
            self._validate(n)

    @property
    def size(self):
        return len(self.leq)

    # -- validation ------------------------------------------------------

    def _validate(self, n):
        report = validate_poset(self.leq)
        if not report.ok:
            axiom, witness = report.violations[0]
            raise InputError(f"leq is not a partial order: {axiom} fails at {witness}")
        if self.names is not None:
            if len(self.names) != n:
                raise InputError("names length differs from carrier size")
            if len(set(self.names)) != n:
                raise InputError("names are not distinct")
        for label, table in (("meet", self.meet), ("join", self.join),
                             ("arrow", self.arrow)):
            if table is None:
                continue
            if len(table) != n or any(len(row) != n for row in table):
                raise InputError(f"{label} table is not {n}x{n}")
            for row in table:
                for v in row:
                    if not 0 <= v < n:
                        raise InputError(f"{label} table entry {v} out of range")
        # reference tables must come from leq, not from the supplied ones
        if self.meet is not None:
            ref = _bound_table(n, self.down_masks)
            for a in range(n):
                for b in range(n):
                    if self.meet[a][b] != ref[a][b]:
                        raise InputError(
                            f"meet table disagrees with glb at ({a},{b}): "
                            f"table has {self.meet[a][b]}, glb is {ref[a][b]}")
        if self.join is not None:
            ref = _bound_table(n, self.up_masks)
            for a in range(n):
                for b in range(n):
                    if self.join[a][b] != ref[a][b]:
                        raise InputError(
                            f"join table disagrees with lub at ({a},{b}): "
                            f"table has {self.join[a][b]}, lub is {ref[a][b]}")
        for label, idx in (("bottom", self.bottom), ("top", self.top),
                           ("center", self.center)):
            if idx is not None and not 0 <= idx < n:
                raise InputError(f"{label} index {idx} out of range")
        if self.bottom is not None and any(not self.leq[self.bottom][j] for j in range(n)):
            raise InputError("bottom is not below every element")
        if self.top is not None and any(not self.leq[j][self.top] for j in range(n)):
            raise InputError("top is not above every element")
        if self.involution is not None:
            if len(self.involution) != n:
                raise InputError("involution length differs from carrier size")
            if sorted(self.involution) != list(range(n)):
                raise InputError("involution is not a permutation")
            for i in range(n):
                if self.involution[self.involution[i]] != i:
                    raise InputError(f"involution is not self-inverse at {i}")
            if self.center is not None and self.involution[self.center] != self.center:
                raise InputError("center is not a fixed point of the involution")

    # -- derived tables --------------------------------------------------

    @cached_property
    def down_masks(self):
        """down_masks[i] = bitmask of {j : j <= i}."""
        n = self.size
        masks = []
        for i in range(n):
            m = 0
            for j in range(n):
                if self.leq[j][i]:
                    m |= 1 << j
            masks.append(m)
        return tuple(masks)

    @cached_property
    def up_masks(self):
        """up_masks[i] = bitmask of {j : i <= j}."""
        n = self.size
        masks = []
        for i in range(n):
            m = 0
            for j in range(n):
                if self.leq[i][j]:
                    m |= 1 << j
            masks.append(m)
        return tuple(masks)

    @cached_property
    def glb_table(self):
        """glb_table[a][b] is the greatest lower bound index, or None."""
        if self.meet is not None:
            return self.meet
        return _bound_table(self.size, self.down_masks)

    @cached_property
    def lub_table(self):
        if self.join is not None:
            return self.join
        return _bound_table(self.size, self.up_masks)

    @property
    def meet_total(self):
        return all(v is not None for row in self.glb_table for v in row)

    @property
    def join_total(self):
        return all(v is not None for row in self.lub_table for v in row)

    # -- identity --------------------------------------------------------

    def _key(self):
        return (self.leq, self.names, self.meet, self.join, self.arrow,
                self.involution, self.bottom, self.top, self.center)

    def __reduce__(self):
        # rebuild from fields, dropping lazily cached tables
        return (_rebuild_algebra, self._key())

    def __eq__(self, other):
        return isinstance(other, FiniteAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        feats = [f"n={self.size}"]
        for label in ("meet", "join", "arrow", "involution"):
            if getattr(self, label) is not None:
                feats.append(label)
        for label in ("bottom", "top", "center"):
            if getattr(self, label) is not None:
                feats.append(f"{label}={getattr(self, label)}")
        return f"FiniteAlgebra({', '.join(feats)})"

    def name_of(self, i):
        return self.names[i] if self.names is not None else str(i)

    def with_ops(self, **kwargs):
        """Return a copy with some tables/constants replaced."""
        fields = dict(names=self.names, meet=self.meet, join=self.join,
                      arrow=self.arrow, involution=self.involution,
                      bottom=self.bottom, top=self.top, center=self.center)
        validate = kwargs.pop("validate", True)
        fields.update(kwargs)
        return FiniteAlgebra(self.leq, validate=validate, **fields)


def _rebuild_algebra(leq, names, meet, join, arrow, involution, bottom, top,
                     center):
    return FiniteAlgebra(leq, names=names, meet=meet, join=join, arrow=arrow,
                         involution=involution, bottom=bottom, top=top,
                         center=center, validate=False)


def _bound_table(n, masks):
    """Greatest element of mask-intersections; shared by glb and lub."""
    table = []
    for a in range(n):
        row = []
        ma = masks[a]
        for b in range(n):
            common = ma & masks[b]
            found = None
            m = common
            while m:
                low = m & -m
                i = low.bit_length() - 1
                if common & ~masks[i] == 0:
                    found = i
                    break
                m ^= low
            row.append(found)
        table.append(tuple(row))
    return tuple(table)


def _check_index(P, a):
    if not 0 <= a < P.size:
        raise InputError(f"element index {a} out of range for carrier of size {P.size}")


def glb(P, a, b):
    """Greatest lower bound of {a, b} in P, as a MeetResult."""
    _check_index(P, a)
    _check_index(P, b)
    return MeetResult(P.glb_table[a][b])


def lub(P, a, b):
    """Least upper bound of {a, b} in P, as a MeetResult."""
    _check_index(P, a)
    _check_index(P, b)
    return MeetResult(P.lub_table[a][b])


def pair_index(n, a, b):
    """Lexicographic index of the pair (a, b) over a carrier of size n."""
    return a * n + b


def dual_product_order(P):
    """Order matrix of P x P^op on all pairs, indexed lexicographically.

    (a, b) precedes (d, e) iff a <= d and e <= b.
    """
    n = P.size
    leq = P.leq
    size = n * n
    out = [[0] * size for _ in range(size)]
    for a in range(n):
        for b in range(n):
            i = a * n + b
            row = out[i]
            for d in range(n):
                if not leq[a][d]:
                    continue
                base = d * n
                for e in range(n):
                    if leq[e][b]:
                        row[base + e] = 1
    return _freeze_matrix(out)


def is_distributive_lattice(P, *, require_bounds=True):
    """Test x∧(y∨z) = (x∧y)∨(x∧z) over all triples.

    Requires total meet and join (and bottom/top when ``require_bounds``).
    Returns (True, None) or (False, witness triple).
    """
    if not P.meet_total or not P.join_total:
        raise PreconditionError("distributivity test requires total meet and join")
    if require_bounds and (P.bottom is None or P.top is None):
        raise PreconditionError("distributivity test requires bottom and top")
    n = P.size
    meet = P.glb_table
    join = P.lub_table
    for x in range(n):
        mx = meet[x]
        for y in range(n):
            for z in range(n):
                if mx[join[y][z]] != join[mx[y]][mx[z]]:
                    return False, (x, y, z)
    return True, None
