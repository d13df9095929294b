"""Axiom checkers for the variety tower and the Nelson translations.

Each checker scans exhaustively and reports at most one witness per
axiom, the first in lexicographic order, so reports are deterministic.
The residuation-style checkers record both characterizations they test
(the biconditional and the equational clauses) so disagreements between
the two routes are visible in the report rather than silently merged.
"""

from dataclasses import dataclass, field

from .errors import PreconditionError
from .finord import is_distributive_lattice

# Recognized variety labels, in classification output order.
LABELS = (
    "MS", "BDL", "DeMorgan", "Kleene", "CenteredKleene", "KleenePoset",
    "hIS0", "Hil0", "IS0", "hBDL", "SH", "HA", "NelsonLattice",
    "NelsonAlgebra",
)

# label -> label it entails; classify output must respect these.
INCLUSIONS = (
    ("IS0", "Hil0"),
    ("Hil0", "hIS0"),
    ("HA", "SH"),
    ("SH", "hBDL"),
    ("hBDL", "hIS0"),
    ("hBDL", "BDL"),
    ("BDL", "MS"),
    ("CenteredKleene", "Kleene"),
    ("Kleene", "DeMorgan"),
    ("DeMorgan", "BDL"),
    ("CenteredKleene", "KleenePoset"),
)


@dataclass(frozen=True)
class CheckReport:
    label: str
    ok: bool
    violations: tuple = field(default_factory=tuple)

    def axioms_failed(self):
        return tuple(a for a, _ in self.violations)


def _report(label, violations):
    return CheckReport(label=label, ok=not violations, violations=tuple(violations))


def _require(A, *, meet=False, join=False, arrow=False, involution=False,
             bottom=False, top=False, center=False, what=""):
    if meet and not A.meet_total:
        raise PreconditionError(f"{what} requires a total meet")
    if join and not A.join_total:
        raise PreconditionError(f"{what} requires a total join")
    if arrow and A.arrow is None:
        raise PreconditionError(f"{what} requires an arrow table")
    if involution and A.involution is None:
        raise PreconditionError(f"{what} requires an involution")
    if bottom and A.bottom is None:
        raise PreconditionError(f"{what} requires a bottom element")
    if top and A.top is None:
        raise PreconditionError(f"{what} requires a top element")
    if center and A.center is None:
        raise PreconditionError(f"{what} requires a center element")


def check_bounded_semilattice(H):
    """Total meet plus bottom and top (the MS label)."""
    violations = []
    if not H.meet_total:
        witness = next((a, b) for a in range(H.size) for b in range(H.size)
                       if H.glb_table[a][b] is None)
        violations.append(("meet-total", witness))
    if H.bottom is None:
        violations.append(("bottom", ()))
    if H.top is None:
        violations.append(("top", ()))
    return _report("MS", violations)


def check_bdl(H):
    """Bounded distributive lattice."""
    _require(H, meet=True, join=True, bottom=True, top=True,
             what="bounded distributive lattice check")
    ok, witness = is_distributive_lattice(H)
    return _report("BDL", [] if ok else [("distributivity", witness)])


def check_hemi_implicative_semilattice(H):
    """(W1) structurally, a->a = 1, and a∧(a->b) <= b for all a, b."""
    _require(H, meet=True, top=True, arrow=True,
             what="hemi-implicative semilattice check")
    n = H.size
    meet = H.glb_table
    arrow = H.arrow
    leq = H.leq
    top = H.top
    violations = []
    for a in range(n):
        if arrow[a][a] != top:
            violations.append(("W3", (a,)))
            break
    done = False
    for a in range(n):
        for b in range(n):
            if not leq[meet[a][arrow[a][b]]][b]:
                violations.append(("W2", (a, b)))
                done = True
                break
        if done:
            break
    return _report("hIS0", violations)


def _hilbert_violations(H):
    n = H.size
    arrow = H.arrow
    top = H.top
    violations = []
    found = None
    for a in range(n):
        for b in range(n):
            if arrow[a][arrow[b][a]] != top:
                found = ("H1", (a, b))
                break
        if found:
            break
    if found:
        violations.append(found)
    found = None
    for a in range(n):
        for b in range(n):
            for d in range(n):
                if arrow[a][arrow[b][d]] != arrow[arrow[a][b]][arrow[a][d]]:
                    found = ("H2", (a, b, d))
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(found)
    for a in range(n):
        hit = False
        for b in range(n):
            if a != b and arrow[a][b] == top and arrow[b][a] == top:
                violations.append(("H3", (a, b)))
                hit = True
                break
        if hit:
            break
    return violations


def check_hilbert_with_infimum(H):
    """Hilbert axioms plus the two compatibility conditions with meet."""
    _require(H, meet=True, top=True, arrow=True,
             what="Hilbert-with-infimum check")
    n = H.size
    meet = H.glb_table
    arrow = H.arrow
    leq = H.leq
    violations = list(_hilbert_violations(H))
    found = None
    for a in range(n):
        for b in range(n):
            if meet[a][arrow[a][b]] != meet[a][b]:
                found = ("meet-arrow", (a, b))
                break
        if found:
            break
    if found:
        violations.append(found)
    found = None
    for a in range(n):
        for b in range(n):
            for d in range(n):
                if not leq[arrow[a][meet[b][d]]][meet[arrow[a][b]][arrow[a][d]]]:
                    found = ("arrow-meet-subdistributive", (a, b, d))
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(found)
    return _report("Hil0", violations)


def check_implicative_semilattice(H):
    """Residuation a <= b->d iff a∧b <= d, with the clause breakdown.

    The report records the biconditional ("residuation") and which of
    the four equational clauses fail, so the two characterizations can
    be compared on any input.
    """
    _require(H, meet=True, top=True, arrow=True,
             what="implicative semilattice check")
    n = H.size
    meet = H.glb_table
    arrow = H.arrow
    leq = H.leq
    top = H.top
    violations = []
    found = None
    for a in range(n):
        for b in range(n):
            ab = meet[a][b]
            for d in range(n):
                if leq[a][arrow[b][d]] != leq[ab][d]:
                    found = ("residuation", (a, b, d))
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(found)
    found = None
    for a in range(n):
        for b in range(n):
            if not leq[meet[a][arrow[a][b]]][b]:
                found = ("clause1", (a, b))
                break
        if found:
            break
    if found:
        violations.append(found)
    for a in range(n):
        if arrow[a][a] != top:
            violations.append(("clause2", (a,)))
            break
    found = None
    for a in range(n):
        for b in range(n):
            for d in range(n):
                if arrow[a][meet[b][d]] != meet[arrow[a][b]][arrow[a][d]]:
                    found = ("clause3", (a, b, d))
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(found)
    found = None
    for a in range(n):
        for b in range(n):
            if not leq[a][arrow[b][meet[a][b]]]:
                found = ("clause4", (a, b))
                break
        if found:
            break
    if found:
        violations.append(found)
    return _report("IS0", violations)


def check_hemi_implicative_lattice(H):
    """Distributive bounded lattice whose meet-arrow reduct is in hIS0."""
    _require(H, meet=True, join=True, arrow=True, bottom=True, top=True,
             what="hemi-implicative lattice check")
    violations = []
    ok, witness = is_distributive_lattice(H)
    if not ok:
        violations.append(("distributivity", witness))
    violations.extend(check_hemi_implicative_semilattice(H).violations)
    return _report("hBDL", violations)


def check_semi_heyting(H):
    _require(H, meet=True, join=True, arrow=True, bottom=True, top=True,
             what="semi-Heyting check")
    n = H.size
    meet = H.glb_table
    arrow = H.arrow
    top = H.top
    violations = []
    ok, witness = is_distributive_lattice(H)
    if not ok:
        violations.append(("SH1", witness))
    found = None
    for a in range(n):
        for b in range(n):
            if meet[a][arrow[a][b]] != meet[a][b]:
                found = ("SH2", (a, b))
                break
        if found:
            break
    if found:
        violations.append(found)
    found = None
    for a in range(n):
        ma = meet[a]
        for b in range(n):
            ab = ma[b]
            for d in range(n):
                if ma[arrow[b][d]] != ma[arrow[ab][ma[d]]]:
                    found = ("SH3", (a, b, d))
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(found)
    for a in range(n):
        if arrow[a][a] != top:
            violations.append(("SH4", (a,)))
            break
    return _report("SH", violations)


def residuum_table(H):
    """Relative pseudocomplement table, entries None where no largest x
    with x∧a <= b exists."""
    n = H.size
    meet = H.glb_table
    leq = H.leq
    table = []
    for a in range(n):
        row = []
        for b in range(n):
            candidates = [x for x in range(n) if leq[meet[x][a]][b]]
            best = None
            for x in candidates:
                if all(leq[y][x] for y in candidates):
                    best = x
                    break
            row.append(best)
        table.append(tuple(row))
    return tuple(table)


def check_heyting(H):
    """Arrow equals the relative pseudocomplement everywhere."""
    _require(H, meet=True, join=True, arrow=True, bottom=True, top=True,
             what="Heyting check")
    n = H.size
    residuum = residuum_table(H)
    violations = []
    ok, witness = is_distributive_lattice(H)
    if not ok:
        violations.append(("distributivity", witness))
    found = None
    for a in range(n):
        for b in range(n):
            if residuum[a][b] is None:
                found = ("residuum-exists", (a, b))
                break
            if H.arrow[a][b] != residuum[a][b]:
                found = ("residuum", (a, b))
                break
        if found:
            break
    if found:
        violations.append(found)
    return _report("HA", violations)


def _de_morgan_violations(H):
    n = H.size
    inv = H.involution
    meet = H.glb_table
    join = H.lub_table
    violations = []
    for x in range(n):
        if inv[inv[x]] != x:
            violations.append(("involutive", (x,)))
            break
    found = None
    for x in range(n):
        for y in range(n):
            if inv[join[x][y]] != meet[inv[x]][inv[y]]:
                found = ("de-morgan", (x, y))
                break
        if found:
            break
    if found:
        violations.append(found)
    return violations


def check_de_morgan(H):
    _require(H, meet=True, join=True, involution=True, bottom=True, top=True,
             what="De Morgan check")
    violations = []
    ok, witness = is_distributive_lattice(H)
    if not ok:
        violations.append(("distributivity", witness))
    violations.extend(_de_morgan_violations(H))
    return _report("DeMorgan", violations)


def _kleene_violation(H):
    n = H.size
    inv = H.involution
    meet = H.glb_table
    join = H.lub_table
    leq = H.leq
    for x in range(n):
        lo = meet[x][inv[x]]
        for y in range(n):
            if not leq[lo][join[y][inv[y]]]:
                return ("kleene", (x, y))
    return None


def check_kleene(H):
    _require(H, meet=True, join=True, involution=True, bottom=True, top=True,
             what="Kleene check")
    report = check_de_morgan(H)
    violations = list(report.violations)
    v = _kleene_violation(H)
    if v:
        violations.append(v)
    return _report("Kleene", violations)


def check_centered_kleene(T):
    """Kleene algebra with a fixed point of the involution marked."""
    _require(T, meet=True, join=True, involution=True, bottom=True, top=True,
             center=True, what="centered Kleene check")
    report = check_kleene(T)
    violations = list(report.violations)
    if T.involution[T.center] != T.center:
        violations.append(("center-fixed", (T.center,)))
    return _report("CenteredKleene", violations)


def check_kleene_poset(T):
    """The six order-level clauses of a Kleene poset.

    Clause 6 evaluates x∧c through the derived identity ∼(∼x∨c), which
    is available whenever clauses 2-5 hold.
    """
    _require(T, involution=True, center=True, what="Kleene poset check")
    n = T.size
    inv = T.involution
    c = T.center
    leq = T.leq
    glbt = T.glb_table
    lubt = T.lub_table
    violations = []
    for x in range(n):
        if inv[inv[x]] != x:
            violations.append(("kp2-involutive", (x,)))
            break
    found = None
    for x in range(n):
        for y in range(n):
            if leq[x][y] and not leq[inv[y]][inv[x]]:
                found = ("kp2-antitone", (x, y))
                break
        if found:
            break
    if found:
        violations.append(found)
    if inv[c] != c:
        violations.append(("kp3", (c,)))
    vee_c = [lubt[x][c] for x in range(n)]
    for x in range(n):
        if vee_c[x] is None:
            violations.append(("kp4", (x,)))
            break
    if not any(a == "kp4" for a, _ in violations):
        for x in range(n):
            m = glbt[vee_c[x]][vee_c[inv[x]]]
            if m != c:
                violations.append(("kp5", (x,)))
                break
        if not any(a == "kp5" for a, _ in violations):
            wedge_c = [inv[vee_c[inv[x]]] for x in range(n)]
            found = None
            for x in range(n):
                for y in range(n):
                    if (leq[wedge_c[x]][wedge_c[y]] and leq[vee_c[x]][vee_c[y]]
                            and not leq[x][y]):
                        found = ("kp6", (x, y))
                        break
                if found:
                    break
            if found:
                violations.append(found)
    return _report("KleenePoset", violations)


def negation_table(T):
    """x -> 0, the residuated-lattice negation."""
    _require(T, arrow=True, bottom=True, what="negation")
    return tuple(T.arrow[x][T.bottom] for x in range(T.size))


def star_table(T):
    """Monoid operation recovered from the arrow: x*y = ¬(x -> ¬y)."""
    neg = negation_table(T)
    n = T.size
    return tuple(tuple(neg[T.arrow[x][neg[y]]] for y in range(n))
                 for x in range(n))


def check_nelson_lattice(T):
    """Involutive residuated lattice satisfying the Nelson inequality.

    The monoid operation is derived from the arrow, so the checker is
    independent of any star table the caller may have computed.
    """
    _require(T, meet=True, join=True, arrow=True, bottom=True, top=True,
             what="Nelson lattice check")
    n = T.size
    arrow = T.arrow
    leq = T.leq
    top = T.top
    meet = T.glb_table
    neg = negation_table(T)
    star = star_table(T)
    violations = []
    for x in range(n):
        if neg[neg[x]] != x:
            violations.append(("involutive", (x,)))
            break
    found = None
    for x in range(n):
        for y in range(n):
            if star[x][y] != star[y][x]:
                found = ("star-commutative", (x, y))
                break
        if found:
            break
    if found:
        violations.append(found)
    for x in range(n):
        if star[x][top] != x:
            violations.append(("star-unit", (x,)))
            break
    found = None
    for x in range(n):
        for y in range(n):
            sxy = star[x][y]
            for z in range(n):
                if star[sxy][z] != star[x][star[y][z]]:
                    found = ("star-associative", (x, y, z))
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(found)
    found = None
    for x in range(n):
        for y in range(n):
            ay = arrow[y]
            sy = star[x][y]
            for z in range(n):
                if leq[sy][z] != leq[x][ay[z]]:
                    found = ("residuation", (x, y, z))
                    break
            if found:
                break
        if found:
            break
    if found:
        violations.append(found)
    found = None
    for x in range(n):
        x2 = star[x][x]
        nx = neg[x]
        for y in range(n):
            ny2 = star[neg[y]][neg[y]]
            lhs = meet[arrow[x2][y]][arrow[ny2][nx]]
            if not leq[lhs][arrow[x][y]]:
                found = ("nelson", (x, y))
                break
        if found:
            break
    if found:
        violations.append(found)
    return _report("NelsonLattice", violations)


def nelson_lattice_to_algebra_ops(T):
    """Weak implication and strong negation of the term-equivalent
    algebra presentation: x=>y := (x*x)->y and ∼x := ¬x."""
    report = check_nelson_lattice(T)
    if not report.ok:
        raise PreconditionError(
            f"not a Nelson lattice: {report.violations[0]}")
    n = T.size
    star = star_table(T)
    weak = tuple(tuple(T.arrow[star[x][x]][y] for y in range(n))
                 for x in range(n))
    return weak, negation_table(T)


def nelson_algebra_to_lattice_ops(T, weak_imp, involution=None):
    """Monoid and arrow recovered from the weak implication:
    x*y := ∼(x=>∼y) ∨ ∼(y=>∼x) and x->y := (x=>y) ∧ (∼y=>∼x)."""
    inv = involution if involution is not None else T.involution
    if inv is None:
        raise PreconditionError("translation requires an involution")
    _require(T, meet=True, join=True, what="Nelson algebra translation")
    n = T.size
    meet = T.glb_table
    join = T.lub_table
    star = tuple(
        tuple(join[inv[weak_imp[x][inv[y]]]][inv[weak_imp[y][inv[x]]]]
              for y in range(n))
        for x in range(n))
    arrow = tuple(
        tuple(meet[weak_imp[x][y]][weak_imp[inv[y]][inv[x]]]
              for y in range(n))
        for x in range(n))
    return star, arrow


# -- classification ------------------------------------------------------

def _features(A):
    return dict(meet=A.meet_total, join=A.join_total, arrow=A.arrow is not None,
                involution=A.involution is not None, bottom=A.bottom is not None,
                top=A.top is not None, center=A.center is not None)


_CHECKERS = (
    ("MS", check_bounded_semilattice, ("meet", "bottom", "top")),
    ("BDL", check_bdl, ("meet", "join", "bottom", "top")),
    ("DeMorgan", check_de_morgan, ("meet", "join", "involution", "bottom", "top")),
    ("Kleene", check_kleene, ("meet", "join", "involution", "bottom", "top")),
    ("CenteredKleene", check_centered_kleene,
     ("meet", "join", "involution", "bottom", "top", "center")),
    ("KleenePoset", check_kleene_poset, ("involution", "center")),
    ("hIS0", check_hemi_implicative_semilattice,
     ("meet", "arrow", "bottom", "top")),
    ("Hil0", check_hilbert_with_infimum, ("meet", "arrow", "bottom", "top")),
    ("IS0", check_implicative_semilattice, ("meet", "arrow", "bottom", "top")),
    ("hBDL", check_hemi_implicative_lattice,
     ("meet", "join", "arrow", "bottom", "top")),
    ("SH", check_semi_heyting, ("meet", "join", "arrow", "bottom", "top")),
    ("HA", check_heyting, ("meet", "join", "arrow", "bottom", "top")),
    ("NelsonLattice", check_nelson_lattice,
     ("meet", "join", "arrow", "bottom", "top")),
)


def classify(A):
    """Every label whose features are present and whose checker passes.

    Nelson algebras are reached only through the term-equivalence
    translation, so they never appear in classification output.
    """
    feats = _features(A)
    labels = []
    for label, checker, needed in _CHECKERS:
        if all(feats[f] for f in needed) and checker(A).ok:
            labels.append(label)
    return labels
