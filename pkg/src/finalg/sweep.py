"""Exhaustive verification sweep over arrow-enumerated sources.

For every hemi-implicative arrow table over every bounded-lattice base
up to a given size, the sweep builds the pair algebra and verifies the
entire claimed theorem surface: the K batteries per source subclass,
K6-implies-interpolation, the congruence correspondence between the
pair algebra and its center, the congruent-filter bijection on the
source, the q-term principal-congruence corollaries on residuated and
semi-Heyting sources, and quotient soundness for every well-behaved
congruence.

Arrow-independent facts (pair skeleton batteries, lift tables, quotient
skeletons) are computed once per base through the caches inside the
kalman and congr modules; per-arrow work calls the same public checkers
used everywhere else.  Every ``sample_every``-th structure additionally
re-derives the fast-path answers with the assumption-free routines, so
a drift between the two would surface as a sweep failure.
"""

import multiprocessing
from dataclasses import dataclass, field

from . import congr
from . import kalman as km
from . import search
from . import varieties
from .errors import TheoremViolationError

MAX_FAILURES_PER_CHUNK = 10


@dataclass
class SweepReport:
    bases: int = 0
    structures: int = 0
    hilbert: int = 0
    residuated: int = 0
    semi_heyting: int = 0
    wb_congruences: int = 0
    quotients: int = 0
    congruent_filters: int = 0
    samples: int = 0
    failure_count: int = 0
    failures: list = field(default_factory=list)

    def merge(self, other):
        self.bases += other.bases
        self.structures += other.structures
        self.hilbert += other.hilbert
        self.residuated += other.residuated
        self.semi_heyting += other.semi_heyting
        self.wb_congruences += other.wb_congruences
        self.quotients += other.quotients
        self.congruent_filters += other.congruent_filters
        self.samples += other.samples
        self.failure_count += other.failure_count
        self.failures.extend(other.failures)

    @property
    def ok(self):
        return self.failure_count == 0

    def summary(self):
        lines = [
            f"bases={self.bases} structures={self.structures} "
            f"hilbert={self.hilbert} residuated={self.residuated} "
            f"semi_heyting={self.semi_heyting}",
            f"wb_congruences={self.wb_congruences} quotients={self.quotients} "
            f"congruent_filters={self.congruent_filters} samples={self.samples}",
            f"failures={self.failure_count}",
        ]
        lines.extend(self.failures[:MAX_FAILURES_PER_CHUNK])
        return "\n".join(lines)


def sweep_bases(max_size):
    """The bounded-lattice bases, smallest first."""
    out = []
    for n in range(1, max_size + 1):
        out.extend(search.enumerate_lattices(n, distributive=False,
                                             modulo_iso=True))
    return out


class _BaseContext:
    """Arrow-independent data for one base."""

    def __init__(self, base, ordinal):
        self.base = base
        self.ordinal = ordinal
        self.failures = []
        self.kalg0 = km.kalman_of_semilattice(base)
        T0 = self.kalg0.algebra
        self.skeleton = T0
        km_report = km.check_km_conditions(T0)
        if not km_report.ok:
            self.failures.append(
                f"[skeleton] base {ordinal}: KM battery fails "
                f"{km_report.violations[0]}")
        holds, witness = km.check_ck(T0)
        self.ck_holds = holds
        if not holds:
            self.failures.append(
                f"[skeleton] base {ordinal}: pair algebra fails "
                f"interpolation at {witness}")
        self.lifts = congr.lifted_center_partitions(T0)
        # structural half of the congruence correspondence: restriction
        # inverts the lift, and lifting is an order embedding
        for tau, theta, _ in self.lifts:
            if congr.gamma_restrict(T0, theta) != tau:
                self.failures.append(
                    f"[correspondence] base {ordinal}: restriction does not invert "
                    f"the lift of {tau.block}")
        for t1, th1, _ in self.lifts:
            for t2, th2, _ in self.lifts:
                if t1.refines(t2) != th1.refines(th2):
                    self.failures.append(
                        f"[correspondence] base {ordinal}: lift is not an order "
                        f"embedding at {t1.block}, {t2.block}")
        self.filters = congr.enumerate_filters(base)
        self.filter_sets = [frozenset(F.members()) for F in self.filters]
        n = base.size
        self.top_blocks = []
        for tau, _, _ in self.lifts:
            self.top_blocks.append(
                frozenset(a for a in range(n) if tau.relates(a, base.top)))
        self.pair_first = tuple(p[0] for p in self.kalg0.pairs)
        self.center_pos = tuple(self.kalg0.index_of(a, base.bottom)
                                for a in range(n))


def _verify_structure(ctx, arrow, arrow_index, report, sample_every):
    base = ctx.base
    ordinal = ctx.ordinal
    H = base.with_ops(arrow=arrow, validate=False)
    tag = f"base {ordinal} arrow {arrow_index}"
    report.structures += 1

    hil = varieties.check_hilbert_with_infimum(H).ok
    is0 = hil and varieties.check_implicative_semilattice(H).ok
    sh = varieties.check_semi_heyting(H).ok
    if hil:
        report.hilbert += 1
    if is0:
        report.residuated += 1
    if sh:
        report.semi_heyting += 1

    kalg = km.kalman_of_his(H)
    T = kalg.algebra

    k_report = km.check_k_conditions(T)
    if not k_report.ok:
        _fail(report, f"[k-battery] {tag}: {k_report.violations[0]}", H)
        return
    if hil:
        khil = km.check_khil_conditions(T)
        if not khil.ok:
            _fail(report, f"[hilbert-battery] {tag}: {khil.violations[0]}", H)
    if is0:
        k67 = km.check_k_conditions(T, which=("K6", "K7"))
        if not k67.ok:
            _fail(report, f"[residuated-battery] {tag}: {k67.violations[0]}", H)
    if sh:
        try:
            ksh = km.check_ksh_condition(T)
            if not ksh.ok:
                _fail(report, f"[sh-battery] {tag}: {ksh.violations[0]}", H)
        except TheoremViolationError as exc:
            _fail(report, f"[sh-consequences] {tag}: {exc}", H)
    if km.check_k_conditions(T, which=("K6",)).ok and not ctx.ck_holds:
        _fail(report, f"[k6-interpolation] {tag}: K6 holds but interpolation fails", H)

    # the center carrier of the pair algebra aligns with the source
    # element by element, so the natural embedding preserves the arrow
    # exactly when the restricted table reproduces the source table
    cpos = ctx.center_pos
    n = base.size
    arrowK = T.arrow
    for a in range(n):
        row = H.arrow[a]
        ka = arrowK[cpos[a]]
        for b in range(n):
            if ka[cpos[b]] != cpos[row[b]]:
                _fail(report, f"[alpha] {tag}: arrow restriction differs "
                              f"at ({a},{b})", H)
                break
        else:
            continue
        break
    if arrow_index % 16 == 0:
        try:
            if not km.alpha_map(kalg).is_isomorphism:
                _fail(report, f"[alpha] {tag}: not an isomorphism", H)
            morph_b, _ = km.beta_with_kalman(T, level="his")
            if not morph_b.is_isomorphism:
                _fail(report, f"[beta] {tag}: not an isomorphism", H)
        except TheoremViolationError as exc:
            _fail(report, f"[beta] {tag}: {exc}", H)

    # congruence correspondence: arrow-compatibility of a lift on the
    # pair side must coincide with arrow-compatibility of its
    # restriction on the source side
    arrowK = T.arrow
    wb_idx = []
    con_idx = []
    for i, (tau, theta, meet_ok) in enumerate(ctx.lifts):
        if not meet_ok:
            continue
        if congr.is_compatible(theta, [arrowK]):
            wb_idx.append(i)
        if congr.is_compatible(tau, [arrow]):
            con_idx.append(i)
    if wb_idx != con_idx:
        _fail(report, f"[correspondence] {tag}: correspondence mismatch "
                      f"{wb_idx} vs {con_idx}", H)
    report.wb_congruences += len(wb_idx)

    # congruent-filter bijection on the source
    congruent = []
    for j, F in enumerate(ctx.filters):
        ok, _ = congr.is_congruent_filter(H, F)
        if ok:
            congruent.append(j)
    report.congruent_filters += len(congruent)
    if len(congruent) != len(con_idx):
        _fail(report, f"[filter-bijection] {tag}: {len(con_idx)} congruences vs "
                      f"{len(congruent)} congruent filters", H)
    else:
        congruent_sets = [ctx.filter_sets[j] for j in congruent]
        for i in con_idx:
            blk = ctx.top_blocks[i]
            if blk not in congruent_sets:
                _fail(report, f"[filter-bijection] {tag}: top block of lift {i} is "
                              f"not a congruent filter", H)
                continue
            F = ctx.filters[congruent[congruent_sets.index(blk)]]
            if congr.theta_of_filter(H, F) != ctx.lifts[i][0]:
                _fail(report, f"[filter-bijection] {tag}: filter relation does not "
                              f"recover congruence {i}", H)
        for j in congruent:
            th = congr.theta_of_filter(H, ctx.filters[j])
            matches = [i for i in con_idx if ctx.lifts[i][0] == th]
            if not matches or ctx.top_blocks[matches[0]] != ctx.filter_sets[j]:
                _fail(report, f"[filter-bijection] {tag}: congruence of filter {j} "
                              f"does not round-trip", H)

    if (is0 or sh) and len(congruent) != len(ctx.filters):
        _fail(report, f"[filters] {tag}: a filter is not congruent on a "
                      f"residuated or semi-Heyting source", H)

    if is0 or sh:
        _verify_q_term_forms(ctx, H, kalg, [ctx.lifts[i][1] for i in wb_idx],
                            report, tag)

    for i in wb_idx:
        theta = ctx.lifts[i][1]
        try:
            congr.quotient_wb(T, theta, assume_wb=True)
            report.quotients += 1
        except TheoremViolationError as exc:
            _fail(report, f"[quotient] {tag} lift {i}: {exc}", H)

    if arrow_index % sample_every == 0:
        _deep_sample(ctx, H, T, wb_idx, con_idx, report, tag)
        report.samples += 1


def _verify_q_term_forms(ctx, H, kalg, wb_congs, report, tag):
    """Both principal-congruence characterizations through the q-term."""
    T = kalg.algebra
    n = T.size
    qvals = [[congr.q_term(T, x, y) for y in range(n)] for x in range(n)]
    principal = {}
    for x in range(n):
        for y in range(x, n):
            cands = [th for th in wb_congs if th.relates(x, y)]
            th = cands[0]
            for other in cands[1:]:
                th = th.meet(other)
            principal[(x, y)] = th
    fc_cache = {}
    first = ctx.pair_first
    for x in range(n):
        for y in range(x, n):
            q1 = qvals[x][y]
            h1 = first[q1]
            if h1 not in fc_cache:
                fc_cache[h1] = congr.congruent_filter_generated(H, [h1])
            fc = fc_cache[h1]
            th = principal[(x, y)]
            for z in range(n):
                for w in range(z, n):
                    related = th.relates(z, w)
                    q2 = qvals[z][w]
                    if related != (first[q2] in fc):
                        _fail(report, f"[q-term] {tag}: filter form "
                                      f"fails at ({x},{y},{z},{w})", H)
                        return
                    if related != bool(H.leq[first[q1]][first[q2]]):
                        _fail(report, f"[q-term] {tag}: order form "
                                      f"fails at ({x},{y},{z},{w})", H)
                        return


def _deep_sample(ctx, H, T, wb_idx, con_idx, report, tag):
    """Assumption-free re-derivation of the fast-path answers."""
    wb_expected = sorted({ctx.lifts[i][1] for i in wb_idx},
                         key=lambda t: t.block)
    wb_public = congr.enumerate_wb_congruences(T)
    if wb_public != wb_expected:
        _fail(report, f"[sample] {tag}: lift shortcut disagrees with "
                      f"public enumeration", H)
    for tau, theta, meet_ok in ctx.lifts:
        ok, _ = congr.is_well_behaved(T, theta)
        fast = meet_ok and congr.is_compatible(theta, [T.arrow])
        if ok != fast:
            _fail(report, f"[sample] {tag}: clause decomposition disagrees "
                          f"with direct check on {tau.block}", H)
    con_public = congr.enumerate_congruences(
        H, [H.glb_table, H.arrow])
    if len(con_public) != len(con_idx):
        _fail(report, f"[sample] {tag}: closure enumeration finds "
                      f"{len(con_public)} congruences, lifts say "
                      f"{len(con_idx)}", H)
    if T.size <= 5:
        if congr.enumerate_wb_congruences_bruteforce(T) != wb_public:
            _fail(report, f"[sample] {tag}: partition scan disagrees", H)


def _fail(report, message, H=None):
    report.failure_count += 1
    if len(report.failures) < MAX_FAILURES_PER_CHUNK:
        if H is not None:
            from .docio import serialize_algebra
            message = message + "\n" + serialize_algebra(H)
        report.failures.append(message)


_CTX_CACHE = {}


def _context_for(base, ordinal):
    key = (ordinal, base.leq)
    ctx = _CTX_CACHE.get(key)
    if ctx is None:
        ctx = _BaseContext(base, ordinal)
        _CTX_CACHE[key] = ctx
    return ctx


def _run_chunk(args):
    base, ordinal, start, end, sample_every = args
    ctx = _context_for(base, ordinal)
    report = SweepReport()
    if start == 0:
        report.failures.extend(ctx.failures)
        report.failure_count += len(ctx.failures)
    for index in range(start, end):
        arrow = search.his_arrow_by_index(base, index)
        _verify_structure(ctx, arrow, index, report, sample_every)
    return report


def run_theorem_sweep(max_base_size=4, jobs=1, sample_every=997,
                      chunk_size=4096):
    """Sweep every arrow table over every base up to the given size.

    Deterministic regardless of ``jobs``: chunk boundaries depend only
    on sizes, and reports merge in chunk order.
    """
    bases = sweep_bases(max_base_size)
    chunks = []
    for ordinal, base in enumerate(bases):
        total = search.count_his_arrows(base)
        for start in range(0, total, chunk_size):
            chunks.append((base, ordinal, start, min(start + chunk_size, total),
                           sample_every))
    report = SweepReport()
    report.bases = len(bases)
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            for partial in pool.imap(_run_chunk, chunks):
                report.merge(partial)
    else:
        for chunk in chunks:
            report.merge(_run_chunk(chunk))
    return report
