"""Verifiers for the three structural theorems and the identity catalog.

Each verifier either produces a replayable certificate naming the reduction
move that works, or a counterexample report carrying the full failure
matrix.  A report is a first-class value: the point of the artifact is to
attempt falsification on concrete instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import conn, ops
from .conn import (
    is_2_connected,
    is_3_connected,
    is_prickly,
    lam,
    local_conn,
    local_conn_dual,
    prickly_pairs,
    separations,
)
from .construct import wheel, whirl
from .core import Polymatroid, is_compact, is_isomorphic, norm
from .errors import HypothesisViolated, SizeOutOfRange
from .minors import MinorWitness, is_c_minor, is_s_minor, replay_witness
from .ops import (
    compactified_delete,
    compactify,
    compactify_element,
    compress,
    compress_by_recipe,
    contract,
    delete,
    direct_sum,
    dual,
    free_add_point,
    natural_matroid,
    parallel_connection,
    relabel,
    two_sum,
    two_sum_decompose,
)

# -- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class OutcomeContract:
    element: str


@dataclass(frozen=True)
class OutcomeCompactifiedDelete:
    element: str


@dataclass(frozen=True)
class OutcomeSeriesCompress:
    pair: tuple
    compressed: tuple  # the members verified to work (one or both)


@dataclass(frozen=True)
class OutcomeWheelOrWhirl:
    kind: str  # "wheel" | "whirl"
    size: int  # rank / number of spokes


@dataclass(frozen=True)
class TwoMoveExhibit:
    """A 3-connected reduction two elements smaller, found by a two-move
    search, together with its retained-minor witness."""

    moves: tuple  # (("contract"|"cdelete"|"compress", element), ...)
    witness: MinorWitness


@dataclass(frozen=True)
class SplitterCertificate:
    theorem: str  # "c" | "s"
    outcome: object
    witness: MinorWitness | None
    three_connectivity_check: bool
    reduced_exhibit: TwoMoveExhibit | None = None


@dataclass(frozen=True)
class CounterexampleReport:
    theorem: str
    failure_matrix: tuple  # (subject, move, reason) for every element / pair
    wheel_whirl_reason: str


@dataclass(frozen=True)
class WwtCertificate:
    outcome: int  # 1, 2, or 3
    element: str | None = None
    move: str | None = None
    kind: str | None = None
    size: int | None = None
    prickly_sets: tuple = ()
    compress_checks: tuple = ()  # (z, three_connected, pure) per member


# -- helpers ------------------------------------------------------------------


def wheel_or_whirl_kind(m):
    """(kind, size) when m is the cycle matroid of a wheel or a whirl of
    rank at least three; otherwise None."""
    if any(m.singleton_rank(e) > 1 for e in m.elements):
        return None
    r = m.total_rank()
    if r < 3 or m.n != 2 * r:
        return None
    for kind, builder in (("wheel", wheel), ("whirl", whirl)):
        try:
            ref = builder(r)
        except SizeOutOfRange:
            continue
        if is_isomorphic(m, ref) is not None:
            return kind, r
    return None


def _is_pure(m):
    return all(m.singleton_rank(e) == 2 for e in m.elements)


def _single_moves(m):
    """All single s-minor moves in canonical order."""
    moves = [("contract", e) for e in m.elements]
    moves += [("cdelete", e) for e in m.elements]
    for pair in prickly_pairs(m):
        for z in pair:
            moves.append(("compress", z))
    return moves


def _apply_move(m, move):
    op, e = move
    if op == "contract":
        return contract(m, e)
    if op == "cdelete":
        return compactified_delete(m, e)
    return compress(m, e)


# -- the splitter verifiers ---------------------------------------------------


def _check_splitter_hypotheses(m, n, kind):
    if not is_3_connected(m):
        raise HypothesisViolated("the host is not 3-connected")
    if not is_3_connected(n):
        raise HypothesisViolated("the target minor is not 3-connected")
    if n.n < 4:
        raise HypothesisViolated("the target minor needs at least four elements")
    if not is_compact(m):
        raise HypothesisViolated("the host is not compact")
    if not is_compact(n):
        raise HypothesisViolated("the target minor is not compact")
    if is_isomorphic(m, n) is not None:
        raise HypothesisViolated("the minor must be proper")
    finder = is_c_minor if kind == "c" else is_s_minor
    w = finder(m, n, "up_to_iso")
    if w is None:
        raise HypothesisViolated(f"no {kind}-minor isomorphic to the target exists")
    return w


def _eval_move_for_minor(payload):
    """Evaluate one reduction move: (move, stayed 3-connected, minor witness)."""
    m, n, kind, move = payload
    red = _apply_move(m, move)
    if not is_3_connected(red):
        return move, False, None
    finder = is_c_minor if kind == "c" else is_s_minor
    return move, True, finder(red, n, "up_to_iso")


def _move_evaluator(m, n, kind, jobs, pairs):
    """Per-move results, computed lazily or precomputed across a pool.

    The fold over results is a fixed sequential order either way, so the
    certificate is identical for any job count.
    """
    if jobs <= 1:
        cache = {}

        def evaluate(move):
            if move not in cache:
                _, three, w = _eval_move_for_minor((m, n, kind, move))
                cache[move] = (three, w)
            return cache[move]

        return evaluate
    moves = [("contract", e) for e in m.elements]
    moves += [("cdelete", e) for e in m.elements]
    moves += [("compress", z) for pair in pairs for z in pair]
    from multiprocessing import get_context

    with get_context("fork").Pool(jobs) as pool:
        rows = pool.map(_eval_move_for_minor, [(m, n, kind, mv) for mv in moves])
    results = {mv: (three, w) for mv, three, w in rows}
    return results.__getitem__


def _verify_splitter(m, n, kind, jobs):
    hyp_witness = _check_splitter_hypotheses(m, n, kind)
    pairs = prickly_pairs(m)
    evaluate = _move_evaluator(m, n, kind, jobs, pairs)
    matrix = []
    for op, builder in (("contract", OutcomeContract), ("cdelete", OutcomeCompactifiedDelete)):
        for e in m.elements:
            three, w = evaluate((op, e))
            if not three:
                matrix.append((e, op, "not_3_connected"))
            elif w is not None:
                return SplitterCertificate(kind, builder(e), w, True)
            else:
                matrix.append((e, op, "no_minor"))
    for pair in pairs:
        if kind == "c":
            # one working member suffices
            for z in pair:
                three, w = evaluate(("compress", z))
                if not three:
                    matrix.append((pair, f"compress {z}", "not_3_connected"))
                elif w is not None:
                    return SplitterCertificate(
                        kind, OutcomeSeriesCompress(pair, (z,)), w, True
                    )
                else:
                    matrix.append((pair, f"compress {z}", "no_minor"))
        else:
            # both members must work
            results = []
            for z in pair:
                three, w = evaluate(("compress", z))
                if not three:
                    matrix.append((pair, f"compress {z}", "not_3_connected"))
                    break
                if w is None:
                    matrix.append((pair, f"compress {z}", "no_minor"))
                    break
                results.append((z, w))
            if len(results) == len(pair):
                return SplitterCertificate(
                    kind,
                    OutcomeSeriesCompress(pair, tuple(z for z, _ in results)),
                    results[0][1],
                    True,
                )
    ww = wheel_or_whirl_kind(m)
    if ww is None:
        return CounterexampleReport(
            kind, tuple(matrix), "not a wheel or whirl of rank at least three"
        )
    if kind == "c":
        return SplitterCertificate(kind, OutcomeWheelOrWhirl(*ww), hyp_witness, True)
    exhibit = _two_move_exhibit(m, n)
    if exhibit is None:
        return CounterexampleReport(
            kind,
            tuple(matrix),
            "wheel/whirl, but no 3-connected two-move reduction retains the minor",
        )
    return SplitterCertificate(
        kind, OutcomeWheelOrWhirl(*ww), hyp_witness, True, reduced_exhibit=exhibit
    )


def verify_splitter_c(m, n, jobs=1):
    """Certify the single-move splitter statement for c-minors, trying
    contractions, compactified deletions, prickly compressions, and finally
    the wheel/whirl escape, in that order."""
    return _verify_splitter(m, n, "c", jobs)


def verify_splitter_s(m, n, jobs=1):
    """Certify the single-move splitter statement for s-minors.  The prickly
    outcome here demands that both members of the pair work; the wheel/whirl
    outcome additionally exhibits a 3-connected reduction two elements
    smaller that retains the minor."""
    return _verify_splitter(m, n, "s", jobs)


def _two_move_exhibit(m, n):
    for mv1 in _single_moves(m):
        m1 = _apply_move(m, mv1)
        for mv2 in _single_moves(m1):
            m2 = _apply_move(m1, mv2)
            if not is_3_connected(m2):
                continue
            w = is_s_minor(m2, n, "up_to_iso")
            if w is not None:
                return TwoMoveExhibit(moves=(mv1, mv2), witness=w)
    return None


def replay_certificate(m, n, cert):
    """Re-run a certificate's move and confirm what it claims."""
    kind = cert.theorem
    finder = is_c_minor if kind == "c" else is_s_minor
    out = cert.outcome
    if isinstance(out, OutcomeContract):
        red = contract(m, out.element)
        return is_3_connected(red) and finder(red, n, "up_to_iso") is not None
    if isinstance(out, OutcomeCompactifiedDelete):
        red = compactified_delete(m, out.element)
        return is_3_connected(red) and finder(red, n, "up_to_iso") is not None
    if isinstance(out, OutcomeSeriesCompress):
        if not is_prickly(m, out.pair):
            return False
        for z in out.compressed:
            red = compress(m, z)
            if not is_3_connected(red) or finder(red, n, "up_to_iso") is None:
                return False
        return True
    if isinstance(out, OutcomeWheelOrWhirl):
        ww = wheel_or_whirl_kind(m)
        if ww != (out.kind, out.size):
            return False
        if cert.reduced_exhibit is not None:
            cur = m
            for mv in cert.reduced_exhibit.moves:
                cur = _apply_move(cur, mv)
            return is_3_connected(cur) and is_s_minor(cur, n, "up_to_iso") is not None
        return True
    return False


# -- the wheels-and-whirls verifier -------------------------------------------


def verify_wwt(m):
    """Certify the no-minor-constraint predecessor statement: some single
    deletion or contraction stays 3-connected, or the instance is a wheel or
    whirl, or it is pure and all its minimal multi-element 3-separating sets
    are prickly with 3-connected pure compressions."""
    if not is_3_connected(m):
        raise HypothesisViolated("the instance is not 3-connected")
    if m.n == 0:
        raise HypothesisViolated("the instance is empty")
    for e in m.elements:
        if is_3_connected(delete(m, e)):
            return WwtCertificate(outcome=1, element=e, move="delete")
        if is_3_connected(contract(m, e)):
            return WwtCertificate(outcome=1, element=e, move="contract")
    ww = wheel_or_whirl_kind(m)
    if ww is not None:
        return WwtCertificate(outcome=2, kind=ww[0], size=ww[1])
    if not _is_pure(m):
        return CounterexampleReport(
            "wwt", ((None, "pure", "instance has an element of rank below two"),), ""
        )
    minimal = _minimal_multi_three_separating(m)
    if not minimal:
        return CounterexampleReport(
            "wwt", ((None, "prickly", "no multi-element 3-separating set"),), ""
        )
    matrix = []
    checks = []
    ok = True
    for z_set in minimal:
        if not is_prickly(m, z_set):
            ok = False
            matrix.append((tuple(sorted(z_set)), "prickly", "minimal set is not prickly"))
            continue
        for z in sorted(z_set):
            red = compress(m, z)
            three = is_3_connected(red)
            pure = _is_pure(red)
            checks.append((z, three, pure))
            if not (three and pure):
                ok = False
                matrix.append(
                    (z, "compress", "not_3_connected" if not three else "not_pure")
                )
    if not ok:
        return CounterexampleReport("wwt", tuple(matrix), "")
    return WwtCertificate(
        outcome=3,
        prickly_sets=tuple(tuple(sorted(z)) for z in minimal),
        compress_checks=tuple(checks),
    )


def _minimal_multi_three_separating(m):
    """Minimal proper subsets of size at least two with connectivity at most two."""
    full = m.full_mask
    r = m.rank_table
    r_full = r[full]
    seps = [
        mask
        for mask in range(1, full)
        if bin(mask).count("1") >= 2 and r[mask] + r[full ^ mask] - r_full <= 2
    ]
    sep_set = set(seps)
    out = []
    for mask in seps:
        if any(sub in sep_set for sub in _proper_submasks_ge2(mask)):
            continue
        out.append(m.labels_of(mask))
    return out


def _proper_submasks_ge2(mask):
    sub = (mask - 1) & mask
    while sub:
        if sub != mask and bin(sub).count("1") >= 2:
            yield sub
        sub = (sub - 1) & mask


# -- the identity catalog ------------------------------------------------------


@dataclass
class IdentityResult:
    checks: int = 0
    failures: int = 0
    first_failure: str | None = None

    def record(self, ok, describe):
        self.checks += 1
        if not ok:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = describe()


@dataclass
class IdentityReport:
    results: dict = field(default_factory=dict)

    def result(self, name):
        return self.results.setdefault(name, IdentityResult())

    @property
    def all_passed(self):
        return all(r.failures == 0 for r in self.results.values())

    @property
    def total_checks(self):
        return sum(r.checks for r in self.results.values())

    def failed_names(self):
        return sorted(name for name, r in self.results.items() if r.failures)

    def summary_lines(self):
        lines = []
        for name in sorted(self.results):
            r = self.results[name]
            status = "ok" if r.failures == 0 else f"FAIL ({r.first_failure})"
            lines.append(f"{name}: {r.checks} checks, {r.failures} failures, {status}")
        return lines


def _subset_masks(m, rng, samples):
    full = m.full_mask
    if full < 0:
        return []
    count = full + 1
    if rng is None:
        return list(range(count))
    return [rng.randrange(count) for _ in range(samples)]


def _partitions3(m, rng, samples):
    """Masked triples (A, B, Z) partitioning the ground set."""
    n = m.n
    if rng is None:
        out = []
        for assign in range(3**n):
            a = b = z = 0
            x = assign
            for i in range(n):
                part = x % 3
                x //= 3
                if part == 0:
                    a |= 1 << i
                elif part == 1:
                    b |= 1 << i
                else:
                    z |= 1 << i
            out.append((a, b, z))
        return out
    out = []
    for _ in range(samples):
        a = b = z = 0
        for i in range(n):
            part = rng.randrange(3)
            if part == 0:
                a |= 1 << i
            elif part == 1:
                b |= 1 << i
            else:
                z |= 1 << i
        out.append((a, b, z))
    return out


def identity_suite(m, exhaustive_limit=4, samples=200, seed=2):
    """Evaluate the applicable identity catalog on one instance.

    Small instances are swept exhaustively over subsets and partitions;
    larger ones are sampled with a fixed seed.  Returns a report with pass
    counts and the first counterexample per identity.
    """
    report = IdentityReport()
    rng = None if m.n <= exhaustive_limit else random.Random(seed)
    star = dual(m)
    flat = compactify(m)
    r = m.rank_table
    full = m.full_mask

    def L(mask, mm=m):
        return mm.rank_table[mask] + mm.rank_table[mm.full_mask ^ mask] - mm.rank_table[mm.full_mask]

    # duality and compactification
    report.result("dual_is_compact").record(
        is_compact(star), lambda: "dual has a non-compact element"
    )
    report.result("double_dual_is_compactification").record(
        dual(star) == flat, lambda: "dual of dual differs from compactification"
    )
    report.result("compactify_idempotent").record(
        compactify(flat) == flat, lambda: "compactification is not idempotent"
    )
    report.result("dual_of_compactification").record(
        dual(flat) == star and compactify(star) == star,
        lambda: "dual does not absorb compactification",
    )
    for mask in _subset_masks(m, rng, samples):
        labels = m.labels_of(mask)
        ok = L(mask) == L(mask, star) == L(mask, flat)
        report.result("lambda_invariant_under_dual_and_compactification").record(
            ok, lambda: f"lambda mismatch on {sorted(labels)}"
        )
        ok = L(mask) == r[mask] + star.rank_table[mask] - norm(m, labels)
        report.result("lambda_from_rank_and_dual_rank").record(
            ok, lambda: f"rank/dual-rank identity fails on {sorted(labels)}"
        )
    # deletion/contraction vs compactification and duality
    for mask in _subset_masks(m, rng, samples):
        a = m.labels_of(mask)
        ok = compactify(delete(flat, a)) == compactify(delete(m, a))
        report.result("compactify_absorbs_delete").record(
            ok, lambda: f"deletion of {sorted(a)}"
        )
        ok = compactify(contract(flat, a)) == compactify(contract(m, a))
        report.result("compactify_absorbs_contract").record(
            ok, lambda: f"contraction of {sorted(a)}"
        )
        ok = dual(contract(m, a)) == compactify(delete(star, a))
        report.result("dual_exchanges_contract_and_delete").record(
            ok, lambda: f"exchange fails on {sorted(a)}"
        )
        if mask:
            report.result("contractions_are_compact").record(
                is_compact(contract(m, a)), lambda: f"contraction of {sorted(a)}"
            )
    # minor commutation on disjoint pairs
    for amask, bmask, _ in _partitions3(m, rng, samples):
        a, b = m.labels_of(amask), m.labels_of(bmask)
        ok = contract(contract(m, a), b) == contract(m, a | b) == contract(
            contract(m, b), a
        )
        report.result("contractions_commute").record(
            ok, lambda: f"A={sorted(a)} B={sorted(b)}"
        )
        ok = (
            compactified_delete(compactified_delete(m, a), b)
            == compactified_delete(m, a | b)
            == compactified_delete(compactified_delete(m, b), a)
        )
        report.result("compactified_deletions_commute").record(
            ok, lambda: f"A={sorted(a)} B={sorted(b)}"
        )
        ok = compactified_delete(contract(m, a), b) == contract(
            compactified_delete(m, b), a
        )
        report.result("contract_commutes_with_compactified_delete").record(
            ok, lambda: f"A={sorted(a)} B={sorted(b)}"
        )
    # compactification as a chain of single-element adjustments
    if is_2_connected(m) and not is_compact(m) and m.n:
        lines = [
            e
            for e in m.elements
            if m.singleton_rank(e) == 2 and lam(m, [e]) == 1
        ]
        cur = m
        for z in lines:
            cur = compactify_element(cur, z)
        report.result("compactification_via_element_chain").record(
            cur == flat, lambda: "chain of single-element adjustments misses"
        )
    # compression identities
    for e in m.elements:
        ok = compress(m, e) == compress_by_recipe(m, e)
        report.result("compress_matches_free_add_recipe").record(
            ok, lambda: f"element {e}"
        )
        ok = delete(compactify_element(m, e), e) == compress(m, e)
        report.result("compress_is_inplace_adjust_then_delete").record(
            ok, lambda: f"element {e}"
        )
        if m.singleton_rank(e) <= 1:
            ok = compress(m, e) == contract(m, e)
            report.result("compress_of_point_is_contraction").record(
                ok, lambda: f"element {e}"
            )
        if m.singleton_rank(e) == 2 and not any(
            f != e
            and m.singleton_rank(f) == 2
            and m.rank(frozenset((e, f))) == 2
            for f in m.elements
        ):
            ok = compress(star, e) == dual(compress(m, e))
            report.result("compress_self_dual_without_parallel_line").record(
                ok, lambda: f"element {e}"
            )
        for y in m.elements:
            if y == e:
                continue
            ok = delete(compress(m, e), y) == compress(delete(m, y), e)
            report.result("compress_commutes_with_delete").record(
                ok, lambda: f"compress {e} delete {y}"
            )
            ok = contract(compress(m, e), y) == compress(contract(m, y), e)
            report.result("compress_commutes_with_contract").record(
                ok, lambda: f"compress {e} contract {y}"
            )
        if m.singleton_rank(e) == 2 and lam(m, [e]) <= 1:
            for k in m.elements:
                if k == e:
                    continue
                ok = compress(compactify_element(m, e), k) == compactify_element(
                    compress(m, k), e
                )
                report.result("inplace_adjust_commutes_with_compress").record(
                    ok, lambda: f"line {e} compress {k}"
                )
    # prickly pair identities
    for pair in prickly_pairs(m):
        j, k = pair
        ok = relabel(compress(m, k), {j: k}) == compress(m, j)
        report.result("prickly_compressions_agree_up_to_relabel").record(
            ok, lambda: f"pair {pair}"
        )
        ok = delete(compress(m, k), j) == delete(m, pair) and contract(
            compress(m, k), j
        ) == contract(m, pair)
        report.result("compress_collapses_prickly_partner").record(
            ok, lambda: f"pair {pair}"
        )
        if is_compact(m):
            report.result("compress_keeps_compact").record(
                is_compact(compress(m, k)), lambda: f"pair {pair}"
            )
        report.result("prickly_self_dual").record(
            is_prickly(star, pair), lambda: f"pair {pair}"
        )
        if is_3_connected(m):
            ok = is_3_connected(compress(m, j)) and is_3_connected(compress(m, k))
            report.result("prickly_compressions_stay_3_connected").record(
                ok, lambda: f"pair {pair}"
            )
        for z in pair:
            if is_3_connected(compress(m, z)):
                report.result("three_connected_lifts_through_compression").record(
                    is_3_connected(m), lambda: f"pair {pair} member {z}"
                )
    # natural matroid transfer
    if m.n >= 2:
        try:
            nat, _scheme = natural_matroid(m)
        except SizeOutOfRange:
            nat = None
        if nat is not None:
            ok = is_2_connected(m) == is_2_connected(nat) and is_3_connected(
                m
            ) == is_3_connected(nat)
            report.result("natural_matroid_connectivity_transfer").record(
                ok, lambda: "connectivity differs from the derived matroid"
            )
    # local connectivity identities
    for amask, bmask, zmask in _partitions3(m, rng, samples):
        a, b, z = m.labels_of(amask), m.labels_of(bmask), m.labels_of(zmask)
        report.result("dual_local_conn_is_lambda_after_contraction").record(
            local_conn_dual(m, a, b) == conn.lam(contract(m, z), a),
            lambda: f"A={sorted(a)} B={sorted(b)}",
        )
        ok = (
            L(amask | bmask)
            == L(amask) + L(bmask) - local_conn(m, a, b) - local_conn_dual(m, a, b)
        )
        report.result("lambda_of_disjoint_union").record(
            ok, lambda: f"X={sorted(a)} Y={sorted(b)}"
        )
        mz = contract(m, z)
        ok = conn.lam(mz, a) == conn.lam(delete(m, z), a) - local_conn(
            m, a, z
        ) - local_conn(m, b, z) + L(zmask)
        report.result("lambda_contract_vs_delete_three_parts").record(
            ok, lambda: f"A={sorted(a)} Z={sorted(z)}"
        )
        if L(amask) == 1 and L(zmask) == 1 and L(bmask) == 2:
            report.result("middle_block_local_conn_is_one").record(
                local_conn(m, a, b) == 1, lambda: f"A={sorted(a)} B={sorted(b)}"
            )
        ok = conn.lam(delete(m, z), a) <= L(amask) and conn.lam(
            contract(m, z), a
        ) <= L(amask)
        report.result("lambda_monotone_under_minors").record(
            ok, lambda: f"X={sorted(a)} removed={sorted(z)}"
        )
    for amask, bmask, zmask in _partitions3(m, rng, samples):
        # exchange law on three disjoint blocks
        a, b, c = m.labels_of(amask), m.labels_of(bmask), m.labels_of(zmask)
        ok = local_conn(m, a | b, c) + local_conn(m, a, b) == local_conn(
            m, a | c, b
        ) + local_conn(m, a, c)
        report.result("local_conn_exchange").record(
            ok, lambda: f"A={sorted(a)} B={sorted(b)} C={sorted(c)}"
        )
        sub_a = amask & (amask - 1)  # drop one element: a subset of A
        sub_b = bmask & (bmask - 1)
        ok = local_conn(m, m.labels_of(sub_a), m.labels_of(sub_b)) <= local_conn(
            m, a, b
        )
        report.result("local_conn_monotone").record(
            ok, lambda: f"A={sorted(a)} B={sorted(b)}"
        )
    # single-element lambda split
    for mask in _subset_masks(m, rng, samples):
        comp = full ^ mask
        mm = comp
        while mm:
            zbit = mm & -mm
            mm &= mm - 1
            zlbl = m.labels_of(zbit)
            rest = m.labels_of(mask)
            ok = local_conn(m, rest, zlbl) + conn.lam(
                contract(m, zlbl), rest
            ) == L(mask)
            report.result("lambda_splits_at_contracted_element").record(
                ok, lambda: f"X={sorted(rest)} z={sorted(zlbl)}"
            )
            if rng is not None:
                break
    # point behaviour in 2-connected instances
    if is_2_connected(m) and m.n >= 2:
        for e in m.elements:
            if m.singleton_rank(e) != 1:
                continue
            ok = is_2_connected(delete(m, e)) or is_2_connected(contract(m, e))
            report.result("point_removal_keeps_2_connected").record(
                ok, lambda: f"point {e}"
            )
        for e in m.elements:
            for f in m.elements:
                if e == f:
                    continue
                if m.singleton_rank(e) != 1 or m.singleton_rank(f) != 1:
                    continue
                par = m.rank(frozenset((e, f))) == 1
                ok = (conn.lam(contract(m, f), [e]) == 0) == par
                report.result("parallel_points_detected_by_contraction").record(
                    ok, lambda: f"{e},{f}"
                )
                ser = (
                    r[full ^ m.mask_of([e, f])] == r[full] - 1
                    and r[full ^ m.mask_of([e])] == r[full]
                    and r[full ^ m.mask_of([f])] == r[full]
                )
                ok = (conn.lam(delete(m, f), [e]) == 0) == ser
                report.result("series_points_detected_by_deletion").record(
                    ok, lambda: f"{e},{f}"
                )
    # the point dichotomy in 3-connected instances
    if is_3_connected(m):
        for z in m.elements:
            if m.singleton_rank(z) != 1:
                continue
            report.result("point_dichotomy_in_three_connected").record(
                _point_dichotomy_holds(m, z), lambda: f"point {z}"
            )
    # 2-sum structure along exact 2-separations
    for sep in separations(m, 2):
        if not sep.exact:
            continue
        mx, my, p = two_sum_decompose(m, sep.side_x, sep.side_y)
        ok = two_sum(mx, my, p) == m
        report.result("two_sum_roundtrip").record(
            ok, lambda: f"X={sorted(sep.side_x)}"
        )
        pc = parallel_connection(mx, my, p)
        ok = delete(pc, sorted(sep.side_y)) == mx
        report.result("parallel_connection_restricts_to_part").record(
            ok, lambda: f"X={sorted(sep.side_x)}"
        )
        if is_2_connected(m):
            ok = is_2_connected(mx) and is_2_connected(my)
            report.result("two_sum_two_connected_equivalence").record(
                ok, lambda: f"X={sorted(sep.side_x)}"
            )
        for y in sorted(sep.side_y):
            got = conn.lam(delete(my, y), [p])
            want = local_conn(m, sep.side_x, sep.side_y - {y})
            report.result("basepoint_lambda_after_part_deletion").record(
                got == want, lambda: f"X={sorted(sep.side_x)} y={y}"
            )
            got = conn.lam(contract(my, y), [p]) + local_conn(m, sep.side_x, [y])
            report.result("basepoint_lambda_after_part_contraction").record(
                got == 1, lambda: f"X={sorted(sep.side_x)} y={y}"
            )
    # switching a compactified 2-separating line past a compression
    for ell in m.elements:
        if m.singleton_rank(ell) != 2 or lam(m, [ell]) > 1:
            continue
        for k in m.elements:
            if k == ell:
                continue
            ok = compress(compactify_element(m, ell), k) == compactify_element(
                compress(m, k), ell
            )
            report.result("two_separating_line_switch").record(
                ok, lambda: f"line {ell} compress {k}"
            )
    # direct-sum duality on disconnected instances
    for sep in separations(m, 1):
        parts = (
            delete(m, sep.side_y),
            delete(m, sep.side_x),
        )
        ok = dual(m) == direct_sum(dual(parts[0]), dual(parts[1]))
        report.result("dual_of_direct_sum").record(
            ok, lambda: f"X={sorted(sep.side_x)}"
        )
        break  # one split suffices per instance
    # free additions commute
    if 2 <= m.n <= 6 and "_u" not in m.ground and "_v" not in m.ground:
        e, f = m.elements[0], m.elements[1]
        one = free_add_point(free_add_point(m, e, "_u"), f, "_v")
        other = free_add_point(free_add_point(m, f, "_v"), e, "_u")
        report.result("free_additions_commute").record(
            one == other, lambda: f"{e},{f}"
        )
    return report


def _point_dichotomy_holds(m, z):
    """One of the two removal shapes holds for a point of a 3-connected
    instance: the contraction is 2-connected and every 2-separation has a
    side that is a parallel pair of points, or the deletion is 2-connected
    and every 2-separation has a side that is a single line or a series pair
    of points."""
    mc = contract(m, z)
    shape_a = is_2_connected(mc)
    if shape_a:
        for sep in separations(mc, 2):
            if not sep.strict:
                continue
            ok = False
            for side in (sep.side_x, sep.side_y):
                if len(side) == 2:
                    a, b = sorted(side)
                    if (
                        m.singleton_rank(a) == 1
                        and m.singleton_rank(b) == 1
                        and mc.rank(frozenset((a, b))) == 1
                    ):
                        ok = True
            if not ok:
                shape_a = False
                break
    if shape_a:
        return True
    md = delete(m, z)
    shape_b = is_2_connected(md)
    if shape_b:
        full_d = md.full_mask
        for sep in separations(md, 2):
            if not sep.strict:
                continue
            ok = False
            for side in (sep.side_x, sep.side_y):
                if len(side) == 1 and m.singleton_rank(next(iter(side))) == 2:
                    ok = True
                elif len(side) == 2:
                    a, b = sorted(side)
                    if m.singleton_rank(a) == 1 and m.singleton_rank(b) == 1:
                        pair_mask = md.mask_of([a, b])
                        rd = md.rank_table
                        if (
                            rd[full_d ^ pair_mask] == rd[full_d] - 1
                            and rd[full_d ^ md.mask_of([a])] == rd[full_d]
                            and rd[full_d ^ md.mask_of([b])] == rd[full_d]
                        ):
                            ok = True
            if not ok:
                shape_b = False
                break
    return shape_b
