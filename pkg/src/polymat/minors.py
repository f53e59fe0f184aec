"""Minor relations: decide and witness them, and locate doubly labelled elements.

The searches use the canonical forms: contractions and deletions in any
order followed by a single compactification, and any series compressions
performed after that.  Witnesses replay deterministically through the ops
module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .conn import is_3_connected, prickly_pairs
from .core import is_compact, is_isomorphic
from .errors import NotCompact, PreconditionViolated
from .ops import compactified_delete, compactify, compress, contract, delete, relabel


@dataclass(frozen=True)
class MinorWitness:
    """A replayable recipe: contract, delete, compactify once, compress along
    prickly pairs, then optionally restore a single point label."""

    contract_set: frozenset
    delete_set: frozenset
    compression_chain: tuple = ()  # ((pair, compressed), ...) in replay order
    relabel: tuple | None = None  # (label in the minor, label in the target)
    final_compactify: bool = True


def replay_witness(m, witness):
    """Apply the recipe to m; raises if a compression step is not licensed."""
    cur = m
    if witness.contract_set:
        cur = contract(cur, witness.contract_set)
    if witness.delete_set:
        cur = delete(cur, witness.delete_set)
    if witness.final_compactify:
        cur = compactify(cur)
    for pair, z in witness.compression_chain:
        if tuple(sorted(pair)) not in [tuple(sorted(p)) for p in prickly_pairs(cur)]:
            raise PreconditionViolated(
                f"compression of {z!r} is not licensed: {sorted(pair)} not prickly"
            )
        cur = compress(cur, z)
    if witness.relabel is not None:
        frm, to = witness.relabel
        cur = relabel(cur, {frm: to})
    return cur


def is_c_minor(m, n, mode="labelled"):
    """Witness that n arises from m by contractions, deletions, and one final
    compactification; None if it does not.

    In labelled mode the minor must equal n element-for-element; in
    up_to_iso mode any isomorphic copy counts.
    """
    if mode not in ("labelled", "up_to_iso"):
        raise PreconditionViolated("mode must be 'labelled' or 'up_to_iso'")
    if not is_compact(n):
        raise NotCompact("the candidate minor must be compact")
    if mode == "labelled":
        if not n.ground <= m.ground:
            return None
        removed = [e for e in m.elements if e not in n.ground]
        return _search_labelled(m, n, removed, 0, [], [])
    if n.n > m.n:
        return None
    return _search_iso(m, n, 0, m.n - n.n, [], [])


def _search_labelled(cur, target, removed, idx, cset, dset):
    if idx == len(removed):
        if compactify(cur) == target:
            return MinorWitness(
                contract_set=frozenset(cset), delete_set=frozenset(dset)
            )
        return None
    e = removed[idx]
    cset.append(e)
    found = _search_labelled(contract(cur, e), target, removed, idx + 1, cset, dset)
    cset.pop()
    if found:
        return found
    dset.append(e)
    found = _search_labelled(delete(cur, e), target, removed, idx + 1, cset, dset)
    dset.pop()
    return found


def _search_iso(cur, target, idx, to_remove, cset, dset):
    if to_remove == 0:
        if is_isomorphic(compactify(cur), target) is not None:
            return MinorWitness(
                contract_set=frozenset(cset), delete_set=frozenset(dset)
            )
        return None
    remaining = cur.n - idx
    if remaining < to_remove:
        return None
    e = cur.elements[idx]
    # keep e
    found = _search_iso(cur, target, idx + 1, to_remove, cset, dset)
    if found:
        return found
    cset.append(e)
    found = _search_iso(contract(cur, e), target, idx, to_remove - 1, cset, dset)
    cset.pop()
    if found:
        return found
    dset.append(e)
    found = _search_iso(delete(cur, e), target, idx, to_remove - 1, cset, dset)
    dset.pop()
    return found


def special_n_minor(m, n):
    """A labelled c-minor equal to n, or to n with one point label substituted.

    The witness's relabel field maps the substituted label in the minor back
    to its name in n.
    """
    if not is_compact(n):
        raise NotCompact("the candidate minor must be compact")
    if n.ground <= m.ground:
        w = is_c_minor(m, n, "labelled")
        if w is not None:
            return w
    for p in n.elements:
        if n.singleton_rank(p) != 1:
            continue
        rest = n.ground - {p}
        if not rest <= m.ground:
            continue
        for q in m.elements:
            if q == p or q in rest:
                continue
            target = relabel(n, {p: q})
            w = is_c_minor(m, target, "labelled")
            if w is not None:
                return MinorWitness(
                    contract_set=w.contract_set,
                    delete_set=w.delete_set,
                    relabel=(q, p),
                )
    return None


def is_s_minor(m, n, mode="labelled"):
    """Witness that n arises from m by c-minor moves followed by series
    compressions, each taken from a 2-element prickly separator."""
    if mode not in ("labelled", "up_to_iso"):
        raise PreconditionViolated("mode must be 'labelled' or 'up_to_iso'")
    if not is_compact(m):
        raise NotCompact("the host must be compact")
    if not is_compact(n):
        raise NotCompact("the candidate minor must be compact")
    prune_3conn = is_3_connected(n)
    if mode == "labelled":
        if not n.ground <= m.ground:
            return None
        removed = [e for e in m.elements if e not in n.ground]
        return _s_search(m, n, removed, 0, [], [], [], False, prune_3conn)
    if n.n > m.n:
        return None
    return _s_search(m, n, list(m.elements), 0, [], [], [], True, prune_3conn)


def _s_search(cur, target, pending, idx, cset, dset, zset, iso, prune_3conn):
    if idx == len(pending):
        if cur.n - len(zset) != target.n:
            return None
        base = compactify(cur)
        if prune_3conn and zset and not is_3_connected(base):
            return None
        return _chain_search(base, target, sorted(zset), (), cset, dset, iso, prune_3conn)
    e = pending[idx]
    if iso:
        # keep e for the minor
        found = _s_search(cur, target, pending, idx + 1, cset, dset, zset, iso, prune_3conn)
        if found:
            return found
    cset.append(e)
    found = _s_search(
        contract(cur, e), target, _drop(pending, idx), idx, cset, dset, zset, iso, prune_3conn
    )
    cset.pop()
    if found:
        return found
    dset.append(e)
    found = _s_search(
        delete(cur, e), target, _drop(pending, idx), idx, cset, dset, zset, iso, prune_3conn
    )
    dset.pop()
    if found:
        return found
    zset.append(e)
    found = _s_search(cur, target, pending, idx + 1, cset, dset, zset, iso, prune_3conn)
    zset.pop()
    return found


def _drop(seq, idx):
    return seq[:idx] + seq[idx + 1 :]


def _chain_search(cur, target, z_left, chain, cset, dset, iso, prune_3conn):
    if not z_left:
        if iso:
            ok = is_isomorphic(cur, target) is not None
        else:
            ok = cur == target
        if ok:
            return MinorWitness(
                contract_set=frozenset(cset),
                delete_set=frozenset(dset),
                compression_chain=chain,
            )
        return None
    pairs = prickly_pairs(cur)
    for z in z_left:
        partners = [p for p in pairs if z in p]
        if not partners:
            continue
        nxt = compress(cur, z)
        if prune_3conn and not is_3_connected(nxt):
            continue
        rest = [w for w in z_left if w != z]
        found = _chain_search(
            nxt, target, rest, chain + ((frozenset(partners[0]), z),), cset, dset, iso, prune_3conn
        )
        if found:
            return found
    return None


def doubly_labelled(m, n):
    """Elements whose compactified deletion and contraction both retain a
    minor equal to n up to one point relabel."""
    if is_c_minor(m, n, "labelled") is None:
        raise PreconditionViolated("the reference minor must be a labelled c-minor")
    out = []
    for ell in m.elements:
        if special_n_minor(compactified_delete(m, ell), n) is None:
            continue
        if special_n_minor(contract(m, ell), n) is None:
            continue
        out.append(ell)
    return out
