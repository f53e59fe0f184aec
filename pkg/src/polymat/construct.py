"""Builders for stock examples and an exhaustive enumerator of small instances."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

from .core import Polymatroid, closure
from .errors import DuplicateLabel, NotAFlat, SizeOutOfRange


@dataclass(frozen=True)
class Multigraph:
    """A labelled multigraph with 0-based vertices.

    ``edges`` holds (label, endpoints) pairs where endpoints is a tuple of
    two vertices for an ordinary edge, one vertex for a graph loop, and
    empty for a free loop.  Parallel edges and loops are allowed.
    """

    vertex_count: int
    edges: tuple = field(default_factory=tuple)

    def __post_init__(self):
        seen = set()
        for lbl, ends in self.edges:
            if lbl in seen:
                raise DuplicateLabel(lbl)
            seen.add(lbl)
            for v in ends:
                if not 0 <= v < self.vertex_count:
                    raise SizeOutOfRange(f"endpoint {v} outside 0..{self.vertex_count - 1}")

    @property
    def labels(self):
        return tuple(lbl for lbl, _ in self.edges)

    def endpoints(self, label):
        for lbl, ends in self.edges:
            if lbl == label:
                return ends
        raise KeyError(label)

    def delete_edge(self, label):
        return Multigraph(self.vertex_count, tuple(e for e in self.edges if e[0] != label))

    def contract_edge(self, label):
        """Ordinary graph contraction: identify the two endpoints.

        Contracting a loop or a free loop is the same as deleting it.  An
        edge parallel to the contracted one becomes a loop at the merged
        vertex.
        """
        ends = set(self.endpoints(label))
        if len(ends) <= 1:
            return self.delete_edge(label)
        lo, hi = sorted(ends)
        keep = [v for v in range(self.vertex_count) if v != hi]
        vmap = {v: i for i, v in enumerate(keep)}
        vmap[hi] = vmap[lo]
        edges = []
        for lbl, e in self.edges:
            if lbl == label:
                continue
            mapped = tuple(vmap[v] for v in e)
            if len(mapped) == 2 and mapped[0] == mapped[1]:
                mapped = (mapped[0],)
            edges.append((lbl, mapped))
        return Multigraph(len(keep), tuple(edges))

    def delete_edge_with_vertices(self, label):
        """Drop the edge together with its endpoints; other edges keep only
        surviving endpoints (possibly becoming free loops).  This is the
        graph move matching polymatroid contraction of the edge."""
        gone = set(self.endpoints(label))
        keep_vertices = [v for v in range(self.vertex_count) if v not in gone]
        vmap = {v: i for i, v in enumerate(keep_vertices)}
        edges = []
        for lbl, ends in self.edges:
            if lbl == label:
                continue
            new_ends = tuple(vmap[v] for v in ends if v in vmap)
            edges.append((lbl, new_ends))
        return Multigraph(len(keep_vertices), tuple(edges))


def mgraph(vertex_count, plain=(), loops=(), free_loops=()):
    """Convenience builder: plain edges (lbl, u, v), loops (lbl, u), free-loop labels."""
    edges = [(lbl, (u, v)) for lbl, u, v in plain]
    edges += [(lbl, (u,)) for lbl, u in loops]
    edges += [(lbl, ()) for lbl in free_loops]
    return Multigraph(vertex_count, tuple(edges))


def boolean_from_graph(g):
    """rank(X) = number of vertices incident with an edge of X."""
    labels = g.labels
    ends = [set(e) for _, e in g.edges]
    table = []
    for mask in range(1 << len(labels)):
        touched = set()
        mm = mask
        while mm:
            b = (mm & -mm).bit_length() - 1
            touched |= ends[b]
            mm &= mm - 1
        table.append(len(touched))
    return Polymatroid(labels, table, check=False)


def cycle_matroid(g):
    """rank(X) = touched vertices minus components of the subgraph spanned by X."""
    labels = g.labels
    ends = [tuple(e) for _, e in g.edges]
    table = []
    for mask in range(1 << len(labels)):
        parent = {}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        touched = set()
        mm = mask
        while mm:
            b = (mm & -mm).bit_length() - 1
            for v in ends[b]:
                if v not in parent:
                    parent[v] = v
                    touched.add(v)
            if len(ends[b]) == 2:
                ru, rv = find(ends[b][0]), find(ends[b][1])
                if ru != rv:
                    parent[ru] = rv
            mm &= mm - 1
        comps = len({find(v) for v in touched})
        table.append(len(touched) - comps)
    return Polymatroid(labels, table, check=False)


_ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def _default_labels(n):
    if n <= len(_ALPHABET):
        return tuple(_ALPHABET[:n])
    return tuple(f"e{i}" for i in range(n))


def uniform(r, n, labels=None):
    """The uniform matroid: n points with rank(X) = min(|X|, r)."""
    if not 0 <= r <= n:
        raise SizeOutOfRange(f"uniform needs 0 <= r <= n, got r={r}, n={n}")
    labels = _default_labels(n) if labels is None else tuple(labels)
    table = [min(bin(mask).count("1"), r) for mask in range(1 << n)]
    return Polymatroid(labels, table, check=False)


def wheel_graph(n):
    """Hub vertex 0, rim vertices 1..n; spokes s1..sn, rim edges r1..rn."""
    plain = [(f"s{i}", 0, i) for i in range(1, n + 1)]
    plain += [(f"r{i}", i, i % n + 1) for i in range(1, n + 1)]
    return mgraph(n + 1, plain)


def wheel(n):
    """Cycle matroid of the n-spoke wheel: 2n points of rank n."""
    if n < 3:
        raise SizeOutOfRange("wheel needs n >= 3")
    if 2 * n > 16:
        raise SizeOutOfRange("wheel exceeds the 16-element cap")
    return cycle_matroid(wheel_graph(n))


def whirl(n):
    """The rank-n whirl: the wheel's cycle matroid with the rim made independent."""
    if n < 2:
        raise SizeOutOfRange("whirl needs n >= 2")
    if 2 * n > 16:
        raise SizeOutOfRange("whirl exceeds the 16-element cap")
    base = cycle_matroid(wheel_graph(n))
    rim = base.mask_of([f"r{i}" for i in range(1, n + 1)])
    table = list(base.rank_table)
    table[rim] += 1
    return Polymatroid(base.elements, table, check=True)


@dataclass(frozen=True)
class FlatAssignment:
    """A matroid plus a map from new labels to flats of that matroid."""

    matroid: Polymatroid
    psi: dict

    def __post_init__(self):
        for e in self.matroid.elements:
            if self.matroid.singleton_rank(e) > 1:
                raise NotAFlat(e, {e})


def from_flats(fa):
    """rank(X) = matroid rank of the union of the assigned flats."""
    m = fa.matroid
    labels = tuple(fa.psi)
    flat_masks = []
    for lbl in labels:
        fmask = m.mask_of(fa.psi[lbl])
        if closure(m, m.labels_of(fmask)) != m.labels_of(fmask):
            raise NotAFlat(lbl, fa.psi[lbl])
        flat_masks.append(fmask)
    table = []
    for mask in range(1 << len(labels)):
        u = 0
        mm = mask
        while mm:
            b = (mm & -mm).bit_length() - 1
            u |= flat_masks[b]
            mm &= mm - 1
        table.append(m.rank_table[u])
    return Polymatroid(labels, table, check=True)


# -- exhaustive enumeration ----------------------------------------------


def _dfs_tables(n, preset=None):
    """All rank tables on n elements with sorted singleton ranks.

    Masks are filled in ascending order; monotonicity gives the lower bound
    from immediate submasks and the single-element exchange form of
    submodularity gives the upper bound, so every completed table is a
    2-polymatroid and none is missed.  ``preset`` pins values for chosen
    masks, which lets the top of the search tree shard across workers.
    """
    full = 1 << n
    subs = [[] for _ in range(full)]
    triples = [[] for _ in range(full)]
    for m in range(1, full):
        bits = [b for b in range(n) if m >> b & 1]
        for b in bits:
            subs[m].append(m ^ (1 << b))
        for i in range(len(bits)):
            for j in range(i + 1, len(bits)):
                e, f = 1 << bits[i], 1 << bits[j]
                triples[m].append((m ^ e, m ^ f, m ^ e ^ f))
    singles = {1 << b for b in range(n)}
    table = [0] * full
    out = []

    def rec(mask):
        if mask == full:
            out.append(tuple(table))
            return
        lo = 0
        for s in subs[mask]:
            if table[s] > lo:
                lo = table[s]
        if mask in singles:
            hi = 2
            if mask > 1:
                lo = max(lo, table[mask >> 1])
        else:
            hi = 2 * n
        for a, b, c in triples[mask]:
            v = table[a] + table[b] - table[c]
            if v < hi:
                hi = v
        if preset is not None and mask in preset:
            v = preset[mask]
            if lo <= v <= hi:
                table[mask] = v
                rec(mask + 1)
            table[mask] = 0
            return
        for v in range(lo, hi + 1):
            table[mask] = v
            rec(mask + 1)
        table[mask] = 0

    rec(1)
    return out


@lru_cache(maxsize=None)
def _perm_masks(n, groups):
    """Mask permutations for label permutations that respect the given
    grouping of positions (positions may only move within their group)."""
    res = []
    for p in permutations(range(n)):
        if any(groups[i] != groups[p[i]] for i in range(n)):
            continue
        pm = [0] * (1 << n)
        for m in range(1 << n):
            x = 0
            for b in range(n):
                if m >> b & 1:
                    x |= 1 << p[b]
            pm[m] = x
        res.append(tuple(pm))
    return tuple(res)


def _canonical_table(table, n):
    """Lexicographically least table over all label permutations."""
    groups = tuple(table[1 << i] for i in range(n))
    best = table
    for pm in _perm_masks(n, groups):
        cand = tuple(table[pm[m]] for m in range(1 << n))
        if cand < best:
            best = cand
    return best


@lru_cache(maxsize=None)
def _all_small(n):
    """Canonical tables of all 2-polymatroids on n elements, one per class."""
    if n == 0:
        return ((0,),)
    if n > 5:
        raise SizeOutOfRange("exhaustive enumeration is supported for n <= 5")
    seen = set()
    reps = []
    for t in _dfs_tables(n):
        c = _canonical_table(t, n)
        if c not in seen:
            seen.add(c)
            reps.append(c)
    return tuple(reps)


def _is_2conn_table(table, n):
    full = (1 << n) - 1
    r_full = table[full]
    return all(table[m] + table[full ^ m] > r_full for m in range(1, full))


def _is_3conn_table(table, n):
    if not _is_2conn_table(table, n):
        return False
    full = (1 << n) - 1
    r_full = table[full]
    for m in range(1, full):
        c = full ^ m
        if table[m] + table[c] - r_full <= 1:
            if max(bin(m).count("1"), table[m]) > 1 and max(bin(c).count("1"), table[c]) > 1:
                return False
    return True


def _is_compact_table(table, n):
    full = (1 << n) - 1
    return all(table[full ^ (1 << i)] == table[full] for i in range(n))


_FILTERS = {
    "all": lambda t, n: True,
    "two_connected": _is_2conn_table,
    "three_connected": _is_3conn_table,
    "compact": _is_compact_table,
}


def enumerate_small(n, filter="all", labels=None):
    """Yield every integer 2-polymatroid on n elements, once per isomorphism
    class, in a deterministic order."""
    if filter not in _FILTERS:
        raise ValueError(f"unknown filter {filter!r}")
    pred = _FILTERS[filter]
    labels = _default_labels(n) if labels is None else tuple(labels)
    for t in _all_small(n):
        if pred(t, n):
            yield Polymatroid(labels, t, check=False)


def _shard_worker(args):
    n, v1, v2 = args
    seen = set()
    reps = []
    for t in _dfs_tables(n, preset={1: v1, 2: v2}):
        c = _canonical_table(t, n)
        if c not in seen:
            seen.add(c)
            reps.append(c)
    return reps


def enumerate_small_parallel(n, filter="all", jobs=2, labels=None):
    """Same stream as enumerate_small, with the top of the search tree
    sharded across worker processes; shard merge preserves the serial order."""
    if filter not in _FILTERS:
        raise ValueError(f"unknown filter {filter!r}")
    if n < 2 or jobs <= 1:
        yield from enumerate_small(n, filter=filter, labels=labels)
        return
    if n > 5:
        raise SizeOutOfRange("exhaustive enumeration is supported for n <= 5")
    from multiprocessing import get_context

    shards = [(n, v1, v2) for v1 in range(3) for v2 in range(v1, 3)]
    with get_context("fork").Pool(jobs) as pool:
        parts = pool.map(_shard_worker, shards)
    pred = _FILTERS[filter]
    labels = _default_labels(n) if labels is None else tuple(labels)
    seen = set()
    for part in parts:
        for t in part:
            if t in seen:
                continue
            seen.add(t)
            if pred(t, n):
                yield Polymatroid(labels, t, check=False)
