"""Exact representation of integer 2-polymatroids on small ground sets.

A 2-polymatroid is stored densely: an ordered tuple of element labels and a
rank table of length ``2**n`` indexed by subset bitmask, where bit ``i``
corresponds to ``elements[i]``.  All derived quantities (closure, weight,
connectivity, ...) are computed from the table.  Ground sets are capped at
16 elements so tables stay exact and in memory.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import AxiomViolation, DuplicateLabel, SizeOutOfRange, UnknownElement

MAX_ELEMENTS = 16


class ElementKind(enum.Enum):
    LINE = "line"
    POINT = "point"
    LOOP = "loop"


@dataclass(frozen=True)
class IsoWitness:
    """A rank-preserving bijection between two ground sets."""

    mapping: dict

    def apply(self, label):
        return self.mapping[label]

    def inverse(self):
        return IsoWitness({v: k for k, v in self.mapping.items()})

    def compose(self, other):
        """Witness for M1 ~ M3 given self: M1 ~ M2 and other: M2 ~ M3."""
        return IsoWitness({k: other.mapping[v] for k, v in self.mapping.items()})


def _as_labels(subset):
    """Normalize a subset argument: a bare string is a single label."""
    if isinstance(subset, str):
        return (subset,)
    return tuple(subset)


class Polymatroid:
    """An integer 2-polymatroid given by labels and a dense rank table.

    Instances are immutable once built; every operation in this package
    returns a fresh value, so sharing across workers is safe.
    """

    __slots__ = ("elements", "rank_table", "_pos", "_key")

    def __init__(self, elements, rank_table, *, check=True):
        elements = tuple(elements)
        rank_table = tuple(int(v) for v in rank_table)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "rank_table", rank_table)
        object.__setattr__(self, "_pos", {e: i for i, e in enumerate(elements)})
        object.__setattr__(self, "_key", None)
        if len(self._pos) != len(elements):
            seen = set()
            for e in elements:
                if e in seen:
                    raise DuplicateLabel(e)
                seen.add(e)
        if len(elements) > MAX_ELEMENTS:
            raise SizeOutOfRange(f"{len(elements)} elements exceeds the cap of {MAX_ELEMENTS}")
        if len(rank_table) != 1 << len(elements):
            raise ValueError(f"table length {len(rank_table)} != 2^{len(elements)}")
        if check:
            _check_axioms(self)

    def __setattr__(self, name, value):
        raise AttributeError("Polymatroid is immutable")

    def __reduce__(self):
        return (_rebuild, (self.elements, self.rank_table))

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self):
        return len(self.elements)

    @property
    def full_mask(self):
        return (1 << len(self.elements)) - 1

    @property
    def ground(self):
        return frozenset(self.elements)

    def mask_of(self, subset):
        m = 0
        pos = self._pos
        for lbl in _as_labels(subset):
            try:
                m |= 1 << pos[lbl]
            except KeyError:
                raise UnknownElement(lbl) from None
        return m

    def labels_of(self, mask):
        els = self.elements
        return frozenset(els[i] for i in range(len(els)) if mask >> i & 1)

    def rank_mask(self, mask):
        return self.rank_table[mask]

    def rank(self, subset):
        return self.rank_table[self.mask_of(subset)]

    def total_rank(self):
        return self.rank_table[self.full_mask]

    def singleton_rank(self, label):
        try:
            return self.rank_table[1 << self._pos[label]]
        except KeyError:
            raise UnknownElement(label) from None

    # -- value semantics ---------------------------------------------------

    def canonical_key(self):
        """Label-order-independent identity: table re-indexed by sorted labels."""
        key = self._key
        if key is None:
            order = sorted(range(self.n), key=lambda i: self.elements[i])
            remap = [0] * (1 << self.n)
            for m in range(1 << self.n):
                x = 0
                for j, i in enumerate(order):
                    if m >> j & 1:
                        x |= 1 << i
                remap[m] = x
            key = (
                tuple(self.elements[i] for i in order),
                tuple(self.rank_table[remap[m]] for m in range(1 << self.n)),
            )
            object.__setattr__(self, "_key", key)
        return key

    def __eq__(self, other):
        if not isinstance(other, Polymatroid):
            return NotImplemented
        if self.elements == other.elements:
            return self.rank_table == other.rank_table
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        els = ",".join(self.elements)
        return f"Polymatroid([{els}], rank={self.total_rank()})"


def _rebuild(elements, rank_table):
    return Polymatroid(elements, rank_table, check=False)


def _check_axioms(m):
    """Check the four axioms, reporting the first failure in a fixed order.

    Monotonicity and submodularity are checked through their single-element
    exchange forms, which are equivalent and keep validation at
    O(2^n * n^2); the reported witness is the first violating pair with
    masks scanned in ascending order.
    """
    table = m.rank_table
    n = m.n
    if table[0] != 0:
        raise AxiomViolation("normalization", frozenset(), f"rank of empty set is {table[0]}")
    for v in table:
        if v < 0:
            raise AxiomViolation("normalization", frozenset(), "negative rank")
    for mask in range(1 << n):
        for b in range(n):
            if mask >> b & 1:
                continue
            if table[mask | 1 << b] < table[mask]:
                raise AxiomViolation(
                    "monotone", (m.labels_of(mask), m.labels_of(mask | 1 << b))
                )
    for mask in range(1 << n):
        free = [b for b in range(n) if not mask >> b & 1]
        for i, e in enumerate(free):
            for f in free[i + 1 :]:
                a = mask | 1 << e
                b = mask | 1 << f
                if table[a] + table[b] < table[a | b] + table[mask]:
                    raise AxiomViolation("submodular", (m.labels_of(a), m.labels_of(b)))
    for i, lbl in enumerate(m.elements):
        if table[1 << i] > 2:
            raise AxiomViolation("element_rank", lbl, f"rank {table[1 << i]} > 2")


def validate(elements, rank_table):
    """Build a polymatroid, accepting the table iff all four axioms hold."""
    return Polymatroid(elements, rank_table, check=True)


def rank(m, subset):
    return m.rank(subset)


def norm(m, subset):
    """The weight of a subset: the sum of its singleton ranks."""
    return sum(m.singleton_rank(lbl) for lbl in _as_labels(subset))


def closure(m, subset):
    """cl(X) = {x : r(X + x) = r(X)}; extensive, monotone, idempotent."""
    mask = m.mask_of(subset)
    r = m.rank_table[mask]
    out = 0
    for i in range(m.n):
        if m.rank_table[mask | 1 << i] == r:
            out |= 1 << i
    return m.labels_of(out)


def element_kind(m, label):
    r = m.singleton_rank(label)
    return ElementKind.LINE if r == 2 else ElementKind.POINT if r == 1 else ElementKind.LOOP


def is_compact(m):
    """True iff every element e satisfies r(E - e) = r(E)."""
    full = m.full_mask
    r_full = m.rank_table[full]
    return all(m.rank_table[full ^ (1 << i)] == r_full for i in range(m.n))


def compactness_report(m):
    """Per-element compactness: label -> whether r(E - e) = r(E)."""
    full = m.full_mask
    r_full = m.rank_table[full]
    return {
        lbl: m.rank_table[full ^ (1 << i)] == r_full for i, lbl in enumerate(m.elements)
    }


def _signatures(m):
    full = m.full_mask
    r_full = m.rank_table[full]
    sigs = []
    for i in range(m.n):
        r1 = m.rank_table[1 << i]
        lam = r1 + m.rank_table[full ^ (1 << i)] - r_full
        sigs.append((r1, lam))
    return sigs


def is_isomorphic(m1, m2, fixed=None):
    """Search for a rank-preserving bijection; None when there is none.

    Elements are first bucketed by (singleton rank, singleton connectivity)
    signature, then assigned by backtracking in label order, earliest
    consistent target first.  ``fixed`` optionally pins chosen labels of m1
    to required images in m2.
    """
    if m1.n != m2.n:
        return None
    if m1.total_rank() != m2.total_rank():
        return None
    if sorted(m1.rank_table) != sorted(m2.rank_table):
        return None
    sig1 = _signatures(m1)
    sig2 = _signatures(m2)
    if sorted(sig1) != sorted(sig2):
        return None
    n = m1.n
    t1, t2 = m1.rank_table, m2.rank_table
    pinned = {}
    if fixed:
        for a, b in fixed.items():
            if a not in m1._pos:
                raise UnknownElement(a)
            if b not in m2._pos:
                raise UnknownElement(b)
            pinned[m1._pos[a]] = m2._pos[b]
    phi = [-1] * n  # position in m2 for each position in m1
    used = [False] * n
    image = [0] * (1 << n)  # image[mask over assigned prefix] as m2-mask

    def extend(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or sig2[j] != sig1[i]:
                continue
            if i in pinned and j != pinned[i]:
                continue
            ok = True
            hi = 1 << i
            for s in range(hi):
                if t1[s | hi] != t2[image[s] | 1 << j]:
                    ok = False
                    break
            if ok:
                phi[i] = j
                used[j] = True
                for s in range(hi):
                    image[s | hi] = image[s] | 1 << j
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    if not extend(0):
        return None
    return IsoWitness({m1.elements[i]: m2.elements[phi[i]] for i in range(n)})
