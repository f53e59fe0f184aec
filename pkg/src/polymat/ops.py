"""Structural operations: minors, compactification, duality, compression, sums.

Every function returns a fresh polymatroid; inputs are never mutated.  Rank
formulas are applied directly to the dense tables.  Outputs of these
operations are polymatroids by construction, so tables are built unchecked;
the test suite re-validates them.
"""

from __future__ import annotations

from .core import Polymatroid, _as_labels
from .errors import (
    BasepointRankMismatch,
    DegenerateBasepoint,
    DuplicateLabel,
    NotAnExact2Separation,
    SizeOutOfRange,
    TooSmall,
    UnknownElement,
)


def _split_masks(m, removed_mask):
    """Map each mask over the surviving elements to its mask in ``m``."""
    keep = [i for i in range(m.n) if not removed_mask >> i & 1]
    lift = [0] * (1 << len(keep))
    for sub in range(1 << len(keep)):
        x = 0
        for j, i in enumerate(keep):
            if sub >> j & 1:
                x |= 1 << i
        lift[sub] = x
    labels = tuple(m.elements[i] for i in keep)
    return labels, lift


def delete(m, subset):
    """Restriction to E - X."""
    removed = m.mask_of(subset)
    labels, lift = _split_masks(m, removed)
    table = [m.rank_table[x] for x in lift]
    return Polymatroid(labels, table, check=False)


def contract(m, subset):
    """Contraction: rank(Y) = r(Y + X) - r(X)."""
    removed = m.mask_of(subset)
    r_x = m.rank_table[removed]
    labels, lift = _split_masks(m, removed)
    table = [m.rank_table[x | removed] - r_x for x in lift]
    return Polymatroid(labels, table, check=False)


def compactify(m):
    """Adjust each element's contribution by its connectivity deficit.

    The compactified rank is r(X) + sum over x in X of (r(E-x) - r(E)); the
    result is compact and has the same connectivity function on every subset.
    """
    full = m.full_mask
    r_full = m.rank_table[full]
    drop = [m.rank_table[full ^ (1 << i)] - r_full for i in range(m.n)]
    table = list(m.rank_table)
    for mask in range(1, full + 1):
        d = 0
        mm = mask
        while mm:
            b = (mm & -mm).bit_length() - 1
            d += drop[b]
            mm &= mm - 1
        table[mask] += d
    return Polymatroid(m.elements, table, check=False)


def compactified_delete(m, subset):
    """Deletion followed by compactification."""
    return compactify(delete(m, subset))


def dual(m):
    """r*(Y) = ||Y|| + r(E - Y) - r(E)."""
    full = m.full_mask
    r_full = m.rank_table[full]
    w = [m.rank_table[1 << i] for i in range(m.n)]
    table = [0] * (full + 1)
    for mask in range(full + 1):
        s = 0
        mm = mask
        while mm:
            b = (mm & -mm).bit_length() - 1
            s += w[b]
            mm &= mm - 1
        table[mask] = s + m.rank_table[full ^ mask] - r_full
    return Polymatroid(m.elements, table, check=False)


def compress(m, label):
    """Remove an element after passing its span down to the sets it touched.

    Equivalent to freely adding a point on the element, contracting the
    point, and deleting the element; the direct rank rule is: keep r(X) when
    the element is a loop or increases the rank of X, otherwise r(X) - 1.
    """
    bit = 1 << _index(m, label)
    r_e = m.rank_table[bit]
    labels, lift = _split_masks(m, bit)
    table = []
    for x in lift:
        r = m.rank_table[x]
        if r_e == 0 or m.rank_table[x | bit] > r:
            table.append(r)
        else:
            table.append(r - 1)
    return Polymatroid(labels, table, check=False)


def compactify_element(m, label):
    """Same rank rule as compress, but the element stays in the ground set."""
    bit = 1 << _index(m, label)
    r_e = m.rank_table[bit]
    table = []
    for mask in range(m.full_mask + 1):
        r = m.rank_table[mask]
        if r_e == 0 or m.rank_table[mask | bit] > r:
            table.append(r)
        else:
            table.append(r - 1)
    return Polymatroid(m.elements, table, check=False)


def free_add_point(m, label, new_label):
    """Freely add a rank-1 element on top of an existing element."""
    bit = 1 << _index(m, label)
    if new_label in m._pos:
        raise DuplicateLabel(new_label)
    old = m.rank_table
    table = [0] * (1 << (m.n + 1))
    hi = 1 << m.n
    for mask in range(hi):
        r = old[mask]
        table[mask] = r
        table[mask | hi] = r if old[mask | bit] == r else r + 1
    return Polymatroid(m.elements + (new_label,), table, check=False)


def _fresh(base, taken):
    lbl = base
    while lbl in taken:
        lbl += "_"
    return lbl


def natural_matroid(m):
    """Replace each line by two freely placed points; delete the lines.

    Returns the derived matroid together with the label scheme mapping each
    line to its two replacement points.
    """
    lines = [e for e in m.elements if m.singleton_rank(e) == 2]
    n_out = (m.n - len(lines)) + 2 * len(lines)
    if n_out > 16:
        raise SizeOutOfRange(f"natural matroid would have {n_out} elements")
    taken = set(m.elements)
    scheme = {}
    cur = m
    for ell in lines:
        s = _fresh(ell + ".s", taken)
        taken.add(s)
        t = _fresh(ell + ".t", taken)
        taken.add(t)
        scheme[ell] = (s, t)
        cur = free_add_point(cur, ell, s)
        cur = free_add_point(cur, ell, t)
    return delete(cur, lines), scheme


def direct_sum(m1, m2):
    """Disjoint union with additive rank."""
    common = set(m1.elements) & set(m2.elements)
    if common:
        raise DuplicateLabel(sorted(common)[0])
    n1 = m1.n
    labels = m1.elements + m2.elements
    table = [0] * (1 << (n1 + m2.n))
    mask1 = (1 << n1) - 1
    for mask in range(len(table)):
        table[mask] = m1.rank_table[mask & mask1] + m2.rank_table[mask >> n1]
    return Polymatroid(labels, table, check=False)


def parallel_connection(m1, m2, p):
    """Glue two polymatroids along a shared basepoint by the min-rank rule."""
    if p not in m1._pos or p not in m2._pos:
        raise UnknownElement(p)
    common = set(m1.elements) & set(m2.elements)
    if common != {p}:
        extra = sorted(common - {p})
        raise DuplicateLabel(extra[0] if extra else p)
    rp = m1.singleton_rank(p)
    if rp != m2.singleton_rank(p):
        raise BasepointRankMismatch(
            f"r1({p!r}) = {m1.singleton_rank(p)} != r2({p!r}) = {m2.singleton_rank(p)}"
        )
    side2 = tuple(e for e in m2.elements if e != p)
    labels = m1.elements + side2
    pb1 = 1 << m1._pos[p]
    pb2 = 1 << m2._pos[p]
    # masks over `labels`: low m1.n bits are m1's elements, rest are side2
    lift2 = [1 << m2._pos[e] for e in side2]
    table = [0] * (1 << len(labels))
    for mask in range(len(table)):
        a1 = mask & ((1 << m1.n) - 1)
        a2 = 0
        rest = mask >> m1.n
        j = 0
        while rest:
            if rest & 1:
                a2 |= lift2[j]
            rest >>= 1
            j += 1
        if a1 & pb1:
            a2 |= pb2
        apart = m1.rank_table[a1] + m2.rank_table[a2]
        glued = m1.rank_table[a1 | pb1] + m2.rank_table[a2 | pb2] - rp
        table[mask] = min(apart, glued)
    return Polymatroid(labels, table, check=False)


def two_sum(m1, m2, p):
    """Parallel connection along a rank-1 basepoint, then delete the basepoint."""
    if p not in m1._pos or p not in m2._pos:
        raise UnknownElement(p)
    if m1.n < 2 or m2.n < 2:
        raise TooSmall("both parts of a 2-sum need at least two elements")
    if m1.singleton_rank(p) != 1 or m2.singleton_rank(p) != 1:
        raise BasepointRankMismatch("2-sum basepoint must have rank 1 on both sides")
    for m in (m1, m2):
        full = m.full_mask
        lam = 1 + m.rank_table[full ^ (1 << m._pos[p])] - m.rank_table[full]
        if lam == 0:
            raise DegenerateBasepoint(f"basepoint {p!r} separates one part")
    return delete(parallel_connection(m1, m2, p), p)


def two_sum_decompose(m, side_x, side_y=None):
    """Split along an exact 2-separation into two parts sharing a fresh basepoint.

    Accepts the partition as two label sets (or a single set, with the
    complement implied).  Returns (M_X, M_Y, p) with
    m == two_sum(M_X, M_Y, p) exactly.
    """
    x_mask = m.mask_of(side_x)
    if side_y is None:
        y_mask = m.full_mask ^ x_mask
    else:
        y_mask = m.mask_of(side_y)
    if x_mask | y_mask != m.full_mask or x_mask & y_mask or not x_mask or not y_mask:
        raise NotAnExact2Separation("sides must partition the ground set, both non-empty")
    r = m.rank_table
    if r[x_mask] + r[y_mask] != r[m.full_mask] + 1:
        raise NotAnExact2Separation(
            f"r(X)+r(Y) = {r[x_mask] + r[y_mask]} != r(E)+1 = {r[m.full_mask] + 1}"
        )
    p = _fresh_basepoint(m)
    part_x = _decompose_part(m, x_mask, y_mask, p)
    part_y = _decompose_part(m, y_mask, x_mask, p)
    return part_x, part_y, p


def _fresh_basepoint(m):
    i = 0
    while f"_p{i}" in m._pos:
        i += 1
    return f"_p{i}"


def _decompose_part(m, keep_mask, other_mask, p):
    """One side of the split: r1(A) = r(A) off the basepoint, else
    r((A - p) + other side) - r(other side) + 1."""
    keep = [i for i in range(m.n) if keep_mask >> i & 1]
    labels = tuple(m.elements[i] for i in keep) + (p,)
    r_other = m.rank_table[other_mask]
    table = [0] * (1 << len(labels))
    hi = 1 << len(keep)
    for sub in range(hi):
        a = 0
        for j, i in enumerate(keep):
            if sub >> j & 1:
                a |= 1 << i
        table[sub] = m.rank_table[a]
        table[sub | hi] = m.rank_table[a | other_mask] - r_other + 1
    return Polymatroid(labels, table, check=False)


def relabel(m, mapping):
    """Rename elements; labels not mentioned stay fixed."""
    for old in mapping:
        if old not in m._pos:
            raise UnknownElement(old)
    labels = tuple(mapping.get(e, e) for e in m.elements)
    seen = set()
    for lbl in labels:
        if lbl in seen:
            raise DuplicateLabel(lbl)
        seen.add(lbl)
    return Polymatroid(labels, m.rank_table, check=False)


def _index(m, label):
    try:
        return m._pos[label]
    except KeyError:
        raise UnknownElement(label) from None


def compress_by_recipe(m, label):
    """Oracle form of compress: free add, contract the new point, delete.

    Kept as an independent cross-check of the direct rank rule.
    """
    lbl = _as_labels(label)[0]
    tmp = free_add_point(m, lbl, _fresh(lbl + "~", set(m.elements)))
    added = tmp.elements[-1]
    return delete(contract(tmp, added), lbl)
