"""Connectivity, local connectivity, separations, prickly separators,
triangles/triads/fans, the 3-element classification, and non-minor-side sizes."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .core import ElementKind, element_kind
from .errors import NoTwoSeparation, PreconditionViolated, Undefined
from .ops import compactified_delete, contract, dual


def lam(m, subset):
    """Connectivity of a subset: r(X) + r(E - X) - r(E)."""
    mask = m.mask_of(subset)
    return m.rank_table[mask] + m.rank_table[m.full_mask ^ mask] - m.rank_table[m.full_mask]


def local_conn(m, x, y):
    """Local connectivity between two subsets: r(X) + r(Y) - r(X + Y)."""
    mx, my = m.mask_of(x), m.mask_of(y)
    return m.rank_table[mx] + m.rank_table[my] - m.rank_table[mx | my]


def local_conn_dual(m, x, y):
    """Local connectivity measured in the dual; the subsets must be disjoint."""
    mx, my = m.mask_of(x), m.mask_of(y)
    if mx & my:
        raise PreconditionViolated("dual local connectivity needs disjoint subsets")
    return local_conn(dual(m), x, y)


def is_k_separating(m, subset, k):
    """lambda(X) <= k - 1, with no side-size conditions."""
    return lam(m, subset) <= k - 1


def is_three_separation(m, subset):
    """The stronger notion used for 3-connected instances: the partition is
    exactly 3-separating and both sides have rank above two."""
    mask = m.mask_of(subset)
    comp = m.full_mask ^ mask
    r = m.rank_table
    return (
        r[mask] + r[comp] - r[m.full_mask] == 2 and r[mask] > 2 and r[comp] > 2
    )


@dataclass(frozen=True)
class Separation:
    """A certified partition of the ground set with its connectivity value.

    ``strict`` records whether the partition meets the side conditions of
    the formal k-separation notion it was enumerated under (the plain
    "k-separating" predicate has no such conditions; the two are kept
    distinct everywhere).
    """

    side_x: frozenset
    side_y: frozenset
    lam: int
    exact: bool
    trivial: bool
    strict: bool
    n_side: str | None = None


def _is_trivial(m, mask, lam_value):
    if lam_value > 1:
        return False
    for side in (mask, m.full_mask ^ mask):
        if bin(side).count("1") == 1 and m.rank_table[side] == 2:
            return True
    return False


def _strict_for_k(m, mask, lam_value, k):
    comp = m.full_mask ^ mask
    r = m.rank_table
    if k == 1:
        return lam_value == 0
    if k == 2:
        return (
            lam_value <= 1
            and max(bin(mask).count("1"), r[mask]) > 1
            and max(bin(comp).count("1"), r[comp]) > 1
        )
    return lam_value == 2 and r[mask] > 2 and r[comp] > 2


def separations(m, k):
    """All unordered partitions with lambda <= k - 1, the side containing the
    first element listed first, in ascending bitmask order."""
    if k not in (1, 2, 3):
        raise PreconditionViolated("k must be 1, 2, or 3")
    out = []
    full = m.full_mask
    r = m.rank_table
    r_full = r[full]
    for mask in range(1, full):
        if not mask & 1:
            continue
        lv = r[mask] + r[full ^ mask] - r_full
        if lv <= k - 1:
            out.append(
                Separation(
                    side_x=m.labels_of(mask),
                    side_y=m.labels_of(full ^ mask),
                    lam=lv,
                    exact=lv == k - 1,
                    trivial=_is_trivial(m, mask, lv),
                    strict=_strict_for_k(m, mask, lv, k),
                )
            )
    return out


def is_2_connected(m):
    """No proper non-empty subset with lambda = 0."""
    full = m.full_mask
    r = m.rank_table
    r_full = r[full]
    for mask in range(1, full):
        if r[mask] + r[full ^ mask] == r_full:
            return False
    return True


def is_3_connected(m):
    """2-connected with no 2-separation (both sides of size or rank above one)."""
    full = m.full_mask
    r = m.rank_table
    r_full = r[full]
    for mask in range(1, full):
        comp = full ^ mask
        lv = r[mask] + r[comp] - r_full
        if lv == 0:
            return False
        if lv == 1:
            if max(bin(mask).count("1"), r[mask]) > 1 and max(
                bin(comp).count("1"), r[comp]
            ) > 1:
                return False
    return True


# -- prickly separators ----------------------------------------------------


@dataclass(frozen=True)
class PricklyCertificate:
    """A set of lines with the full witness for the four defining conditions."""

    z: frozenset
    kinds: tuple  # ((label, ElementKind), ...) in label order
    lam: int
    complement_profile: tuple  # ((labels of Z'), r((E-Z)+Z'), expected) for proper Z'
    subset_profile: tuple  # ((labels of Z'), r(Z'), expected) for non-empty Z'


def _prickly_mask(m, zmask):
    """Check the prickly conditions for a candidate mask; witness or None."""
    r = m.rank_table
    zbits = [b for b in range(m.n) if zmask >> b & 1]
    size = len(zbits)
    if size < 2:
        return None
    for b in zbits:
        if r[1 << b] != 2:
            return None
    comp = m.full_mask ^ zmask
    if r[zmask] + r[comp] - r[m.full_mask] != 2:
        return None
    comp_profile = []
    sub_profile = []
    for sub in range(1 << size):
        zp = 0
        for j, b in enumerate(zbits):
            if sub >> j & 1:
                zp |= 1 << b
        cnt = bin(sub).count("1")
        if zp != zmask:
            expected = r[comp] + cnt
            got = r[comp | zp]
            if got != expected:
                return None
            comp_profile.append((tuple(sorted(m.labels_of(zp))), got, expected))
        if sub:
            expected = 2 if cnt == 1 else (cnt + 2 if cnt < size else size + 1)
            got = r[zp]
            if got != expected:
                return None
            sub_profile.append((tuple(sorted(m.labels_of(zp))), got, expected))
    kinds = tuple(
        (m.elements[b], element_kind(m, m.elements[b])) for b in zbits
    )
    return PricklyCertificate(
        z=m.labels_of(zmask),
        kinds=kinds,
        lam=2,
        complement_profile=tuple(comp_profile),
        subset_profile=tuple(sub_profile),
    )


def is_prickly(m, subset):
    return _prickly_mask(m, m.mask_of(subset)) is not None


def prickly_separators(m, size_cap=None):
    """All prickly sets of size up to the cap, each with its full witness."""
    cap = m.n if size_cap is None else size_cap
    out = []
    for mask in range(1, m.full_mask + 1):
        if not 2 <= bin(mask).count("1") <= cap:
            continue
        cert = _prickly_mask(m, mask)
        if cert is not None:
            out.append(cert)
    return out


def prickly_pairs(m):
    """The 2-element prickly separators, as sorted label pairs."""
    return [
        tuple(sorted(c.z)) for c in prickly_separators(m, size_cap=2) if len(c.z) == 2
    ]


# -- triangles, triads, fans ------------------------------------------------


def _points(m):
    return [e for e in m.elements if m.singleton_rank(e) == 1]


def triangles(m):
    """3-sets of points in which every pair, and the triple, has rank two."""
    out = []
    pts = _points(m)
    for trip in combinations(pts, 3):
        masks = [m.mask_of(t) for t in trip]
        whole = masks[0] | masks[1] | masks[2]
        if m.rank_table[whole] != 2:
            continue
        if all(
            m.rank_table[masks[i] | masks[j]] == 2
            for i, j in ((0, 1), (0, 2), (1, 2))
        ):
            out.append(frozenset(trip))
    return out


def triads(m):
    """3-sets of points whose removal drops the rank by exactly one, while
    keeping any of the three restores it."""
    out = []
    pts = _points(m)
    full = m.full_mask
    r_full = m.rank_table[full]
    for trip in combinations(pts, 3):
        tmask = m.mask_of(trip)
        rest = full ^ tmask
        if m.rank_table[rest] != r_full - 1:
            continue
        if all(m.rank_table[rest | 1 << m._pos[t]] == r_full for t in trip):
            out.append(frozenset(trip))
    return out


@dataclass(frozen=True)
class FanRecord:
    points: tuple
    start: str  # "triangle" | "triad"


def fans(m):
    """Maximal alternating triangle/triad point sequences, one per symmetry class."""
    tris = set(triangles(m))
    trias = set(triads(m))
    if not tris and not trias:
        return []
    pts = _points(m)
    by_type = {"triangle": tris, "triad": trias}

    def window_type(trip):
        fs = frozenset(trip)
        if fs in tris:
            return "triangle"
        if fs in trias:
            return "triad"
        return None

    def other(t):
        return "triad" if t == "triangle" else "triangle"

    maximal = []

    def extend(seq, last_type):
        grew = False
        for w in pts:
            if w in seq:
                continue
            if frozenset((seq[-2], seq[-1], w)) in by_type[other(last_type)]:
                grew = True
                extend(seq + (w,), other(last_type))
        if not grew:
            maximal.append(seq)

    for trip in combinations(pts, 3):
        t = window_type(trip)
        if t is None:
            continue
        for perm in permutations(trip):
            extend(perm, t)

    # drop sequences extendable on the left; they reappear inside longer ones
    kept = []
    for seq in maximal:
        first = window_type(seq[:3])
        left_ext = any(
            w not in seq and frozenset((w, seq[0], seq[1])) in by_type[other(first)]
            for w in pts
        )
        if not left_ext:
            kept.append(seq)

    groups = {}
    for seq in kept:
        windows = frozenset(
            (frozenset(seq[i : i + 3]), window_type(seq[i : i + 3]))
            for i in range(len(seq) - 2)
        )
        key = (frozenset(seq), windows)
        if key not in groups or seq < groups[key]:
            groups[key] = seq
    out = [
        FanRecord(points=seq, start=window_type(seq[:3]))
        for seq in sorted(groups.values())
    ]
    return out


# -- the nine 3-element classes ---------------------------------------------


@dataclass(frozen=True)
class ThreeElementClass:
    number: int  # 1..9
    rank: int
    kinds: tuple  # kinds of the two unmarked elements, sorted line-first
    profile: tuple  # sorted local connectivities of the unmarked pair against p

    @property
    def name(self):
        return f"P{self.number}"


def classify_three_element(p, marked):
    """Assign a 2-connected 3-element instance with a marked point to its class.

    Classes are keyed by total rank, the kinds of the two unmarked elements,
    and their local connectivities against the marked point; the key is
    injective over the nine realizable configurations.
    """
    if p.n != 3:
        raise PreconditionViolated("classification needs exactly three elements")
    if marked not in p._pos:
        raise PreconditionViolated(f"{marked!r} is not an element")
    if p.singleton_rank(marked) != 1:
        raise PreconditionViolated("the marked element must be a point")
    if p.total_rank() < 2:
        raise PreconditionViolated("total rank must be at least two")
    if not is_2_connected(p):
        raise PreconditionViolated("instance must be 2-connected")
    others = [e for e in p.elements if e != marked]
    rk = p.total_rank()
    kinds = tuple(
        sorted((element_kind(p, e) for e in others), key=lambda k: k.value)
    )
    profile = tuple(sorted(local_conn(p, [e], [marked]) for e in others))
    two_lines = kinds == (ElementKind.LINE, ElementKind.LINE)
    line_point = kinds == (ElementKind.LINE, ElementKind.POINT)
    two_points = kinds == (ElementKind.POINT, ElementKind.POINT)
    number = None
    if rk == 2:
        if two_points:
            number = 1
        elif line_point:
            number = 2 if profile == (0, 1) else 3 if profile == (1, 1) else None
        elif two_lines:
            number = 4
    elif rk == 3:
        if line_point and profile == (0, 0):
            number = 7
        elif two_lines:
            number = {(1, 1): 6, (0, 1): 5, (0, 0): 8}.get(profile)
    elif rk == 4:
        if two_lines and profile == (0, 0):
            number = 9
    if number is None:
        raise PreconditionViolated(
            f"unclassifiable configuration: rank={rk} kinds={kinds} profile={profile}"
        )
    return ThreeElementClass(number=number, rank=rk, kinds=kinds, profile=profile)


# -- non-minor-side sizes ----------------------------------------------------


def mu(m, n_elements, ell, side):
    """Largest non-minor side over the 2-separations of the single-move reduct.

    ``side`` selects the reduct: "delete" uses the compactified deletion,
    "contract" the contraction.  The caller vouches that the reduct retains
    the minor; the minor's label set alone determines side classification.
    """
    if side not in ("delete", "contract"):
        raise PreconditionViolated("side must be 'delete' or 'contract'")
    n_labels = frozenset(n_elements)
    if ell in n_labels:
        raise Undefined(f"{ell!r} belongs to the retained minor's ground set")
    reduct = compactified_delete(m, ell) if side == "delete" else contract(m, ell)
    threshold = len(n_labels) - 1
    best = None
    full = reduct.full_mask
    r = reduct.rank_table
    r_full = r[full]
    for mask in range(1, full):
        if not mask & 1:
            continue
        comp = full ^ mask
        lv = r[mask] + r[comp] - r_full
        if lv > 1:
            continue
        if max(bin(mask).count("1"), r[mask]) <= 1 or max(
            bin(comp).count("1"), r[comp]
        ) <= 1:
            continue
        cnt_x = len(reduct.labels_of(mask) & n_labels)
        cnt_y = len(n_labels) - cnt_x
        x_qualifies = cnt_x >= threshold
        y_qualifies = cnt_y >= threshold
        assert x_qualifies != y_qualifies, "ambiguous side resolution"
        non_n = comp if x_qualifies else mask
        size = bin(non_n).count("1")
        if best is None or size > best:
            best = size
    if best is None:
        raise NoTwoSeparation("the reduct is 3-connected")
    return best
