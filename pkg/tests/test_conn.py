"""Connectivity, separations, prickly separators, triangles/triads/fans,
the nine-class key, and non-minor side sizes."""

import itertools

import pytest

import polymat as pm
from polymat.core import ElementKind

from conftest import cycle_graph, demoting_example


class TestLambda:
    def test_incidence_triangle_edge(self, m2c3):
        assert pm.lam(m2c3, "e0") == 2

    def test_uniform_point(self, u23):
        assert pm.lam(u23, "a") == 1

    def test_empty(self, m2c3):
        assert pm.lam(m2c3, []) == 0

    def test_symmetry_and_uncrossing(self, small_all):
        for m in small_all[4][:40]:
            for x in range(1 << m.n):
                assert pm.lam(m, m.labels_of(x)) == pm.lam(
                    m, m.labels_of(m.full_mask ^ x)
                )
                assert pm.lam(m, m.labels_of(x)) >= 0


class TestLocalConn:
    def test_skew_parts_of_direct_sum(self):
        s = pm.direct_sum(pm.uniform(2, 2), pm.uniform(2, 2, labels="xy"))
        assert pm.local_conn(s, ["a", "b"], ["x", "y"]) == 0

    def test_adjacent_edges_meet_in_one_vertex(self, m2c3):
        assert pm.local_conn(m2c3, "e0", "e1") == 1

    def test_dual_local_conn_by_contraction(self, small_all):
        for m in small_all[3]:
            n = m.n
            for assign in range(3**n):
                a = b = c = 0
                x = assign
                for i in range(n):
                    part = x % 3
                    x //= 3
                    if part == 0:
                        a |= 1 << i
                    elif part == 1:
                        b |= 1 << i
                    else:
                        c |= 1 << i
                la, lb, lc = m.labels_of(a), m.labels_of(b), m.labels_of(c)
                assert pm.local_conn_dual(m, la, lb) == pm.lam(pm.contract(m, lc), la)

    def test_dual_requires_disjoint(self, m2c3):
        with pytest.raises(pm.PreconditionViolated):
            pm.local_conn_dual(m2c3, ["e0"], ["e0", "e1"])

    def test_rank_dual_rank_weight_identity(self, small_all):
        for m in small_all[3]:
            star = pm.dual(m)
            for mask in range(1 << m.n):
                labels = m.labels_of(mask)
                assert pm.lam(m, labels) == pm.rank(m, labels) + pm.rank(
                    star, labels
                ) - pm.norm(m, labels)


class TestSeparations:
    def test_direct_sum_parts_appear(self):
        s = pm.direct_sum(pm.uniform(2, 2), pm.uniform(1, 2, labels="xy"))
        ones = pm.separations(s, 1)
        sides = {frozenset(sep.side_x) for sep in ones} | {
            frozenset(sep.side_y) for sep in ones
        }
        assert frozenset(("a", "b")) in sides and frozenset(("x", "y")) in sides

    def test_triangle_has_no_two_separations(self, m2c3):
        assert pm.separations(m2c3, 2) == []
        threes = pm.separations(m2c3, 3)
        exact_sides = {
            frozenset(s.side_x if len(s.side_x) == 2 else s.side_y)
            for s in threes
            if s.exact
        }
        assert frozenset(("e0", "e1")) in exact_sides

    def test_trivial_flag_on_single_line(self):
        m = demoting_example()
        twos = pm.separations(m, 2)
        trivial = [s for s in twos if s.trivial]
        assert any(
            s.side_x == frozenset(["l"]) or s.side_y == frozenset(["l"])
            for s in trivial
        )

    def test_both_three_separating_notions_exposed(self, m2c3):
        # a pair of edges is exactly 3-separating, yet the strict notion
        # fails because the single-edge side has rank two
        assert pm.is_k_separating(m2c3, ["e0", "e1"], 3)
        assert not pm.is_three_separation(m2c3, ["e0", "e1"])

    def test_strict_three_separation(self):
        m = pm.boolean_from_graph(cycle_graph(6))
        side = ["e0", "e1", "e2"]
        assert pm.lam(m, side) == 2
        assert pm.is_three_separation(m, side)


class TestConnectivityPredicates:
    def test_incidence_triangle(self, m2c3):
        assert pm.is_3_connected(m2c3)

    def test_uniform_line(self, u24):
        assert pm.is_3_connected(u24)

    def test_direct_sums_disconnected(self, small_all):
        for a in small_all[2][:5]:
            b = pm.relabel(a, {a.elements[0]: "x", a.elements[1]: "y"})
            s = pm.direct_sum(a, b)
            assert not pm.is_2_connected(s) and not pm.is_3_connected(s)

    def test_empty_and_singletons(self):
        empty = pm.validate([], [0])
        assert pm.is_2_connected(empty) and pm.is_3_connected(empty)
        for table in ([0, 0], [0, 1], [0, 2]):
            m = pm.validate(["a"], table)
            assert pm.is_2_connected(m) and pm.is_3_connected(m)


class TestPrickly:
    def test_adjacent_edge_pairs(self, m2c3):
        pairs = pm.prickly_pairs(m2c3)
        assert pairs == [("e0", "e1"), ("e0", "e2"), ("e1", "e2")]

    def test_no_lines_no_prickly(self, u24):
        assert pm.prickly_separators(u24) == []

    def test_certificate_contents(self, m2c3):
        cert = pm.prickly_separators(m2c3, size_cap=2)[0]
        assert cert.lam == 2
        assert all(kind is ElementKind.LINE for _, kind in cert.kinds)
        assert all(got == want for _, got, want in cert.complement_profile)
        assert all(got == want for _, got, want in cert.subset_profile)

    def test_self_dual_for_pairs(self, small_3conn):
        for m in small_3conn[4] + small_3conn[3]:
            star = pm.dual(m)
            assert pm.prickly_pairs(m) == pm.prickly_pairs(star)

    def test_series_pair_in_five_cycle(self, m2c5):
        pairs = {tuple(sorted(p)) for p in pm.prickly_pairs(m2c5)}
        assert ("e0", "e1") in pairs and ("e0", "e2") not in pairs


class TestTrianglesTriadsFans:
    def test_uniform_triangle(self, u23):
        assert pm.triangles(u23) == [frozenset(("a", "b", "c"))]

    def test_wheel_structure(self):
        w = pm.wheel(3)
        tris = pm.triangles(w)
        trias = pm.triads(w)
        assert len(tris) == 4 and len(trias) == 4  # complete graph on 4 vertices
        assert set().union(*tris) == set(w.elements)
        assert set().union(*trias) == set(w.elements)

    def test_triangle_triad_overlap_never_one(self, small_3conn):
        for m in small_3conn[4]:
            for t in pm.triangles(m):
                for s in pm.triads(m):
                    assert len(t & s) != 1

    def test_fans_alternate(self):
        w = pm.wheel(3)
        for fan in pm.fans(w):
            pts = fan.points
            assert len(pts) >= 3 and len(set(pts)) == len(pts)
            tris = {frozenset(t) for t in pm.triangles(w)}
            trias = {frozenset(t) for t in pm.triads(w)}
            kinds = []
            for i in range(len(pts) - 2):
                window = frozenset(pts[i : i + 3])
                assert window in tris or window in trias
                kinds.append("triangle" if window in tris else "triad")
            assert kinds[0] == fan.start
            for a, b in zip(kinds, kinds[1:]):
                assert a != b

    def test_fans_deduplicated(self, u23):
        fans = pm.fans(u23)
        assert len(fans) == 1 and fans[0].points == ("a", "b", "c")
        assert fans[0].start == "triangle"


class TestNineClasses:
    def test_all_points_class(self, u23):
        got = pm.classify_three_element(u23, "a")
        assert got.number == 1
        assert got.rank == 2 and got.profile == (0, 0)

    def test_two_skew_lines_class(self):
        m = pm.validate(["p", "a", "b"], [0, 1, 2, 3, 2, 3, 4, 4])
        got = pm.classify_three_element(m, "p")
        assert got.number == 9 and got.name == "P9"

    def test_parallel_lines_class(self):
        m = pm.validate(["p", "a", "b"], [0, 1, 2, 2, 2, 2, 2, 2])
        assert pm.classify_three_element(m, "p").number == 4

    def test_classifier_rejects_bad_inputs(self, u24, m2c3):
        with pytest.raises(pm.PreconditionViolated):
            pm.classify_three_element(u24, "a")  # four elements
        with pytest.raises(pm.PreconditionViolated):
            pm.classify_three_element(m2c3, "e0")  # marked element not a point
        skew = pm.validate(["p", "a", "b"], [0, 1, 1, 2, 1, 2, 2, 3])
        with pytest.raises(pm.PreconditionViolated):
            pm.classify_three_element(skew, "p")  # not 2-connected

    def test_total_and_injective_on_marked_classes(self):
        marked = []
        for m in pm.enumerate_small(3, "two_connected"):
            if m.total_rank() < 2:
                continue
            for p in m.elements:
                if m.singleton_rank(p) == 1:
                    marked.append((m, p))
        uniq = []
        for m, p in marked:
            if not any(pm.is_isomorphic(m, o, fixed={p: q}) for o, q in uniq):
                uniq.append((m, p))
        assert len(uniq) == 9
        numbers = sorted(pm.classify_three_element(m, p).number for m, p in uniq)
        assert numbers == list(range(1, 10))


class TestMu:
    def test_no_two_separation(self, m2c4):
        n_labels = ["e1", "e2", "e3"]
        # deleting e0 and compactifying leaves a 3-connected instance
        with pytest.raises(pm.NoTwoSeparation):
            pm.mu(m2c4, n_labels, "e0", "delete")

    def test_known_split_sizes(self):
        from conftest import doubled_c5

        m = pm.boolean_from_graph(doubled_c5())
        n_lab = pm.compactify(pm.contract(m, ["e4", "e5"]))
        assert pm.is_3_connected(n_lab) and n_lab.n == 4
        for ell in ("e4", "e5"):
            assert (
                pm.is_c_minor(pm.compactified_delete(m, ell), n_lab, "labelled")
                is not None
            )
            got = pm.mu(m, n_lab.elements, ell, "delete")
            assert got == self._oracle(m, n_lab.elements, ell) == 2

    @staticmethod
    def _oracle(m, n_labels, ell):
        """Direct sweep over all splits of the compactified deletion."""
        red = pm.compactified_delete(m, ell)
        n_set = frozenset(n_labels)
        best = None
        elems = red.elements
        for mask in range(1, red.full_mask):
            x = {elems[i] for i in range(red.n) if mask >> i & 1}
            y = set(elems) - x
            if pm.lam(red, x) > 1:
                continue
            if max(len(x), pm.rank(red, x)) <= 1 or max(len(y), pm.rank(red, y)) <= 1:
                continue
            non_n = y if len(x & n_set) >= len(n_set) - 1 else x
            best = max(best or 0, len(non_n))
        return best

    def test_element_inside_minor_rejected(self, m2c5):
        with pytest.raises(pm.Undefined):
            pm.mu(m2c5, ["e0", "e1"], "e0", "delete")

    def test_ambiguous_sides_asserted(self):
        # a tiny retained set makes both sides qualify, which is asserted out
        m = pm.uniform(3, 5)
        with pytest.raises(AssertionError):
            pm.mu(m, ["a", "b"], "e", "delete")

    def test_side_argument_checked(self, m2c5):
        with pytest.raises(pm.PreconditionViolated):
            pm.mu(m2c5, ["e2"], "e0", "sideways")
