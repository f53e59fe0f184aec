"""Builders and the exhaustive enumerator."""

import itertools

import pytest

import polymat as pm

from conftest import cycle_graph, path_graph


class TestBooleanFromGraph:
    def test_triangle_ranks_by_vertex_count(self, m2c3):
        g = cycle_graph(3)
        for size in (1, 2, 3):
            for combo in itertools.combinations(g.labels, size):
                touched = set()
                for lbl in combo:
                    touched.update(g.endpoints(lbl))
                assert pm.rank(m2c3, combo) == len(touched)

    def test_single_edge_is_a_line(self):
        m = pm.boolean_from_graph(pm.mgraph(2, [("e", 0, 1)]))
        assert m.rank_table == (0, 2)

    def test_two_connected_loopless_gives_three_connected(self):
        graphs = [
            cycle_graph(3),
            cycle_graph(4),
            cycle_graph(5),
            pm.mgraph(4, [("a", 0, 1), ("b", 1, 2), ("c", 2, 3), ("d", 3, 0), ("x", 0, 2)]),
            pm.Multigraph(2, (("a", (0, 1)), ("b", (0, 1)))),
        ]
        for g in graphs:
            assert pm.is_3_connected(pm.boolean_from_graph(g))

    def test_deletion_matches_graph_deletion(self):
        graphs = [cycle_graph(4), path_graph(4)]
        g5 = pm.mgraph(3, [("a", 0, 1), ("b", 1, 2), ("c", 0, 2), ("d", 0, 1)], loops=[("z", 1)])
        graphs.append(g5)
        for g in graphs:
            m = pm.boolean_from_graph(g)
            for lbl in g.labels:
                assert pm.delete(m, lbl) == pm.boolean_from_graph(g.delete_edge(lbl))

    def test_duplicate_label_rejected(self):
        with pytest.raises(pm.DuplicateLabel):
            pm.Multigraph(2, (("e", (0, 1)), ("e", (1, 0))))

    def test_endpoint_range_guard(self):
        with pytest.raises(pm.SizeOutOfRange):
            pm.mgraph(2, [("e", 0, 5)])


class TestCycleMatroid:
    def test_triangle_is_uniform(self):
        m = pm.cycle_matroid(cycle_graph(3))
        assert pm.is_isomorphic(m, pm.uniform(2, 3)) is not None

    def test_loops_have_rank_zero(self):
        m = pm.cycle_matroid(pm.mgraph(2, [("e", 0, 1)], loops=[("l", 0)], free_loops=["f"]))
        assert m.rank("l") == 0 and m.rank("f") == 0 and m.rank("e") == 1


class TestUniform:
    def test_examples(self):
        assert pm.uniform(2, 3).rank_table == (0, 1, 1, 2, 1, 2, 2, 2)
        assert pm.uniform(1, 1).rank_table == (0, 1)
        m = pm.uniform(3, 4)
        assert m.total_rank() == 3 and all(m.singleton_rank(e) == 1 for e in m.elements)

    def test_out_of_range(self):
        with pytest.raises(pm.SizeOutOfRange):
            pm.uniform(3, 2)
        with pytest.raises(pm.SizeOutOfRange):
            pm.uniform(-1, 2)


class TestWheelsAndWhirls:
    def test_wheel3_is_complete_graph_cycle_matroid(self):
        k4 = pm.mgraph(
            4,
            [("a", 0, 1), ("b", 0, 2), ("c", 0, 3), ("d", 1, 2), ("e", 1, 3), ("f", 2, 3)],
        )
        assert pm.is_isomorphic(pm.wheel(3), pm.cycle_matroid(k4)) is not None

    def test_whirl2_is_four_point_line(self):
        assert pm.is_isomorphic(pm.whirl(2), pm.uniform(2, 4)) is not None

    def test_every_element_in_triangle_and_triad(self):
        for m in (pm.wheel(3), pm.whirl(3)):
            tri_elements = set().union(*pm.triangles(m)) if pm.triangles(m) else set()
            tria_elements = set().union(*pm.triads(m)) if pm.triads(m) else set()
            assert tri_elements == set(m.elements)
            assert tria_elements == set(m.elements)

    def test_sizes_and_ranks(self):
        for n in (3, 4):
            w = pm.wheel(n)
            assert w.n == 2 * n and w.total_rank() == n
        for n in (2, 3, 4):
            w = pm.whirl(n)
            assert w.n == 2 * n and w.total_rank() == n

    def test_size_guards(self):
        with pytest.raises(pm.SizeOutOfRange):
            pm.wheel(2)
        with pytest.raises(pm.SizeOutOfRange):
            pm.whirl(1)


class TestFromFlats:
    def test_singleton_flats_copy_the_matroid(self):
        base = pm.uniform(2, 3)
        fa = pm.FlatAssignment(base, {"x": {"a"}, "y": {"b"}, "z": {"c"}})
        out = pm.from_flats(fa)
        assert pm.is_isomorphic(out, base) is not None

    def test_two_plane_flats_of_rank_three_matroid(self):
        base = pm.uniform(3, 6)
        labels = base.elements
        fa = pm.FlatAssignment(
            base, {"x": set(labels[:2]), "y": set(labels[2:4])}
        )
        out = pm.from_flats(fa)
        assert out.rank("x") == 2 and out.rank("y") == 2
        assert out.rank(["x", "y"]) == 3

    def test_empty_flat_gives_loop(self):
        base = pm.uniform(2, 3)
        fa = pm.FlatAssignment(base, {"x": set(), "y": {"a"}})
        out = pm.from_flats(fa)
        assert out.rank("x") == 0

    def test_not_a_flat_rejected(self):
        base = pm.uniform(2, 3)
        with pytest.raises(pm.NotAFlat):
            pm.from_flats(pm.FlatAssignment(base, {"x": {"a", "b"}}))  # spans everything

    def test_output_satisfies_axioms(self):
        base = pm.uniform(2, 4)
        fa = pm.FlatAssignment(base, {"x": {"a"}, "y": {"a", "b", "c", "d"}, "z": set()})
        out = pm.from_flats(fa)
        pm.validate(out.elements, out.rank_table)


class TestEnumeration:
    def test_single_element_classes(self):
        got = list(pm.enumerate_small(1))
        assert len(got) == 3
        assert sorted(m.total_rank() for m in got) == [0, 1, 2]

    def test_parallel_pair_is_three_connected(self):
        classes = list(pm.enumerate_small(2, "three_connected"))
        tables = {m.rank_table for m in classes}
        assert (0, 1, 1, 1) in tables  # two parallel points qualify
        assert len(classes) == 3

    def test_marked_three_element_classes(self):
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

    def test_outputs_valid_and_pairwise_distinct(self):
        got = list(pm.enumerate_small(3))
        for m in got:
            pm.validate(m.elements, m.rank_table)
        for i, a in enumerate(got):
            for b in got[i + 1 :]:
                assert pm.is_isomorphic(a, b) is None

    def test_determinism(self):
        first = [m.rank_table for m in pm.enumerate_small(4, "compact")]
        second = [m.rank_table for m in pm.enumerate_small(4, "compact")]
        assert first == second and first

    def test_filters_nest(self):
        all4 = list(pm.enumerate_small(4))
        two = list(pm.enumerate_small(4, "two_connected"))
        three = list(pm.enumerate_small(4, "three_connected"))
        assert len(three) <= len(two) <= len(all4)
        three_tables = {m.rank_table for m in three}
        assert three_tables <= {m.rank_table for m in two}

    def test_size_guard(self):
        with pytest.raises(pm.SizeOutOfRange):
            list(pm.enumerate_small(6))

    def test_parallel_matches_serial(self):
        from polymat.construct import enumerate_small_parallel

        serial = [m.rank_table for m in pm.enumerate_small(3)]
        parallel = [m.rank_table for m in enumerate_small_parallel(3, jobs=2)]
        assert serial == parallel
