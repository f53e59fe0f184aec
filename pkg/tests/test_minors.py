"""Minor decisions, witnesses, and doubly labelled elements."""

import pytest

import polymat as pm

from conftest import cycle_graph, demoting_example, doubled_c5


def reachable_by_interleaved_moves(m, depth):
    """Oracle: every polymatroid obtainable by any interleaving of single
    deletions, single contractions, and compactifications, up to the given
    number of removals."""
    seen = set()
    out = set()
    stack = [(m, depth)]
    while stack:
        cur, fuel = stack.pop()
        key = cur.canonical_key()
        if (key, fuel) in seen:
            continue
        seen.add((key, fuel))
        out.add(cur)
        flat = pm.compactify(cur)
        if flat != cur:
            stack.append((flat, fuel))
        if fuel:
            for e in cur.elements:
                stack.append((pm.delete(cur, e), fuel - 1))
                stack.append((pm.contract(cur, e), fuel - 1))
    return out


class TestCMinor:
    def test_self_minor_when_compact(self, m2c3):
        w = pm.is_c_minor(m2c3, m2c3)
        assert w is not None
        assert w.contract_set == w.delete_set == frozenset()

    def test_point_deletion(self, u24):
        target = pm.delete(u24, "d")
        w = pm.is_c_minor(u24, target)
        assert w is not None and w.delete_set == {"d"}
        assert pm.replay_witness(u24, w) == target

    def test_compactified_deletion_demotes_line(self):
        # l a line, b a point on it, a a generic point: dropping a leaves l
        # 2-separating, so the compactified deletion carries l as a point
        m = pm.validate(["l", "a", "b"], [0, 2, 1, 3, 1, 2, 2, 3])
        target = pm.compactified_delete(m, "a")
        assert target.rank("l") == 1
        w = pm.is_c_minor(m, target)
        assert w is not None and pm.replay_witness(m, w) == target

    def test_requires_compact_target(self):
        tree = pm.cycle_matroid(pm.mgraph(3, [("e", 0, 1), ("f", 1, 2)]))
        with pytest.raises(pm.NotCompact):
            pm.is_c_minor(pm.uniform(2, 3), tree)

    def test_iso_mode_finds_relabelled_minor(self, m2c4, u23):
        # compactified single-edge deletion of the 4-cycle incidences gives
        # a path whose compactification has demoted ends
        target = pm.relabel(
            pm.compactified_delete(m2c4, "e0"), {"e1": "x", "e2": "y", "e3": "z"}
        )
        assert pm.is_c_minor(m2c4, target, "labelled") is None
        assert pm.is_c_minor(m2c4, target, "up_to_iso") is not None

    def test_canonical_search_matches_interleaved_oracle(self, small_all):
        hosts = [m for m in small_all[4] if m.n == 4][:12]
        targets = [t for t in small_all[2] if pm.is_compact(t)]
        targets += [t for t in small_all[3] if pm.is_compact(t)][:8]
        for host in hosts:
            reach = reachable_by_interleaved_moves(host, 2)
            compact_reach = {r for r in reach if pm.is_compact(r)}
            for t in targets:
                if t.n > host.n:
                    continue
                got = pm.is_c_minor(host, t, "up_to_iso") is not None
                want = any(pm.is_isomorphic(r, t) for r in compact_reach)
                assert got == want, (host.rank_table, t.rank_table)

    def test_transitivity(self, small_3conn):
        for host in small_3conn[4][:10]:
            for mid in pm.enumerate_small(3, "compact"):
                w1 = pm.is_c_minor(host, mid, "up_to_iso")
                if w1 is None:
                    continue
                mid_lab = pm.replay_witness(host, w1)
                for leaf in pm.enumerate_small(2, "compact"):
                    w2 = pm.is_c_minor(mid_lab, leaf, "up_to_iso")
                    if w2 is None:
                        continue
                    assert pm.is_c_minor(host, leaf, "up_to_iso") is not None

    def test_duality_transport(self, small_3conn):
        for host in small_3conn[4][:12]:
            star = pm.dual(host)
            for t in pm.enumerate_small(3, "compact"):
                has = pm.is_c_minor(host, t, "up_to_iso") is not None
                has_dual = pm.is_c_minor(star, pm.dual(t), "up_to_iso") is not None
                assert has == has_dual


class TestSpecialMinor:
    def test_exact_match_has_no_relabel(self, u24):
        target = pm.delete(u24, "d")
        w = pm.special_n_minor(u24, target)
        assert w is not None and w.relabel is None

    def test_parallel_point_swap(self):
        # q is parallel to p; deleting p still yields the minor that uses p,
        # through the relabel q -> p
        m = pm.validate(
            ["p", "q", "b", "c"],
            [0, 1, 1, 1, 1, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 2],
        )
        n = pm.delete(m, "q")  # three points spanning a plane, using p
        host = pm.delete(m, "p")
        assert pm.is_c_minor(host, n, "labelled") is None
        w = pm.special_n_minor(host, n)
        assert w is not None and w.relabel == ("q", "p")
        assert pm.replay_witness(host, w) == n

    def test_two_label_difference_not_special(self):
        m = pm.uniform(2, 4)
        n = pm.relabel(pm.delete(m, "d"), {"a": "x", "b": "y"})
        assert pm.special_n_minor(m, n) is None


class TestSMinor:
    def test_every_c_minor_is_an_s_minor(self, small_3conn):
        for host in small_3conn[4][:10]:
            for t in pm.enumerate_small(3, "compact"):
                w = pm.is_c_minor(host, t, "up_to_iso")
                if w is None:
                    continue
                ws = pm.is_s_minor(host, t, "up_to_iso")
                assert ws is not None

    def test_series_compression_reaches_parallel_lines(self, m2c3):
        target = pm.compress(m2c3, "e0")  # two parallel lines
        assert target.rank_table == (0, 2, 2, 2)
        w = pm.is_s_minor(m2c3, target)
        assert w is not None and len(w.compression_chain) == 1
        assert pm.replay_witness(m2c3, w) == target

    def test_not_a_c_minor_but_an_s_minor(self, m2c5, m2c4):
        got = pm.is_s_minor(m2c5, m2c4, "up_to_iso")
        assert got is not None and got.compression_chain
        try:
            assert pm.is_c_minor(m2c5, m2c4, "up_to_iso") is None
        except pm.NotCompact:
            pytest.fail("hosts here are compact")

    def test_requires_compact_inputs(self, m2c3):
        tree = pm.cycle_matroid(pm.mgraph(3, [("e", 0, 1), ("f", 1, 2)]))
        with pytest.raises(pm.NotCompact):
            pm.is_s_minor(tree, m2c3)
        with pytest.raises(pm.NotCompact):
            pm.is_s_minor(m2c3, tree)

    def test_duality_transport(self, small_3conn):
        hosts = small_3conn[4][:8]
        targets = list(pm.enumerate_small(3, "compact"))[:10]
        for host in hosts:
            if not pm.is_compact(host):
                continue
            star = pm.dual(host)
            for t in targets:
                has = pm.is_s_minor(host, t, "up_to_iso") is not None
                has_dual = pm.is_s_minor(star, pm.dual(t), "up_to_iso") is not None
                assert has == has_dual

    def test_witness_replays(self, m2c5):
        for t in pm.enumerate_small(4, "three_connected"):
            w = pm.is_s_minor(m2c5, t, "up_to_iso")
            if w is None:
                continue
            out = pm.replay_witness(m2c5, w)
            assert pm.is_isomorphic(out, t) is not None


class TestDoublyLabelled:
    def test_no_element_when_minor_is_everything(self, m2c3):
        assert pm.doubly_labelled(m2c3, m2c3) == []

    def test_removable_line_on_far_side(self):
        m = pm.boolean_from_graph(doubled_c5())
        n_lab = pm.compactify(pm.contract(m, ["e4", "e5"]))
        got = pm.doubly_labelled(m, n_lab)
        assert got == ["e4", "e5"]
        for ell in got:
            assert pm.element_kind(m, ell) is pm.ElementKind.LINE

    def test_precondition_checked(self, m2c3, u24):
        with pytest.raises(pm.PreconditionViolated):
            pm.doubly_labelled(m2c3, u24)
