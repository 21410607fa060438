import random

import pytest

from treewalk.errors import GraphError
from treewalk.forests import alpha_forest, kappa_forest, tree_cut
from treewalk.graphs import (
    enumerate_free_trees,
    is_path_graph,
    is_star_graph,
    path_graph,
    random_weighted_tree,
    star_graph,
)
from treewalk.transfers import (
    apply_move,
    build_hasse,
    hasse_to_dot,
    legal_moves,
    transfer_components,
    verify_monotonicity,
)

P4 = path_graph([1, 1, 1])


class TestMoves:
    def test_p4_components_and_legality(self):
        b1, b2, b3 = transfer_components(P4, 1, 2, 3)
        assert (b1, b2, b3) == (frozenset({0, 1}), frozenset({2}), frozenset({3}))
        moves = legal_moves(P4, "size")
        assert {(m.v1, m.v2, m.v3) for m in moves} == {(1, 2, 3), (2, 1, 0)}

    def test_star_has_no_moves(self):
        for mode in ("size", "volume"):
            assert legal_moves(star_graph([1, 1, 1]), mode) == []

    def test_p3_has_no_moves(self):
        for mode in ("size", "volume"):
            assert legal_moves(path_graph([1, 1]), mode) == []

    def test_apply_p4_gives_star(self):
        move = [m for m in legal_moves(P4, "size") if (m.v1, m.v2, m.v3) == (1, 2, 3)][0]
        result = apply_move(P4, move)
        assert is_star_graph(result)
        assert result.has_edge(1, 3)
        assert not result.has_edge(2, 3)

    def test_transferred_weight_preserved(self):
        rng = random.Random(61)
        for _ in range(30):
            t = random_weighted_tree(rng, rng.randint(4, 10))
            for move in legal_moves(t, "size"):
                out = apply_move(t, move)
                assert out.weight(move.v1, move.v3) == t.weight(move.v2, move.v3)
                assert out.weight_multiset() == t.weight_multiset()
                assert out.is_tree()

    def test_illegal_move_rejected(self):
        legal = legal_moves(P4, "size")[0]
        # replay the same move object on the already-transformed tree
        moved = apply_move(P4, legal)
        with pytest.raises(GraphError):
            apply_move(moved, legal)

    def test_mode_validation(self):
        with pytest.raises(GraphError):
            legal_moves(P4, "sideways")


class TestMonotonicity:
    def test_p4_size_move_alpha(self):
        move = [m for m in legal_moves(P4, "size") if (m.v1, m.v2, m.v3) == (1, 2, 3)][0]
        before, after = verify_monotonicity(P4, move)
        assert before == pytest.approx(15 / 4, rel=1e-12)
        assert after == pytest.approx(27 / 8, rel=1e-12)

    def test_p4_volume_move_kappa(self):
        move = [m for m in legal_moves(P4, "volume") if (m.v1, m.v2, m.v3) == (1, 2, 3)][0]
        before, after = verify_monotonicity(P4, move)
        assert before == pytest.approx(19 / 6, rel=1e-12)
        assert after == pytest.approx(5 / 2, rel=1e-12)

    def test_alpha_strictly_decreases_on_random_trees(self):
        rng = random.Random(67)
        for _ in range(100):
            t = random_weighted_tree(rng, rng.randint(3, 10))
            for move in legal_moves(t, "size"):
                before, after = verify_monotonicity(t, move)
                assert before > after

    def test_kappa_strictly_decreases_on_random_trees(self):
        rng = random.Random(71)
        for _ in range(100):
            t = random_weighted_tree(rng, rng.randint(3, 10))
            for move in legal_moves(t, "volume"):
                before, after = verify_monotonicity(t, move)
                assert before > after

    def test_alpha_difference_identity(self):
        # (n/vol)(alpha(T)-alpha(T')) == (S(T\e1) - S(T'\e1)) / (n w(e1))
        rng = random.Random(73)
        for _ in range(60):
            t = random_weighted_tree(rng, rng.randint(3, 10))
            n, vol = t.n, t.vol
            for move in legal_moves(t, "size"):
                out = apply_move(t, move)
                lhs = (n / vol) * (alpha_forest(t) - alpha_forest(out))
                s_t = tree_cut(t, move.v1, move.v2).s_value
                s_out = tree_cut(out, move.v1, move.v2).s_value
                rhs = (s_t - s_out) / (n * t.weight(move.v1, move.v2))
                assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_kappa_difference_identity(self):
        # kappa(T)-kappa(T') == (V_T(T\e1) - V_T'(T'\e1)) / (vol w(e1))
        rng = random.Random(79)
        for _ in range(60):
            t = random_weighted_tree(rng, rng.randint(3, 10))
            vol = t.vol
            for move in legal_moves(t, "volume"):
                out = apply_move(t, move)
                lhs = kappa_forest(t) - kappa_forest(out)
                v_t = tree_cut(t, move.v1, move.v2).v_value
                v_out = tree_cut(out, move.v1, move.v2).v_value
                rhs = (v_t - v_out) / (vol * t.weight(move.v1, move.v2))
                assert lhs == pytest.approx(rhs, rel=1e-9)

    def test_volume_bookkeeping_identity(self):
        # vol_T(T2 u T3) = vol(T2 standalone) + w1 + 2 w2 + vol(T3 standalone)
        rng = random.Random(83)
        for _ in range(60):
            t = random_weighted_tree(rng, rng.randint(3, 10))
            for move in legal_moves(t, "volume"):
                b1, b2, b3 = transfer_components(t, move.v1, move.v2, move.v3)
                w1 = t.weight(move.v1, move.v2)
                w2 = t.weight(move.v2, move.v3)
                standalone2 = 2 * sum(w for a, b, w in t.edges if a in b2 and b in b2)
                standalone3 = 2 * sum(w for a, b, w in t.edges if a in b3 and b in b3)
                assert t.volume(b2 | b3) == pytest.approx(
                    standalone2 + w1 + 2 * w2 + standalone3, rel=1e-12
                )

    def test_modes_coincide_on_simple_trees(self):
        for n in range(2, 9):
            for t in enumerate_free_trees(n):
                size_set = {(m.v1, m.v2, m.v3) for m in legal_moves(t, "size")}
                vol_set = {(m.v1, m.v2, m.v3) for m in legal_moves(t, "volume")}
                assert size_set == vol_set


class TestHasse:
    def test_n4(self):
        h = build_hasse(enumerate_free_trees(4), "size")
        assert len(h.nodes) == 2
        assert len(h.covers) == 1
        (i, j) = h.covers[0]
        assert is_path_graph(h.representatives[i])
        assert is_star_graph(h.representatives[j])

    def test_n5_chain(self):
        h = build_hasse(enumerate_free_trees(5), "size")
        assert len(h.nodes) == 3
        assert len(h.covers) == 2  # path > spider > star
        assert len(h.maximal()) == 1
        assert len(h.minimal()) == 1

    def test_n7_figure(self):
        h = build_hasse(enumerate_free_trees(7), "size")
        assert len(h.nodes) == 11
        (top,) = h.maximal()
        (bottom,) = h.minimal()
        assert is_path_graph(h.representatives[top])
        assert is_star_graph(h.representatives[bottom])

    def test_n2_single_node(self):
        h = build_hasse(enumerate_free_trees(2), "size")
        assert len(h.nodes) == 1
        assert h.covers == ()

    def test_modes_give_same_diagram(self):
        for n in range(2, 9):
            trees = enumerate_free_trees(n)
            hs = build_hasse(trees, "size")
            hv = build_hasse(trees, "volume")
            assert hs.nodes == hv.nodes
            assert hs.covers == hv.covers

    def test_covers_are_reduced(self):
        h = build_hasse(enumerate_free_trees(7), "size")
        succ = {i: {j for a, j in h.covers if a == i} for i in range(len(h.nodes))}

        def reach(i, seen=None):
            seen = set() if seen is None else seen
            for j in succ[i]:
                if j not in seen:
                    seen.add(j)
                    reach(j, seen)
            return seen

        for i, j in h.covers:
            via = any(j in reach(k) for k in succ[i] if k != j)
            assert not via

    def test_mixed_multisets_rejected(self):
        with pytest.raises(GraphError):
            build_hasse([path_graph([1, 1]), path_graph([2, 1])], "size")

    def test_weighted_family_acyclic_order(self):
        from treewalk.extremal import tree_family

        trees = tree_family([3.0, 2.0, 1.0, 0.5])
        h = build_hasse(trees, "size")
        # alpha must strictly decrease along every cover
        for i, j in h.covers:
            assert alpha_forest(h.representatives[i]) > alpha_forest(h.representatives[j])

    def test_weighted_family_extremes(self):
        # maximal elements are exactly the weighted paths; the star is the
        # unique minimal element, in both modes
        from treewalk.extremal import tree_family

        trees = tree_family([3.0, 2.0, 1.0, 0.5])
        path_indices = {i for i, t in enumerate(trees) if is_path_graph(t)}
        for mode, stat in (("size", alpha_forest), ("volume", kappa_forest)):
            h = build_hasse(trees, mode)
            reordered = {i for i, t in enumerate(h.representatives) if is_path_graph(t)}
            assert set(h.maximal()) == reordered
            assert len(path_indices) == len(reordered)
            (bottom,) = h.minimal()
            assert is_star_graph(h.representatives[bottom])
            for i, j in h.covers:
                assert stat(h.representatives[i]) > stat(h.representatives[j])

    def test_dot_output_deterministic(self):
        trees = enumerate_free_trees(5)
        a = hasse_to_dot(build_hasse(trees, "size"))
        b = hasse_to_dot(build_hasse(list(reversed(trees)), "size"))
        assert a == b
        assert a.startswith("digraph hasse {")
        assert a.count("->") == 2
