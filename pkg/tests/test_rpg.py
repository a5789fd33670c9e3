"""Tests for the permutation <-> flow-graph layer."""

import random
from itertools import permutations

import pytest

from graphmark.errors import TamperError
from graphmark.graphs import DirectedGraph, ReduciblePermutationGraph
from graphmark.rpg import (
    didomination_dag,
    max_didominators,
    rpg_to_sip,
    sip_to_rpg,
)
from graphmark.sip import watermark_to_sip


def brute_force_pointers(p):
    """Nearest greater element to the left, by direct scan."""
    n = len(p)
    out = {}
    for idx, v in enumerate(p):
        out[v] = n + 1
        for u in reversed(p[:idx]):
            if u > v:
                out[v] = u
                break
    return out


class TestMaxDidominators:
    def test_worked_example(self):
        assert max_didominators([5, 6, 9, 8, 1, 2, 7, 4, 3]) == {
            5: 10, 6: 10, 9: 10, 8: 9, 1: 8, 2: 8, 7: 8, 4: 7, 3: 4}

    def test_trivial_cases(self):
        assert max_didominators([1]) == {1: 2}
        assert max_didominators([2, 1, 3]) == {2: 4, 1: 2, 3: 4}

    def test_descending_input_chains(self):
        assert max_didominators([3, 2, 1]) == {3: 4, 2: 3, 1: 2}

    def test_ascending_input_all_point_to_header(self):
        assert max_didominators([1, 2, 3, 4]) == {1: 5, 2: 5, 3: 5, 4: 5}

    def test_matches_direct_scan(self):
        rng = random.Random(3)
        for _ in range(100):
            p = list(range(1, rng.randint(1, 60) + 1))
            rng.shuffle(p)
            assert max_didominators(p) == brute_force_pointers(p)

    def test_rejects_non_permutations(self):
        with pytest.raises(TamperError):
            max_didominators([1, 1])


class TestDidominationDag:
    def test_source_and_sink_labels(self):
        dag = didomination_dag([2, 1, 3])
        assert dag.source == 4
        assert dag.sink == 0

    def test_simple_swap_graph(self):
        dag = didomination_dag([2, 1, 3])
        assert sorted(dag.edges) == [(1, 0), (2, 1), (3, 0), (4, 2), (4, 3)]

    def test_identity_everything_hangs_off_source(self):
        dag = didomination_dag([1, 2, 3])
        assert dag.successors(dag.source) == {1, 2, 3}
        assert dag.predecessors(dag.sink) == {1, 2, 3}

    def test_known_didominated_sets(self):
        # element 7 directly didominates exactly 1 and 6 here; 5 and 4 are
        # shielded by the intermediate 6
        dag = didomination_dag([8, 3, 2, 7, 1, 9, 6, 5, 4])
        assert dag.successors(7) == {1, 6}
        assert dag.predecessors(7) == {8}

    def test_stack_pointer_equals_max_dag_predecessor(self):
        """The stack pass and the set-definition DAG must agree everywhere."""
        for n in range(1, 7):
            for p in permutations(range(1, n + 1)):
                stack = max_didominators(list(p))
                dag = didomination_dag(list(p))
                for v in p:
                    preds = dag.predecessors(v) - {dag.source}
                    expected = max(preds) if preds else n + 1
                    assert stack[v] == expected, (p, v)

    def test_agreement_on_random_sips(self):
        rng = random.Random(11)
        for _ in range(25):
            p = watermark_to_sip(rng.randint(1, 2**40))
            stack = max_didominators(p)
            dag = didomination_dag(p)
            preds = {}
            for a, b in dag.edges:
                preds.setdefault(b, []).append(a)
            for v in p:
                cand = [a for a in preds[v] if a != dag.source]
                assert stack[v] == (max(cand) if cand else len(p) + 1)


class TestGraphEncoding:
    def test_forward_pointers_of_small_graphs(self):
        assert sip_to_rpg([2, 1, 3]).forward == (2, 4, 4)
        assert sip_to_rpg([1]).forward == (2,)
        assert sip_to_rpg([5, 6, 9, 8, 1, 2, 7, 4, 3]).forward == (
            8, 8, 4, 7, 10, 10, 8, 9, 10)

    def test_graph_shape_invariants(self):
        for w in (1, 2, 3, 12, 500):
            g = sip_to_rpg(watermark_to_sip(w))
            assert g.header == g.size + 1
            assert g.footer == 0
            assert g.edge_count == 2 * g.size + 1
            assert len(list(g.list_edges())) == g.size + 1
            assert len(list(g.forward_edges())) == g.size
            # forward pointers always jump to a strictly higher label
            for i, m in enumerate(g.forward, 1):
                assert i < m <= g.size + 1

    def test_encodes_any_permutation_not_only_sips(self):
        g = sip_to_rpg([3, 1, 4, 2])
        assert g.forward == (3, 4, 5, 5)

    def test_to_directed_matches_edge_iterators(self):
        g = sip_to_rpg(watermark_to_sip(12))
        d = g.to_directed()
        assert sorted(d.edges) == sorted(g.edges())
        assert d.nodes == tuple(range(11))

    def test_construction_rejects_bad_pointers(self):
        with pytest.raises(ValueError):
            ReduciblePermutationGraph(2, (1, 3))  # pointer not above label
        with pytest.raises(ValueError):
            ReduciblePermutationGraph(2, (3, 4, 3))  # wrong arity
        with pytest.raises(ValueError):
            ReduciblePermutationGraph(2, (3, 9))  # pointer above header


class TestGraphDecoding:
    def test_round_trip_small_watermarks(self):
        for w in range(1, 1500):
            p = watermark_to_sip(w)
            assert rpg_to_sip(sip_to_rpg(p)) == p

    def test_round_trip_arbitrary_permutations(self):
        rng = random.Random(5)
        for _ in range(200):
            p = list(range(1, rng.randint(1, 80) + 1))
            rng.shuffle(p)
            assert rpg_to_sip(sip_to_rpg(p)) == p

    def test_decodes_plain_directed_graphs(self):
        g = sip_to_rpg(watermark_to_sip(12))
        assert rpg_to_sip(g.to_directed()) == watermark_to_sip(12)

    def test_directed_decode_survives_missing_list_edges(self):
        # the discovery order only needs the forward tree
        g = sip_to_rpg(watermark_to_sip(12))
        edges = [e for e in g.to_directed().edges if e != (5, 4)]
        lenient = DirectedGraph.build(tuple(edges), extra_nodes=(0,))
        assert rpg_to_sip(lenient) == watermark_to_sip(12)

    def test_directed_decode_rejects_forward_damage(self):
        g = sip_to_rpg(watermark_to_sip(12)).to_directed()
        extra = DirectedGraph(g.nodes, g.edges + ((3, 7),))
        with pytest.raises(TamperError):
            rpg_to_sip(extra)

    def test_directed_decode_rejects_orphaned_nodes(self):
        with pytest.raises(TamperError):
            rpg_to_sip(DirectedGraph((0, 1, 2, 3, 4), ((4, 3), (3, 4))))

    def test_rejects_other_types(self):
        with pytest.raises(ValueError):
            rpg_to_sip([1, 2, 3])
