"""Tests for structural validation, label recovery, and pointer repair."""

import random

import pytest

from graphmark.analysis import (
    RpgValidationReport,
    as_rpg,
    hamiltonian_path,
    repair_list_pointers,
    restore_labels,
    validate_rpg,
)
from graphmark.errors import TamperError
from graphmark.graphs import DirectedGraph
from graphmark.rpg import rpg_to_sip, sip_to_rpg
from graphmark.sip import sip_to_watermark, watermark_to_sip


def encode(w):
    return sip_to_rpg(watermark_to_sip(w))


def drop_edge(graph, victim):
    d = graph.to_directed() if not isinstance(graph, DirectedGraph) else graph
    edges = list(d.edges)
    edges.remove(victim)
    return DirectedGraph.build(tuple(edges), extra_nodes=d.nodes)


class TestValidateRpg:
    def test_clean_graphs_pass(self):
        for w in (1, 2, 3, 12, 77, 4096):
            report = validate_rpg(encode(w))
            assert isinstance(report, RpgValidationReport)
            assert report.ok
            assert report.violations == ()

    def test_missing_list_edge(self):
        report = validate_rpg(drop_edge(encode(12), (5, 4)))
        kinds = report.kinds()
        assert "missing-list-pointer" in kinds
        assert not report.ok

    def test_missing_forward_edge(self):
        # node 3 of the w=12 graph forwards to 4
        report = validate_rpg(drop_edge(encode(12), (3, 4)))
        assert "body-outdegree" in report.kinds()

    def test_added_edge(self):
        g = encode(12).to_directed()
        report = validate_rpg(DirectedGraph(g.nodes, g.edges + ((2, 9),)))
        assert "body-outdegree" in report.kinds()

    def test_duplicate_edge(self):
        g = encode(12).to_directed()
        report = validate_rpg(DirectedGraph(g.nodes, g.edges + ((3, 4),)))
        assert "duplicate-edge" in report.kinds()

    def test_header_damage(self):
        g = encode(2).to_directed()
        report = validate_rpg(DirectedGraph(g.nodes, g.edges + ((6, 2),)))
        assert "header-outdegree" in report.kinds()

    def test_footer_damage(self):
        g = encode(2).to_directed()
        report = validate_rpg(DirectedGraph(g.nodes, g.edges + ((0, 3),)))
        assert "footer-outdegree" in report.kinds()

    def test_forward_pointer_must_climb(self):
        # rewire node 3's forward edge downward to node 1
        g = encode(12).to_directed()
        edges = tuple(e for e in g.edges if e != (3, 4)) + ((3, 1),)
        report = validate_rpg(DirectedGraph(g.nodes, edges))
        assert "forward-pointer-not-higher" in report.kinds()

    def test_unreachable_after_spine_cut(self):
        report = validate_rpg(drop_edge(encode(12), (1, 0)))
        assert "unreachable-node" in report.kinds()

    def test_report_str_names_nodes(self):
        report = validate_rpg(drop_edge(encode(12), (5, 4)))
        assert "node 5" in str(report)


class TestAsRpg:
    def test_promotes_clean_directed_graphs(self):
        g = encode(12)
        assert as_rpg(g.to_directed()) == g

    def test_idempotent_on_rpgs(self):
        g = encode(3)
        assert as_rpg(g) is g

    def test_refuses_damaged_graphs(self):
        with pytest.raises(TamperError):
            as_rpg(drop_edge(encode(12), (5, 4)))


class TestHamiltonianPath:
    def test_spine_is_the_unique_path(self):
        assert tuple(hamiltonian_path(encode(1))) == (4, 3, 2, 1, 0)

    def test_descending_label_order_for_small_range(self):
        for w in range(1, 200):
            g = encode(w)
            expected = tuple(range(g.size + 1, -1, -1))
            assert tuple(hamiltonian_path(g)) == expected

    def test_invariant_under_neighbor_order(self):
        for w in (1, 5, 12, 255):
            g = encode(w)
            asc = tuple(hamiltonian_path(g, neighbor_order="ascending"))
            desc = tuple(hamiltonian_path(g, neighbor_order="descending"))
            assert asc == desc

    def test_accepts_directed_form(self):
        g = encode(12)
        assert tuple(hamiltonian_path(g.to_directed())) == tuple(hamiltonian_path(g))

    def test_rejects_unknown_order(self):
        with pytest.raises(ValueError):
            hamiltonian_path(encode(1), neighbor_order="random")

    def test_damaged_graph_has_no_unique_path(self):
        # deleting a spine edge leaves two outdegree-1 nodes or a dead end
        with pytest.raises(TamperError):
            hamiltonian_path(drop_edge(encode(12), (5, 4)))


def scramble(graph, seed):
    """Relabel every node (header and footer included) at random."""
    d = graph.to_directed()
    rng = random.Random(seed)
    new = list(d.nodes)
    rng.shuffle(new)
    mapping = dict(zip(d.nodes, new))
    edges = tuple((mapping[a], mapping[b]) for a, b in d.edges)
    return DirectedGraph.build(edges, extra_nodes=tuple(new)), mapping


class TestRestoreLabels:
    def test_round_trip_after_scramble(self):
        for w in (1, 2, 3, 12, 99, 1024):
            for seed in range(5):
                damaged, _ = scramble(encode(w), seed)
                restored = restore_labels(damaged)
                assert sip_to_watermark(rpg_to_sip(as_rpg(restored))) == w

    def test_restore_is_identity_on_clean_graphs(self):
        g = encode(12)
        assert restore_labels(g.to_directed()) == g

    def test_three_node_cycle_example(self):
        # a -> b, b -> c plus the forward b -> a pins a=2, b=1, c=0
        g = DirectedGraph.build(((10, 20), (20, 30), (20, 10)))
        restored = restore_labels(g)
        assert sorted(restored.edges()) == [(1, 0), (1, 2), (2, 1)]

    def test_rejects_graphs_with_wrong_degree_profile(self):
        g = encode(12).to_directed()
        with pytest.raises(TamperError):
            restore_labels(DirectedGraph(g.nodes, g.edges + ((2, 9),)))

    def test_rejects_broken_walks(self):
        # two sinks: the trailing spine edge is gone
        with pytest.raises(TamperError):
            restore_labels(drop_edge(encode(12), (1, 0)))


class TestRepairListPointers:
    def test_single_missing_list_edge_every_position(self):
        for w in (1, 2, 12, 201):
            g = encode(w)
            for victim in g.list_edges():
                result = repair_list_pointers(drop_edge(g, victim))
                assert result.changed
                assert result.rebuilt == (victim,)
                assert result.removed == ()
                assert as_rpg(result.graph) == g

    def test_flipped_list_edge_is_removed_and_rebuilt(self):
        g = encode(12).to_directed()
        edges = tuple(e for e in g.edges if e != (5, 4)) + ((4, 5),)
        result = repair_list_pointers(DirectedGraph(g.nodes, edges))
        assert (5, 4) in result.rebuilt
        assert (4, 5) in result.removed
        assert as_rpg(result.graph) == encode(12)

    def test_noop_on_clean_graphs(self):
        g = encode(12)
        result = repair_list_pointers(g.to_directed())
        assert not result.changed
        assert as_rpg(result.graph) == g

    def test_forward_edge_loss_is_not_repairable(self):
        with pytest.raises(TamperError):
            repair_list_pointers(drop_edge(encode(12), (3, 4)))

    def test_genuine_forward_successor_edge_is_kept(self):
        # node 1 of the w=1 graph forwards to 2 = 1 + 1, so after losing its
        # list edge it looks exactly like flip debris; the surviving reverse
        # list edge (2, 1) must protect it
        g = encode(1)
        assert g.forward[0] == 2
        result = repair_list_pointers(drop_edge(g, (1, 0)))
        assert result.rebuilt == ((1, 0),)
        assert result.removed == ()
        assert as_rpg(result.graph) == g

    def test_missing_node_kills_repair(self):
        g = encode(12).to_directed()
        edges = tuple((a, b) for a, b in g.edges if 5 not in (a, b))
        nodes = tuple(v for v in g.nodes if v != 5)
        with pytest.raises(TamperError):
            repair_list_pointers(DirectedGraph(nodes, edges))
