"""Binding circle construction, repair, and the four-condition verifier."""

import pytest

from threepage import (
    CellComplex,
    DiagramError,
    ExtendedSpanningTree,
    InternalError,
    boundary_sequence,
    chords_cross,
    exact_max_faces,
    greedy_max_faces,
    parse_pd,
    repair,
    spanning_tree,
    verify_binding,
)

from conftest import HOPF, KINK, TREFOIL, TREFOIL_SWITCHED

# Switched Hopf: both crossings become over-passes for one strand, so the
# unrepaired walk has two same-type passage pairs that repair must merge.
HOPF_SWITCHED = "PD[X(1,4,2,3), X(2,4,1,3)]"


def build(text, mode="exact"):
    d = parse_pd(text)
    cx = CellComplex(d)
    if mode == "exact":
        est = exact_max_faces(cx).est
    elif mode == "greedy":
        est = greedy_max_faces(cx)
    else:
        est = ExtendedSpanningTree(edges=spanning_tree(cx), faces=frozenset())
    return d, cx, est, boundary_sequence(est, cx)


class TestChordsCross:
    def test_transversal(self):
        assert chords_cross(0, 2, 1, 3)
        assert chords_cross(1, 3, 0, 2)

    def test_shared_endpoint_never_crosses(self):
        assert not chords_cross(0, 2, 2, 3)
        assert not chords_cross(0, 2, 0, 3)

    def test_nested_and_disjoint(self):
        assert not chords_cross(0, 3, 1, 2)
        assert not chords_cross(0, 1, 2, 3)


class TestFrozenWalks:
    def test_hopf_m1_points(self):
        d, cx, est, seq = build(HOPF)
        assert sorted(est.edges) == [0, 2]
        assert sorted(est.faces) == [0]
        assert [(p.id, p.edge, p.kind) for p in seq.points] == [
            (0, 2, "edge-cut"),
            (1, 1, "near-vertex"),
            (2, 3, "near-vertex"),
            (3, 0, "edge-cut"),
            (4, 3, "near-vertex"),
            (5, 1, "near-vertex"),
        ]
        assert seq.n == 2 and seq.m == 1
        assert not seq.repaired

    def test_hopf_m1_arcs(self):
        _, _, _, seq = build(HOPF)
        got = [(a.id, a.type, a.ends[0].point, a.ends[1].point,
                a.crossings, a.edge) for a in seq.arcs]
        assert got == [
            (0, "inside-under", 3, 5, (0,), None),
            (1, "inside-over", 4, 0, (0,), None),
            (2, "inside-under", 0, 2, (1,), None),
            (3, "inside-over", 1, 3, (1,), None),
            (4, "outside", 5, 1, (), 1),
            (5, "outside", 4, 2, (), 3),
        ]

    def test_trefoil_m0_points(self):
        d = parse_pd(TREFOIL)
        cx = CellComplex(d)
        tree = spanning_tree(cx)
        assert sorted(tree) == [0, 1]
        est = ExtendedSpanningTree(edges=tree, faces=frozenset())
        seq = boundary_sequence(est, cx)
        assert [(p.edge, p.kind) for p in seq.points] == [
            (0, "edge-cut"),
            (2, "near-vertex"),
            (5, "near-vertex"),
            (3, "near-vertex"),
            (3, "near-vertex"),
            (1, "edge-cut"),
            (5, "near-vertex"),
            (2, "near-vertex"),
            (4, "near-vertex"),
            (4, "near-vertex"),
        ]

    def test_trefoil_m0_arcs(self):
        d = parse_pd(TREFOIL)
        cx = CellComplex(d)
        est = ExtendedSpanningTree(edges=spanning_tree(cx),
                                   faces=frozenset())
        seq = boundary_sequence(est, cx)
        got = [(a.type, a.ends[0].point, a.ends[1].point, a.crossings)
               for a in seq.arcs]
        assert got == [
            ("inside-under", 0, 5, (0,)),
            ("inside-over", 4, 9, (0,)),
            ("inside-under", 1, 3, (1,)),
            ("inside-over", 2, 0, (1,)),
            ("inside-under", 8, 6, (2,)),
            ("inside-over", 5, 7, (2,)),
            ("outside", 1, 7, ()),
            ("outside", 4, 3, ()),
            ("outside", 9, 8, ()),
            ("outside", 2, 6, ()),
        ]
        outside_edges = [a.edge for a in seq.arcs if a.type == "outside"]
        assert outside_edges == [2, 3, 4, 5]


class TestPointCounts:
    @pytest.mark.parametrize("strategy,seed", [
        ("bfs", 0), ("dfs", 0), ("random", 0), ("random", 3),
    ])
    def test_tree_only_count(self, corpus_complexes, strategy, seed):
        for name, cx in corpus_complexes.items():
            tree = spanning_tree(cx, strategy=strategy, seed=seed)
            est = ExtendedSpanningTree(edges=tree, faces=frozenset())
            seq = boundary_sequence(est, cx)
            n = cx.diagram.n
            assert len(seq.points) == 3 * n + 1, name

    @pytest.mark.parametrize("mode", ["greedy", "exact"])
    def test_extended_count(self, corpus_complexes, mode):
        for name, cx in corpus_complexes.items():
            if mode == "exact":
                est = exact_max_faces(cx).est
            else:
                est = greedy_max_faces(cx)
            seq = boundary_sequence(est, cx)
            n = cx.diagram.n
            m = len(est.faces)
            assert len(seq.points) == 3 * n + 1 - m, name
            assert seq.m == m


class TestVerifier:
    def test_corpus_unrepaired_structure(self, corpus, corpus_complexes):
        # Conditions 1-3 hold for every raw walk; condition 4 only for
        # alternating diagrams.
        for name, cx in corpus_complexes.items():
            d = corpus[name]
            seq = boundary_sequence(exact_max_faces(cx).est, cx)
            rep = verify_binding(seq, d)
            assert rep.c1_structure and rep.c2_coverage and rep.c3_types, name
            assert rep.ok == d.is_alternating(), name

    def test_corpus_repaired_ok(self, corpus, corpus_complexes):
        for name, cx in corpus_complexes.items():
            d = corpus[name]
            seq = repair(boundary_sequence(exact_max_faces(cx).est, cx), d)
            rep = verify_binding(seq, d)
            assert rep.ok, (name, rep.offenders)
            assert rep.offenders == ()

    def test_consecutive_variant_is_informational(self):
        d, _, _, seq = build(HOPF)
        rep = verify_binding(seq, d)
        assert rep.ok
        assert rep.consecutive_variant_ok is False

    def test_alternation_offenders_named(self):
        d, cx, est, seq = build(HOPF_SWITCHED)
        rep = verify_binding(seq, d)
        assert not rep.ok
        assert any("alternation" in off for off in rep.offenders)


class TestRepair:
    def test_alternating_repair_keeps_walk(self, corpus, corpus_complexes):
        for name, cx in corpus_complexes.items():
            d = corpus[name]
            if not d.is_alternating():
                continue
            seq = boundary_sequence(exact_max_faces(cx).est, cx)
            fixed = repair(seq, d)
            assert fixed.points == seq.points, name
            assert fixed.arcs == seq.arcs, name
            assert fixed.repaired and not seq.repaired

    def test_idempotent(self, corpus, corpus_complexes):
        for name, cx in corpus_complexes.items():
            d = corpus[name]
            once = repair(boundary_sequence(exact_max_faces(cx).est, cx), d)
            assert repair(once, d) == once, name

    def test_trefoil_switched_counts(self):
        d, cx, est, seq = build(TREFOIL_SWITCHED)
        assert len(seq.points) == 8
        fixed = repair(seq, d)
        assert len(fixed.points) == 4
        assert verify_binding(fixed, d).ok

    def test_switched_hopf_frozen(self):
        d, cx, est, seq = build(HOPF_SWITCHED)
        assert len(seq.points) == 6
        fixed = repair(seq, d)
        # Surviving points keep their original ids.
        assert [p.id for p in fixed.points] == [1, 2, 4, 5]
        assert [(p.edge, p.kind) for p in fixed.points] == [
            (1, "near-vertex"), (3, "near-vertex"),
            (3, "near-vertex"), (1, "near-vertex"),
        ]
        got = [(a.id, a.type, a.ends[0].point, a.ends[1].point, a.crossings)
               for a in fixed.arcs]
        assert got == [
            (0, "inside-under", 5, 1, (0, 1)),
            (1, "inside-over", 4, 2, (0, 1)),
            (4, "outside", 5, 1, ()),
            (5, "outside", 4, 2, ()),
        ]
        assert verify_binding(fixed, d).ok


class TestDegenerate:
    def test_kink_exact_two_points(self):
        d = parse_pd(KINK)
        cx = CellComplex(d)
        res = exact_max_faces(cx)
        assert len(res.est.faces) == 2
        seq = boundary_sequence(res.est, cx)
        assert [(p.edge, p.kind) for p in seq.points] == [
            (0, "edge-cut"), (1, "edge-cut"),
        ]
        assert verify_binding(seq, d).ok

    def test_kink_empty_tree_four_points(self):
        d = parse_pd(KINK)
        cx = CellComplex(d)
        est = ExtendedSpanningTree(edges=frozenset(), faces=frozenset())
        seq = boundary_sequence(est, cx)
        assert [(p.edge, p.kind) for p in seq.points] == [
            (0, "near-vertex"), (0, "near-vertex"),
            (1, "near-vertex"), (1, "near-vertex"),
        ]
        assert verify_binding(seq, d).ok


class TestPreconditions:
    def test_unknown_edge_rejected(self):
        d = parse_pd(HOPF)
        cx = CellComplex(d)
        est = ExtendedSpanningTree(edges=frozenset({99}), faces=frozenset())
        with pytest.raises(DiagramError):
            boundary_sequence(est, cx)

    def test_face_outside_tree_rejected(self):
        d = parse_pd(HOPF)
        cx = CellComplex(d)
        est = ExtendedSpanningTree(edges=frozenset({0}),
                                   faces=frozenset({0}))
        with pytest.raises(DiagramError):
            boundary_sequence(est, cx)

    def test_non_contractible_rejected(self):
        d = parse_pd(TREFOIL)
        cx = CellComplex(d)
        # Edges 0 and 3 share both endpoints: a cycle, not a tree.
        est = ExtendedSpanningTree(edges=frozenset({0, 3}),
                                   faces=frozenset())
        with pytest.raises(DiagramError):
            boundary_sequence(est, cx)
