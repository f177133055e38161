"""Named tree / near-path families: builders, recognition, closed forms,
and explicit complement certificates."""

import numpy as np
import pytest

from qng.constructions import verify_certificate
from qng.families import (build_Tmn_complement_certificate, certify_tree_complement,
                          classify_tree, q_high_q, q_high_q_complement, q_tree,
                          q_tree_complement, realize, recognize_high_q,
                          rn_graph, skmn_graph, tmn_graph, wkl_graph)
from qng.graphs import (Graph, are_isomorphic, complement, disjoint_union,
                        enumerate_trees, graph6_encode, is_tree, path_graph,
                        star_graph)
from qng.spectra import spectrum
from qng.strong import strong_property_check


def test_builders_shapes():
    g = skmn_graph(3, 2, 4)
    assert g.n == 9 and g.edge_count() == 8 and is_tree(g)
    w = wkl_graph(2, 1, (2, 3))
    assert w.n == 9 and is_tree(w)
    t = tmn_graph(3, 2)
    assert t.n == 6 and t.edge_count() == 6
    assert rn_graph(5).n == 5
    with pytest.raises(ValueError):
        skmn_graph(0, 1, 1)
    with pytest.raises(ValueError):
        wkl_graph(2, 0, (1,))
    with pytest.raises(ValueError):
        tmn_graph(1, 0)


def test_path_is_a_double_star():
    # P_n = S^{n-2}_{1,1}
    assert are_isomorphic(skmn_graph(4, 1, 1), path_graph(6))


def test_classify_tree_round_trips():
    for n in range(2, 10):
        for t in enumerate_trees(n):
            tag = classify_tree(t)
            if tag.variant == "GenericTree":
                continue
            assert are_isomorphic(realize(tag), t), graph6_encode(t)


def test_classify_specific_variants():
    assert classify_tree(star_graph(6)).variant == "Star"
    assert classify_tree(skmn_graph(2, 3, 2)).variant == "DoubleStarPath"
    assert classify_tree(wkl_graph(3, 2, (2, 1, 1))).variant == "DepthTwo"
    assert classify_tree(path_graph(5)).variant == "DoubleStarPath"


def test_q_tree_closed_forms():
    assert q_tree(star_graph(5)) == 3
    assert q_tree(skmn_graph(3, 2, 2)) == 5
    assert q_tree(path_graph(6)) == 6  # S^4_{1,1}
    assert q_tree(wkl_graph(2, 1, (2, 2))) == 5


def test_q_tree_complement_closed_forms():
    assert q_tree_complement(path_graph(2)) == (1, "edgeless-complement")
    assert q_tree_complement(star_graph(7))[0] == 2
    assert q_tree_complement(path_graph(4))[0] == 4
    assert q_tree_complement(path_graph(5))[0] == 3   # S^3_{1,1}
    assert q_tree_complement(skmn_graph(2, 2, 1))[0] == 3
    assert q_tree_complement(skmn_graph(3, 4, 1))[0] == 3
    assert q_tree_complement(skmn_graph(2, 3, 2))[0] == 2
    assert q_tree_complement(skmn_graph(4, 2, 1))[0] == 2
    assert q_tree_complement(wkl_graph(2, 2, (1, 3)))[0] == 3
    assert q_tree_complement(wkl_graph(2, 1, (2, 2)))[0] == 2
    assert q_tree_complement(wkl_graph(3, 0, (1, 1, 1)))[0] == 2
    with pytest.raises(ValueError):
        q_tree_complement(tmn_graph(2, 2))


def test_tree_sums_match_conjecture_margin():
    # P_4 is the lone tree exceeding |T| + 2
    cases = [(path_graph(4), 8), (skmn_graph(2, 2, 2), 6),
             (star_graph(5), 5), (wkl_graph(2, 1, (2, 2)), 7)]
    for t, total in cases:
        q = q_tree(t)
        qc, _ = q_tree_complement(t)
        assert q is not None and q + qc == total
        if t.n != 4:
            assert q + qc <= t.n + 2


def test_certify_tree_complement_small_sweep():
    built = 0
    for n in range(3, 9):
        for t in enumerate_trees(n):
            value, _ = q_tree_complement(t)
            cert = certify_tree_complement(t)
            if value != 2:
                assert cert is None
                continue
            assert cert is not None and cert.verified
            assert cert.claimed_q == 2
            built += 1
    assert built >= 20


def test_certify_rejects_non_trees():
    with pytest.raises(ValueError):
        certify_tree_complement(tmn_graph(2, 2))
    with pytest.raises(ValueError):
        certify_tree_complement(path_graph(2))


def test_recognize_high_q():
    assert recognize_high_q(path_graph(6)).variant == "Path"
    assert recognize_high_q(complement(rn_graph(6))).variant == \
        "PathPlusIsolated"
    assert recognize_high_q(tmn_graph(4, 2)).variant == "TriangleTadpole"
    iso = disjoint_union(path_graph(5), Graph(1, (0,)))
    assert recognize_high_q(iso).variant == "PathPlusIsolated"
    tag = recognize_high_q(realize_interior_leaf())
    assert tag.variant == "PathWithInteriorLeaf"
    assert recognize_high_q(star_graph(5)).variant == "None"
    assert recognize_high_q(complement(path_graph(6))).variant == "None"


def realize_interior_leaf():
    from qng.graphs import add_edge
    g = path_graph(5)
    return add_edge(disjoint_union(g, Graph(1, (0,))), 2, 5)


def test_q_high_q_values():
    assert q_high_q(recognize_high_q(path_graph(7))) == 7
    assert q_high_q(recognize_high_q(tmn_graph(3, 2))) == 5
    iso = disjoint_union(path_graph(6), Graph(1, (0,)))
    assert q_high_q(recognize_high_q(iso)) == 6


def test_q_high_q_complement_values():
    # complement of P_{n-1} + K_1 is R_n
    for n, expect in [(2, 2), (3, 3), (4, 3), (5, 3), (6, 2), (7, 2), (8, 2)]:
        iso = disjoint_union(path_graph(n - 1), Graph(1, (0,)))
        assert q_high_q_complement(recognize_high_q(iso)) == expect
    cases = {(1, 1): 1, (2, 2): 4, (2, 1): 3, (3, 1): 3, (4, 1): 3,
             (3, 2): 3, (5, 1): 2, (4, 2): 2, (3, 3): 2, (6, 2): 2}
    for (m, n), expect in cases.items():
        tag = recognize_high_q(tmn_graph(m, n))
        assert tag.variant == "TriangleTadpole"
        assert q_high_q_complement(tag) == expect


def test_build_tmn_certificate_basic():
    cert = build_Tmn_complement_certificate(5, 3)
    assert cert.verified and cert.property_level == "SSP"
    assert spectrum(cert.matrix).q == 2
    assert strong_property_check(cert.matrix, "SSP").holds
    assert are_isomorphic(cert.graph, complement(tmn_graph(5, 3)))
    # every induction step logs its spectral-join deviation
    steps = cert.details["steps"]
    assert steps[0]["kind"] == "base"
    grows = [s for s in steps if s["kind"] == "grow"]
    assert grows and all(s["join_deviation"] <= 1e-8 for s in grows)


def test_build_tmn_rejects_small_orders():
    with pytest.raises(ValueError):
        build_Tmn_complement_certificate(3, 2)  # m + n < 6
    with pytest.raises(ValueError):
        build_Tmn_complement_certificate(2, 4)  # requires m >= n
