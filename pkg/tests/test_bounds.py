"""Combinatorial bound machinery: d(G), circumference, coloring, covers."""

import itertools
import random

import networkx as nx
import pytest

from qng.bounds import (biclique_union_spanning_test, bound_report,
                        chromatic_number, circumference, theta_star_2,
                        unique_shortest_path_length)
from qng.graphs import (complement, complete_graph, cycle_graph,
                        disjoint_union, empty_graph, graph_from_edges,
                        path_graph, star_graph)
from qng.families import skmn_graph, tmn_graph


def random_graph(n, p, rng):
    return graph_from_edges(n, [(i, j) for i in range(n)
                                for j in range(i + 1, n)
                                if rng.random() < p])


@pytest.mark.parametrize("n", range(2, 9))
def test_unique_path_on_paths(n):
    assert unique_shortest_path_length(path_graph(n)) == n - 1


def test_unique_path_special_cases():
    assert unique_shortest_path_length(cycle_graph(4)) == 1
    assert unique_shortest_path_length(cycle_graph(5)) == 2
    assert unique_shortest_path_length(complete_graph(4)) == 1
    assert unique_shortest_path_length(empty_graph(3)) == 0
    # (S^3_{m,1})^c keeps a unique 2-edge shortest path
    g = complement(skmn_graph(3, 3, 1))
    assert unique_shortest_path_length(g) == 2


def test_circumference_basics():
    assert circumference(path_graph(5)) == 0
    assert circumference(cycle_graph(6)) == 6
    assert circumference(complete_graph(5)) == 5
    assert circumference(tmn_graph(3, 2)) == 3
    assert circumference(disjoint_union(cycle_graph(3), cycle_graph(5))) == 5


def test_circumference_matches_networkx_cycles():
    rng = random.Random(2)
    for _ in range(60):
        n = rng.randint(3, 8)
        g = random_graph(n, rng.random(), rng)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges())
        best = 0
        for cyc in nx.simple_cycles(h):
            if len(cyc) >= 3:
                best = max(best, len(cyc))
        assert circumference(g) == best


def test_chromatic_number():
    assert chromatic_number(complete_graph(5))[0] == 5
    assert chromatic_number(cycle_graph(7))[0] == 3
    assert chromatic_number(path_graph(6))[0] == 2
    assert chromatic_number(empty_graph(4))[0] == 1
    k, coloring = chromatic_number(cycle_graph(6))
    assert k == 2
    g = cycle_graph(6)
    assert all(coloring[a] != coloring[b] for a, b in g.edges())


def test_chromatic_matches_networkx_oracle():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(2, 8)
        g = random_graph(n, rng.random(), rng)
        h = nx.Graph()
        h.add_nodes_from(range(n))
        h.add_edges_from(g.edges())
        # exact chromatic number by brute force over k
        def colorable(k):
            for assign in itertools.product(range(k), repeat=n):
                if all(assign[a] != assign[b] for a, b in g.edges()):
                    return True
            return False
        k = 1
        while not colorable(k):
            k += 1
        assert chromatic_number(g)[0] == k


def test_biclique_union_test():
    # a star always splits: one side keeps the hub
    assert biclique_union_spanning_test(star_graph(5)) is not None
    # P_6 splits into two 3-vertex stars
    w = biclique_union_spanning_test(path_graph(6))
    assert w is not None and {w.m1 + w.n1, w.m2 + w.n2} == {3}
    # P_7 has no admissible split: one side must absorb the middle
    assert biclique_union_spanning_test(path_graph(7)) is None
    # double star with >= 2 leaves on both ends splits as two stars
    assert biclique_union_spanning_test(skmn_graph(2, 2, 3)) is not None
    with pytest.raises(ValueError):
        biclique_union_spanning_test(cycle_graph(5))  # not bipartite
    with pytest.raises(ValueError):
        biclique_union_spanning_test(path_graph(3), ([0, 1], [2]))


def test_theta_star_2():
    assert theta_star_2(complete_graph(5)) == 1
    assert theta_star_2(graph_from_edges(
        4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])) == 1  # K_4 minus edge
    assert theta_star_2(disjoint_union(complete_graph(3),
                                       complete_graph(2))) == 2
    assert theta_star_2(star_graph(5)) is None
    assert theta_star_2(path_graph(4)) == 2  # two disjoint edges


def test_bound_report_paths():
    for n in range(2, 8):
        br = bound_report(path_graph(n))
        assert br.q_lower == br.q_upper == n


def test_bound_report_fields_and_json():
    # distance-2 vertices of C_6 are joined by a unique 2-edge geodesic
    br = bound_report(cycle_graph(6))
    assert br.c == 6 and br.d == 2
    assert br.q_lower <= br.q_upper
    j = br.to_json()
    assert j["q_upper"]["value"] == br.q_upper
    assert set(j) == {"graph6", "d", "c", "chi", "theta_star_2",
                      "q_lower", "q_upper"}


def test_theta2_feeds_upper_bound():
    rng = random.Random(5)
    for _ in range(25):
        g = random_graph(rng.randint(2, 8), rng.random(), rng)
        br = bound_report(g)
        if br.theta2 is not None:
            assert br.q_upper <= 2 * br.theta2
