"""SSP/SMP verification, direct sums and spectrum-preserving lifts."""

import numpy as np
import pytest

from qng.graphs import (add_edge, complete_graph, enumerate_nonisomorphic,
                        graph_from_edges, path_graph)
from qng.spectra import DEFAULT_TOL, graph_of_pattern
from qng.strong import (LiftError, StrongPropertyError, direct_sum_checked,
                        lift_to_supergraph, strong_property_check)


def random_matrix_on(g, rng):
    n = g.n
    A = np.zeros((n, n))
    for i in range(n):
        A[i, i] = rng.normal()
        for j in range(i + 1, n):
            if g.has_edge(i, j):
                A[i, j] = A[j, i] = rng.normal()
    return A


def test_identity_fails_ssp_with_witness():
    rep = strong_property_check(np.eye(2))
    assert not rep.holds and rep.nullity == 1
    X = rep.witness
    # the witness certifies the failure: off-diagonal, commuting with A
    assert X is not None and abs(X[0, 1]) > 0.5 and X[0, 0] == X[1, 1] == 0


def test_distinct_diagonal_has_ssp():
    assert strong_property_check(np.diag([1.0, 2.0, 3.0])).holds


def test_no_free_entries_trivially_holds():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert strong_property_check(A).holds


def test_unknown_mode_rejected():
    with pytest.raises(StrongPropertyError):
        strong_property_check(np.eye(2), mode="XXX")


def test_ssp_implies_smp():
    rng = np.random.default_rng(0)
    graphs = {n: list(enumerate_nonisomorphic(n)) for n in range(2, 7)}
    for _ in range(200):
        n = int(rng.integers(2, 7))
        g = graphs[n][int(rng.integers(len(graphs[n])))]
        A = random_matrix_on(g, rng)
        if strong_property_check(A, "SSP").holds:
            assert strong_property_check(A, "SMP").holds


def test_property_is_permutation_invariant():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        A = random_matrix_on(path_graph(n), rng)
        perm = rng.permutation(n)
        P = np.eye(n)[perm]
        for mode in ("SSP", "SMP"):
            assert strong_property_check(A, mode).holds == \
                strong_property_check(P @ A @ P.T, mode).holds


def test_direct_sum_checked():
    A1 = np.diag([1.0, 2.0])
    A2 = np.diag([3.0])
    S = direct_sum_checked(A1, A2)
    assert S.shape == (3, 3)
    with pytest.raises(StrongPropertyError):
        direct_sum_checked(A1, np.diag([2.0]))  # shared eigenvalue
    with pytest.raises(StrongPropertyError):
        direct_sum_checked(np.eye(2), np.diag([3.0]))  # first lacks SSP


def test_lift_two_by_two_oracle():
    # diag(0, 2) lifted onto K_2: solutions have a_11 + a_22 = 2,
    # a_11 a_22 - b^2 = 0 with b != 0
    A = np.diag([0.0, 2.0])
    M = lift_to_supergraph(A, complete_graph(2))
    assert abs(M[0, 1]) > 1e-6
    assert np.allclose(np.sort(np.linalg.eigvalsh(M)), [0.0, 2.0], atol=1e-8)
    assert abs(M[0, 0] + M[1, 1] - 2.0) < 1e-8


def test_lift_random_subgraph_pairs():
    rng = np.random.default_rng(2)
    graphs = {n: list(enumerate_nonisomorphic(n)) for n in range(3, 8)}
    done = 0
    while done < 50:
        n = int(rng.integers(3, 8))
        pool = graphs[n]
        g = pool[int(rng.integers(len(pool)))]
        missing = [(i, j) for i in range(n) for j in range(i + 1, n)
                   if not g.has_edge(i, j)]
        if not missing:
            continue
        i, j = missing[int(rng.integers(len(missing)))]
        sup = add_edge(g, i, j)
        A = random_matrix_on(g, rng)
        if not strong_property_check(A).holds:
            continue
        M = lift_to_supergraph(A, sup, seed=done)
        assert np.max(np.abs(np.sort(np.linalg.eigvalsh(M))
                             - np.sort(np.linalg.eigvalsh(A)))) < 1e-8
        assert graph_of_pattern(M, DEFAULT_TOL).adj == sup.adj
        assert strong_property_check(M).holds
        done += 1


def test_lift_validates_inputs():
    A = np.diag([1.0, 2.0])
    with pytest.raises(LiftError):
        lift_to_supergraph(A, complete_graph(3))  # dimension mismatch
    B = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(LiftError):
        # pattern K_2 is not a subgraph of the empty graph
        lift_to_supergraph(B, graph_from_edges(2, []))
    with pytest.raises(LiftError):
        lift_to_supergraph(np.eye(2), complete_graph(2))  # input lacks SSP


def test_lift_noop_when_pattern_already_matches():
    A = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert lift_to_supergraph(A, complete_graph(2)) is A
