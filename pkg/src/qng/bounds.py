"""Combinatorial invariants feeding eigenvalue-count bounds: longest unique
shortest path, circumference, chromatic number, biclique-union spanning
tests, near-clique bipartitions, and their aggregation into an interval
[q_lower, q_upper] for each graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .graphs import (Graph, bipartition, complement, graph6_encode,
                     mask_vertices)


def unique_shortest_path_length(g: Graph) -> int:
    """Edge count of the longest shortest path that is unique between its
    endpoints; 0 for edgeless graphs."""
    best = 0
    for s in range(g.n):
        dist = [-1] * g.n
        count = [0] * g.n
        dist[s] = 0
        count[s] = 1
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    count[v] = count[u]
                    queue.append(v)
                elif dist[v] == dist[u] + 1:
                    count[v] += count[u]
        for t in range(g.n):
            if count[t] == 1 and dist[t] > best:
                best = dist[t]
    return best


def circumference(g: Graph) -> int:
    """Order of the largest cycle subgraph; 0 when the graph is acyclic."""
    if g.n > 16:
        raise ValueError("exact circumference capped at 16 vertices")
    n = g.n
    adj = g.adj
    best = 0
    # a cycle is rooted at its minimum vertex; extend simple paths from it
    for s in range(n):
        if best == n:
            break
        higher = ~((1 << (s + 1)) - 1)
        stack = [(s, 1 << s, 1)]
        while stack:
            u, mask, length = stack.pop()
            if length >= 3 and (adj[u] >> s) & 1 and length > best:
                best = length
                if best == n:
                    break
            cand = adj[u] & higher & ~mask
            while cand:
                low = cand & -cand
                v = low.bit_length() - 1
                cand ^= low
                stack.append((v, mask | low, length + 1))
    return best


def _max_clique(g: Graph) -> int:
    best = 0
    order = sorted(range(g.n), key=g.degree, reverse=True)

    def grow(cand: int, size: int):
        nonlocal best
        if size + bin(cand).count("1") <= best:
            return
        if not cand:
            best = max(best, size)
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            if size + 1 + bin(cand).count("1") <= best:
                return
            grow(cand & g.adj[v], size + 1)

    full = (1 << g.n) - 1
    for v in order:
        grow(g.adj[v] & full, 1)
    best = max(best, 1 if g.n else 0)
    return best


def chromatic_number(g: Graph) -> Tuple[int, List[int]]:
    """Exact chromatic number with one optimal coloring, by iterative
    deepening over k with a clique lower bound."""
    if g.n > 16:
        raise ValueError("exact chromatic number capped at 16 vertices")
    if g.n == 0:
        return 0, []
    lb = _max_clique(g)
    order = sorted(range(g.n), key=g.degree, reverse=True)
    colors = [-1] * g.n

    def assign(k: int, idx: int, top: int) -> bool:
        # top = number of colors used so far; trying color top first is the
        # only fresh choice worth exploring (color symmetry)
        if idx == g.n:
            return True
        v = order[idx]
        used = 0
        for u in g.neighbors(v):
            if colors[u] >= 0:
                used |= 1 << colors[u]
        for c in range(min(k, top + 1)):
            if (used >> c) & 1:
                continue
            colors[v] = c
            if assign(k, idx + 1, max(top, c + 1)):
                return True
            colors[v] = -1
        return False

    k = lb
    while True:
        for i in range(g.n):
            colors[i] = -1
        if assign(k, 0, 0):
            return k, list(colors)
        k += 1


@dataclass(frozen=True)
class BicliqueWitness:
    m1: int
    n1: int
    m2: int
    n2: int
    black1: tuple
    white1: tuple
    black2: tuple
    white2: tuple


def biclique_union_spanning_test(g: Graph,
                                 classes: Optional[tuple] = None
                                 ) -> Optional[BicliqueWitness]:
    """Search a bipartite graph for a spanning K_{m1,n1} u K_{m2,n2} with a
    nontrivial split of at least one color class.

    Returns a witness split, or None; None means the two-eigenvalue
    orthogonal construction applies to the complement.
    """
    if classes is None:
        classes = bipartition(g)
        if classes is None:
            raise ValueError("graph is not bipartite")
    black, white = [mask_vertices(c) if isinstance(c, int) else list(c)
                    for c in classes]
    for v in black:
        for u in black:
            if v != u and g.has_edge(v, u):
                raise ValueError("coloring is not proper")
    for v in white:
        for u in white:
            if v != u and g.has_edge(v, u):
                raise ValueError("coloring is not proper")
    m, n = len(black), len(white)
    for bm in range(1 << m):
        b1 = [black[i] for i in range(m) if (bm >> i) & 1]
        b2 = [black[i] for i in range(m) if not (bm >> i) & 1]
        for wm in range(1 << n):
            w1 = [white[i] for i in range(n) if (wm >> i) & 1]
            w2 = [white[i] for i in range(n) if not (wm >> i) & 1]
            if not ((b1 and b2) or (w1 and w2)):
                continue
            if all(g.has_edge(x, y) for x in b1 for y in w1) and \
               all(g.has_edge(x, y) for x in b2 for y in w2):
                return BicliqueWitness(len(b1), len(w1), len(b2), len(w2),
                                       tuple(b1), tuple(w1),
                                       tuple(b2), tuple(w2))
    return None


def _near_clique(g: Graph, members: List[int]) -> bool:
    # spanning K_r, or K_r minus one edge with r >= 4
    r = len(members)
    missing = 0
    for a in range(r):
        for b in range(a + 1, r):
            if not g.has_edge(members[a], members[b]):
                missing += 1
                if missing > 1:
                    return False
    return missing == 0 or r >= 4


def theta_star_2(g: Graph) -> Optional[int]:
    """Smallest count (at most 2) of vertex-disjoint spanning pieces that
    each carry a spanning clique or near-clique; None when not certified."""
    if g.n > 12:
        raise ValueError("near-clique bipartition search capped at 12 vertices")
    allv = list(range(g.n))
    if _near_clique(g, allv):
        return 1
    for mask in range(1, 1 << (g.n - 1)):
        part1 = [v for v in allv if (mask >> v) & 1]
        part2 = [v for v in allv if not (mask >> v) & 1]
        if _near_clique(g, part1) and _near_clique(g, part2):
            return 2
    return None


@dataclass
class BoundReport:
    """Certified interval [q_lower, q_upper] with per-bound provenance."""

    graph: Graph
    d: int
    c: int
    chi: int
    theta2: Optional[int]
    q_lower: int
    q_lower_source: str
    q_upper: int
    q_upper_source: str

    def to_json(self) -> dict:
        return {"graph6": graph6_encode(self.graph), "d": self.d,
                "c": self.c, "chi": self.chi, "theta_star_2": self.theta2,
                "q_lower": {"value": self.q_lower, "source": self.q_lower_source},
                "q_upper": {"value": self.q_upper, "source": self.q_upper_source}}


def bound_report(g: Graph) -> BoundReport:
    """Aggregate the unique-path lower bound with the cycle, coloring and
    near-clique upper bounds."""
    n = g.n
    d = unique_shortest_path_length(g)
    c = circumference(g)
    gc = complement(g)
    chi, _ = chromatic_number(g)
    chi_c, _ = chromatic_number(gc)
    theta2 = theta_star_2(g) if n <= 12 else None

    lower = [(1, "order"), (d + 1, "unique-shortest-path")]
    if g.edge_count() > 0:
        lower.append((2, "has-edge"))
    q_lower, q_lower_source = max(lower)

    upper = [(n, "order"), (n - c // 2, "cycle"),
             (2 * chi_c, "coloring-of-complement")]
    if theta2 is not None:
        upper.append((2 * theta2, "near-clique-cover"))
    q_upper, q_upper_source = min(upper)
    return BoundReport(g, d, c, chi, theta2,
                       q_lower, q_lower_source, q_upper, q_upper_source)
