"""Small undirected graphs as per-vertex neighbour bitmasks.

Supports graphs on at most 16 vertices (one machine word per neighbour set),
the headerless graph6 interchange format, complements, vertex duplication,
exact canonical forms and isomorphism-free enumeration of all graphs up to
order 8.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

MAX_VERTICES = 16


class Graph6Error(ValueError):
    """Malformed graph6 input; carries the offending byte offset."""

    def __init__(self, message: str, offset: Optional[int] = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with bitmask adjacency."""

    n: int
    adj: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"order {self.n} outside supported range 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match order")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {i} has neighbours outside the vertex set")
            if row & (1 << i):
                raise ValueError(f"self-loop at vertex {i}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if ((self.adj[i] >> j) & 1) != ((self.adj[j] >> i) & 1):
                    raise ValueError(f"asymmetric adjacency between {i} and {j}")

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.adj[i] >> j) & 1)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def neighbors(self, v: int) -> Iterator[int]:
        row = self.adj[v]
        while row:
            low = row & -row
            yield low.bit_length() - 1
            row ^= low

    def edges(self) -> list:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)
                if self.has_edge(i, j)]

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with old vertex i renamed to perm[i]."""
        adj = [0] * self.n
        for i in range(self.n):
            row = 0
            for j in self.neighbors(i):
                row |= 1 << perm[j]
            adj[perm[i]] = row
        return Graph(self.n, tuple(adj))

    def degree_sequence(self) -> tuple:
        return tuple(sorted(self.degree(v) for v in range(self.n)))


def graph_from_edges(n: int, edges) -> Graph:
    adj = [0] * n
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop at vertex {i}")
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)]
    return graph_from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)))


def star_graph(n: int) -> Graph:
    """K_{1,n-1} with centre 0."""
    return graph_from_edges(n, [(0, i) for i in range(1, n)])


def disjoint_union(g: Graph, h: Graph) -> Graph:
    adj = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, tuple(adj))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple((~row & full) & ~(1 << i) for i, row in enumerate(g.adj)))


def duplicate_vertex(g: Graph, v: int, joined: bool = False) -> Graph:
    """dup(G,v): new vertex w with N(w)=N(v); jdup additionally joins w to v."""
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range for order {g.n}")
    w = g.n
    adj = list(g.adj) + [g.adj[v]]
    for u in g.neighbors(v):
        adj[u] |= 1 << w
    if joined:
        adj[v] |= 1 << w
        adj[w] |= 1 << v
    return Graph(g.n + 1, tuple(adj))


# ---------------------------------------------------------------------------
# graph6 codec (headerless, n <= 62 which covers our n <= 16)

def graph6_encode(g: Graph) -> str:
    out = [chr(63 + g.n)]
    bits = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            bits = (bits << 1) | (1 if g.has_edge(i, j) else 0)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + bits))
                bits = 0
                nbits = 0
    if nbits:
        bits <<= 6 - nbits
        out.append(chr(63 + bits))
    return "".join(out)


def graph6_decode(text: str) -> Graph:
    if not text:
        raise Graph6Error("empty graph6 string", 0)
    raw = text.encode("ascii", errors="replace")
    n = raw[0] - 63
    if not 0 <= raw[0] - 63 <= 62 or not (63 <= raw[0] <= 126):
        raise Graph6Error(f"bad order byte {raw[0]!r}", 0)
    if n < 1 or n > MAX_VERTICES:
        raise Graph6Error(f"order {n} outside supported range 1..{MAX_VERTICES}", 0)
    npairs = n * (n - 1) // 2
    nbytes = (npairs + 5) // 6
    if len(raw) - 1 != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for order {n}, got {len(raw) - 1}",
            len(raw))
    bits = []
    for off, byte in enumerate(raw[1:], start=1):
        if not 63 <= byte <= 126:
            raise Graph6Error(f"byte {byte!r} outside printable graph6 range", off)
        val = byte - 63
        bits.extend((val >> (5 - k)) & 1 for k in range(6))
    for k in range(npairs, len(bits)):
        if bits[k]:
            raise Graph6Error("nonzero trailing padding bits", len(raw) - 1)
    adj = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(adj))


# ---------------------------------------------------------------------------
# canonical forms

@dataclass(frozen=True)
class CanonicalForm:
    """Upper-triangle bitstring (column order) of the canonical relabeling."""

    n: int
    bits: int

    def to_graph(self) -> Graph:
        n = self.n
        npairs = n * (n - 1) // 2
        adj = [0] * n
        idx = 0
        for j in range(1, n):
            for i in range(j):
                if (self.bits >> (npairs - 1 - idx)) & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                idx += 1
        return Graph(n, tuple(adj))


def _refine_colors(g: Graph) -> list:
    """Equitable colour refinement; colours are canonical ranks."""
    n = g.n
    colors = [0] * n
    ncolors = 1
    while True:
        sigs = []
        for v in range(n):
            sigs.append((colors[v], tuple(sorted(colors[u] for u in g.neighbors(v)))))
        ranked = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if new == colors:
            return colors
        colors = new
        ncolors = len(ranked)
        if ncolors == n:
            return colors


def _twin_swap(adj: tuple, u: int, v: int) -> bool:
    """True when transposing u and v is an automorphism."""
    return (adj[u] & ~(1 << v)) == (adj[v] & ~(1 << u))


def canonical_form(g: Graph) -> CanonicalForm:
    """Exact canonical form: minimal upper-triangle bitstring over vertex
    orderings compatible with the equitable colour partition."""
    n = g.n
    if n == 1:
        return CanonicalForm(1, 0)
    colors = _refine_colors(g)
    cells = {}
    for v, c in enumerate(colors):
        cells.setdefault(c, []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    cell_of_pos = []
    for ci, cell in enumerate(cell_list):
        cell_of_pos.extend([ci] * len(cell))

    adj = g.adj
    best: list = []
    have_best = False
    code: list = []
    placed: list = []
    used = [False] * n

    def dfs(t: int):
        nonlocal have_best, best
        if t == n:
            if not have_best or code < best:
                best = list(code)
                have_best = True
            return
        entries = []
        for v in cell_list[cell_of_pos[t]]:
            if used[v]:
                continue
            col = 0
            av = adj[v]
            for u in placed:
                col = (col << 1) | ((av >> u) & 1)
            entries.append((col, v))
        entries.sort()
        tried = []
        for col, v in entries:
            if any(c2 == col and _twin_swap(adj, v2, v) for c2, v2 in tried):
                continue
            tried.append((col, v))
            if t:
                code.append(col)
                if have_best and code > best[:t]:
                    code.pop()
                    continue
            used[v] = True
            placed.append(v)
            dfs(t + 1)
            placed.pop()
            used[v] = False
            if t:
                code.pop()

    dfs(0)
    bits = 0
    for t, col in enumerate(best, start=1):
        bits = (bits << t) | col
    return CanonicalForm(n, bits)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.degree_sequence() != h.degree_sequence():
        return False
    return canonical_form(g) == canonical_form(h)


def find_isomorphism(g: Graph, h: Graph) -> Optional[list]:
    """A vertex map perm with g.relabel(perm) == h, or None."""
    if g.n != h.n:
        return None
    n = g.n
    cg, ch = _refine_colors(g), _refine_colors(h)
    if sorted(cg) != sorted(ch):
        return None
    perm = [-1] * n
    used = [False] * n
    targets_by_color = {}
    for v, c in enumerate(ch):
        targets_by_color.setdefault(c, []).append(v)

    def dfs(i: int) -> bool:
        if i == n:
            return True
        for w in targets_by_color.get(cg[i], ()):
            if used[w]:
                continue
            ok = True
            for j in range(i):
                if g.has_edge(i, j) != h.has_edge(w, perm[j]):
                    ok = False
                    break
            if ok:
                perm[i] = w
                used[w] = True
                if dfs(i + 1):
                    return True
                used[w] = False
        return False

    return perm if dfs(0) else None


def automorphism_count(g: Graph) -> int:
    """Order of the automorphism group (exact, cell-restricted search)."""
    n = g.n
    colors = _refine_colors(g)
    used = [False] * n
    perm = [-1] * n
    count = 0

    def dfs(i: int):
        nonlocal count
        if i == n:
            count += 1
            return
        for w in range(n):
            if used[w] or colors[w] != colors[i]:
                continue
            ok = True
            for j in range(i):
                if g.has_edge(i, j) != g.has_edge(w, perm[j]):
                    ok = False
                    break
            if ok:
                perm[i] = w
                used[w] = True
                dfs(i + 1)
                used[w] = False
        return

    dfs(0)
    return count


# ---------------------------------------------------------------------------
# enumeration

@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple:
    if n == 1:
        return (Graph(1, (0,)),)
    seen = {}
    for g in _all_graphs(n - 1):
        base = list(g.adj) + [0]
        for mask in range(1 << (n - 1)):
            adj = list(base)
            adj[n - 1] = mask
            m = mask
            while m:
                low = m & -m
                adj[low.bit_length() - 1] |= 1 << (n - 1)
                m ^= low
            cf = canonical_form(Graph(n, tuple(adj)))
            if cf.bits not in seen:
                seen[cf.bits] = cf
    return tuple(cf.to_graph() for _, cf in sorted(seen.items()))


def enumerate_nonisomorphic(n: int) -> Iterator[Graph]:
    """One canonical representative per isomorphism class, deterministic order."""
    if not 1 <= n <= 8:
        raise ValueError(f"enumeration supports 1 <= n <= 8, got {n}")
    yield from _all_graphs(n)


@lru_cache(maxsize=None)
def _all_trees(n: int) -> tuple:
    if n == 1:
        return (Graph(1, (0,)),)
    seen = {}
    for t in _all_trees(n - 1):
        for v in range(t.n):
            adj = list(t.adj) + [1 << v]
            adj[v] |= 1 << (n - 1)
            cf = canonical_form(Graph(n, tuple(adj)))
            if cf.bits not in seen:
                seen[cf.bits] = cf
    return tuple(cf.to_graph() for _, cf in sorted(seen.items()))


def enumerate_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class, grown by leaf attachment."""
    if not 1 <= n <= 12:
        raise ValueError(f"tree enumeration supports 1 <= n <= 12, got {n}")
    yield from _all_trees(n)


# ---------------------------------------------------------------------------
# structure helpers shared by the invariant and family modules

def connected_components(g: Graph) -> list:
    comps = []
    unvisited = (1 << g.n) - 1
    while unvisited:
        start = (unvisited & -unvisited).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= g.adj[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~comp
            comp |= frontier
        comps.append(comp)
        unvisited &= ~comp
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def is_tree(g: Graph) -> bool:
    return is_connected(g) and g.edge_count() == g.n - 1


def bipartition(g: Graph) -> Optional[tuple]:
    """(black_mask, white_mask) of a proper 2-colouring, or None."""
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] != -1:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in g.neighbors(v):
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    black = sum(1 << v for v in range(g.n) if color[v] == 0)
    white = sum(1 << v for v in range(g.n) if color[v] == 1)
    return black, white


def mask_vertices(mask: int) -> list:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def delete_vertex(g: Graph, v: int) -> Graph:
    keep = [u for u in range(g.n) if u != v]
    index = {u: i for i, u in enumerate(keep)}
    edges = [(index[i], index[j]) for i, j in g.edges() if i != v and j != v]
    return graph_from_edges(g.n - 1, edges)


def delete_edge(g: Graph, i: int, j: int) -> Graph:
    if not g.has_edge(i, j):
        raise ValueError(f"no edge {{{i},{j}}} to delete")
    adj = list(g.adj)
    adj[i] &= ~(1 << j)
    adj[j] &= ~(1 << i)
    return Graph(g.n, tuple(adj))


def add_edge(g: Graph, i: int, j: int) -> Graph:
    if i == j or g.has_edge(i, j):
        raise ValueError(f"cannot add edge {{{i},{j}}}")
    adj = list(g.adj)
    adj[i] |= 1 << j
    adj[j] |= 1 << i
    return Graph(g.n, tuple(adj))
