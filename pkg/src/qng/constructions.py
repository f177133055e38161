"""Orthogonal matrix constructions from bipartite blocks, spectral joins,
matrix-level vertex duplication, and the bank of explicit certificate
matrices for the exceptional graph families."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .graphs import Graph, find_isomorphism
from .spectra import (DEFAULT_TOL, PatternReport, ToleranceConfig,
                      check_symmetric, graph_of_pattern, pattern_matches,
                      psd_sqrt, spectral_norm, spectrum)


class ConstructionError(ValueError):
    pass


class AlphaSelectionError(ConstructionError):
    def __init__(self, message, min_entry=None):
        super().__init__(message)
        self.min_entry = min_entry


@dataclass(frozen=True)
class BipartiteBlock:
    """An m x n block B with ||B|| < 1, optionally with a unit left null
    vector v (needed for the bordered construction)."""

    B: np.ndarray
    v: Optional[np.ndarray] = None

    def __post_init__(self):
        B = np.asarray(self.B, dtype=float)
        object.__setattr__(self, "B", B)
        if B.ndim != 2:
            raise ConstructionError("block must be a 2-d matrix")
        if spectral_norm(B) >= 1.0:
            raise ConstructionError(
                f"spectral norm {spectral_norm(B):.6f} is not below 1")
        if self.v is not None:
            v = np.asarray(self.v, dtype=float).reshape(-1)
            object.__setattr__(self, "v", v)
            if v.shape[0] != B.shape[0]:
                raise ConstructionError("v must live in the row space side of B")
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ConstructionError("v must be a unit vector")
            if np.linalg.norm(B.T @ v) > 1e-12:
                raise ConstructionError("v must satisfy B^T v = 0")

    @property
    def m(self) -> int:
        return self.B.shape[0]

    @property
    def n(self) -> int:
        return self.B.shape[1]


@dataclass(frozen=True)
class ConstructionParams:
    alpha: float = 1.0
    grid_size: int = 257

    def __post_init__(self):
        if abs(self.alpha) > 1.0:
            raise ConstructionError(f"|alpha| = {abs(self.alpha)} exceeds 1")


def build_M(block: BipartiteBlock, params: ConstructionParams = ConstructionParams(),
            cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """The (m+n) x (m+n) involution with off-diagonal block alpha*B."""
    B, a = block.B, params.alpha
    m, n = B.shape
    top = psd_sqrt(np.eye(m) - a * a * (B @ B.T), cfg)
    bot = psd_sqrt(np.eye(n) - a * a * (B.T @ B), cfg)
    M = np.block([[top, a * B], [a * B.T, -bot]])
    return (M + M.T) / 2.0


def build_Mhat(block: BipartiteBlock, params: ConstructionParams = ConstructionParams(),
               cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """The bordered (1+m+n)-dimensional involution; requires the null vector v."""
    if block.v is None:
        raise ConstructionError("bordered construction requires the null vector v")
    B, v, a = block.B, block.v, params.alpha
    m, n = B.shape
    # v is a unit eigenvector of BB^T at 0, so the bordered square root
    # splits exactly: sqrt(I - (a^2 BB^T + vv^T)) = sqrt(I - a^2 BB^T) - vv^T
    mid = psd_sqrt(np.eye(m) - a * a * (B @ B.T), cfg) - np.outer(v, v)
    bot = psd_sqrt(np.eye(n) - a * a * (B.T @ B), cfg)
    M = np.zeros((1 + m + n, 1 + m + n))
    M[0, 1:1 + m] = v
    M[1:1 + m, 0] = v
    M[1:1 + m, 1:1 + m] = mid
    M[1:1 + m, 1 + m:] = a * B
    M[1 + m:, 1:1 + m] = a * B.T
    M[1 + m:, 1 + m:] = -bot
    return (M + M.T) / 2.0


@dataclass(frozen=True)
class IrreducibilityResult:
    value: bool
    pattern_level: bool

    def __bool__(self) -> bool:
        return self.value


def is_generalised_irreducible(A: np.ndarray,
                               cfg: ToleranceConfig = DEFAULT_TOL) -> IrreducibilityResult:
    """Support-digraph reachability: some power has a nonzero (i,j) entry for
    every pair.  For sign-mixed input this is a pattern-level statement
    (possible cancellations are ignored)."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    pattern_level = bool(np.any(A < 0))
    support = [0] * n
    for i in range(n):
        for j in range(n):
            if A[i, j] != 0.0:
                support[i] |= 1 << j
    # reach[i] = vertices reachable from i by walks of length >= 1
    for i in range(n):
        frontier = support[i]
        reach = frontier
        while True:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= support[low.bit_length() - 1]
                m ^= low
            frontier = nxt & ~reach
            if not frontier:
                break
            reach |= frontier
        if reach != (1 << n) - 1:
            return IrreducibilityResult(False, pattern_level)
    return IrreducibilityResult(True, pattern_level)


def reducibility_split(B: np.ndarray) -> Optional[Tuple[tuple, tuple, tuple]]:
    """Permutations exhibiting PBQ = diag(B', B'') when BB^T is reducible.

    Returns (row_order, col_order, (m1, n1, m2, n2)) so that
    B[np.ix_(row_order, col_order)] is 2x2 block diagonal, or None.
    """
    B = np.asarray(B, dtype=float)
    if np.any(B < 0):
        raise ConstructionError("reducibility split is defined for nonnegative B")
    m, n = B.shape
    if m < 2:
        return None
    # rows are connected when they share a column with nonzeros in both
    comp = list(range(m))

    def root(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for j in range(n):
        rows = [i for i in range(m) if B[i, j] != 0.0]
        for i in rows[1:]:
            comp[root(i)] = root(rows[0])
    groups: Dict[int, list] = {}
    for i in range(m):
        groups.setdefault(root(i), []).append(i)
    if len(groups) == 1:
        return None
    first = sorted(groups.values())[0]
    rows1 = first
    rows2 = [i for i in range(m) if i not in rows1]
    cols1 = [j for j in range(n) if any(B[i, j] != 0.0 for i in rows1)]
    cols2 = [j for j in range(n) if j not in cols1]
    return (tuple(rows1 + rows2), tuple(cols1 + cols2),
            (len(rows1), len(cols1), len(rows2), len(cols2)))


def select_alpha(block: BipartiteBlock, need_v_border: bool = False,
                 cfg: ToleranceConfig = DEFAULT_TOL,
                 grid_size: int = 257) -> float:
    """First alpha on a fixed descending grid in (0,1] for which every entry of
    the square-root diagonal blocks clears the entry floor."""
    B = block.B
    if not is_generalised_irreducible(B @ B.T, cfg):
        raise ConstructionError("BB^T is not generalised irreducible")
    if not is_generalised_irreducible(B.T @ B, cfg):
        raise ConstructionError("B^T B is not generalised irreducible")
    if need_v_border and block.v is None:
        raise ConstructionError("bordered selection requires the null vector v")
    m, n = B.shape
    BBt, BtB = B @ B.T, B.T @ B
    best_min = -1.0
    for i in range(grid_size):
        a = (grid_size - i) / grid_size
        if need_v_border:
            top = psd_sqrt(np.eye(m) - a * a * BBt, cfg) - np.outer(block.v, block.v)
        else:
            top = psd_sqrt(np.eye(m) - a * a * BBt, cfg)
        bot = psd_sqrt(np.eye(n) - a * a * BtB, cfg)
        least = min(float(np.min(np.abs(top))), float(np.min(np.abs(bot))))
        if least >= cfg.entry_floor:
            return a
        best_min = max(best_min, least)
    raise AlphaSelectionError(
        f"no admissible alpha on a {grid_size}-point grid "
        f"(best minimum entry {best_min:.3e})", best_min)


def spectral_join_HS04(A: np.ndarray, B: np.ndarray, u: np.ndarray,
                       cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Glue A (whose last diagonal entry is mu) to B along the eigenpair
    (mu, u) of B; the result's spectrum is sigma(A) with one copy of mu
    replaced by sigma(B) minus one copy of mu."""
    A = check_symmetric(A)
    B = check_symmetric(B)
    u = np.asarray(u, dtype=float).reshape(-1)
    if u.shape[0] != B.shape[0]:
        raise ConstructionError("u must match the dimension of B")
    if abs(np.linalg.norm(u) - 1.0) > 1e-10:
        raise ConstructionError("u must be a unit vector")
    mu = A[-1, -1]
    resid = np.linalg.norm(B @ u - mu * u)
    if resid > 1e-10 * max(1.0, spectral_norm(B)):
        raise ConstructionError(
            f"(mu, u) is not an eigenpair of B within tolerance "
            f"(residual {resid:.3e}); the designated diagonal of A is {mu!r}")
    n = A.shape[0]
    m = B.shape[0]
    b = A[:-1, -1]
    C = np.zeros((n - 1 + m, n - 1 + m))
    C[:n - 1, :n - 1] = A[:-1, :-1]
    C[:n - 1, n - 1:] = np.outer(b, u)
    C[n - 1:, :n - 1] = np.outer(u, b)
    C[n - 1:, n - 1:] = B
    return C


def duplicate_matrix(A: np.ndarray, v: int,
                     cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Unjoined duplication of vertex v: requires a_vv to be an eigenvalue of A.

    The new vertex is appended at index n; the distinct-eigenvalue set is
    unchanged and the multiplicity of a_vv rises by one.
    """
    A = check_symmetric(A)
    n = A.shape[0]
    lam = A[v, v]
    w = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.max(np.abs(w))))
    if np.min(np.abs(w - lam)) > cfg.eig_tol * scale:
        raise ConstructionError(
            f"diagonal entry {lam!r} at vertex {v} is not an eigenvalue of A")
    C = np.zeros((n + 1, n + 1))
    C[:n, :n] = A
    s = 1.0 / math.sqrt(2.0)
    for i in range(n):
        if i == v:
            continue
        C[i, v] = C[v, i] = A[i, v] * s
        C[i, n] = C[n, i] = A[i, v] * s
    C[v, v] = C[n, n] = lam
    C[v, n] = C[n, v] = 0.0
    return C


def joined_duplicate_matrix(A: np.ndarray, v: int, new_eig: float,
                            cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Joined duplication of vertex v via the spectral join: the new vertex is
    appended at index n and new_eig (an existing eigenvalue distinct from
    a_vv) gains one in multiplicity; the distinct-eigenvalue set is kept."""
    A = check_symmetric(A)
    n = A.shape[0]
    mu = A[v, v]
    w = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.max(np.abs(w))))
    if np.min(np.abs(w - new_eig)) > cfg.eig_tol * scale:
        raise ConstructionError(f"{new_eig!r} is not an eigenvalue of A")
    if abs(new_eig - mu) <= cfg.entry_floor:
        raise ConstructionError(
            "new_eig must differ from the duplicated diagonal entry")
    C = np.zeros((n + 1, n + 1))
    C[:n, :n] = A
    s = 1.0 / math.sqrt(2.0)
    for i in range(n):
        if i == v:
            continue
        C[i, v] = C[v, i] = A[i, v] * s
        C[i, n] = C[n, i] = A[i, v] * s
    C[v, v] = C[n, n] = (mu + new_eig) / 2.0
    C[v, n] = C[n, v] = (mu - new_eig) / 2.0
    return C


# ---------------------------------------------------------------------------
# certificates

@dataclass
class Certificate:
    """A matrix witnessing an upper bound on q(G), optionally SSP/SMP."""

    name: str
    graph: Graph
    matrix: np.ndarray
    claimed_q: int
    property_level: str = "none"  # none | SMP | SSP
    orthogonal: bool = False
    verified: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        from .graphs import graph6_encode
        return {"name": self.name, "graph6": graph6_encode(self.graph),
                "claimed_q": self.claimed_q,
                "property_level": self.property_level,
                "verified": self.verified}


class CertificateError(ConstructionError):
    pass


def verify_certificate(cert: Certificate,
                       cfg: ToleranceConfig = DEFAULT_TOL) -> Certificate:
    """Run all checks a certificate claims; raises CertificateError with
    diagnostics on any failure, otherwise marks it verified."""
    failures: List[str] = []
    report = pattern_matches(cert.matrix, cert.graph, cfg)
    if not report:
        failures.append(f"pattern violations: {report.violations[:4]}")
    summary = spectrum(cert.matrix, cfg)
    if summary.q != cert.claimed_q:
        failures.append(
            f"spectrum has {summary.q} clusters, claimed {cert.claimed_q}: "
            f"{summary.values}")
    if cert.orthogonal:
        M = cert.matrix
        dev = float(np.max(np.abs(M @ M - np.eye(M.shape[0]))))
        if dev > 1e-10:
            failures.append(f"not orthogonal: ||M^2 - I||_max = {dev:.3e}")
        cert.details["orthogonality_residual"] = dev
    if cert.property_level in ("SSP", "SMP"):
        from .strong import strong_property_check
        rep = strong_property_check(cert.matrix, cert.property_level, cfg)
        if not rep.holds:
            failures.append(
                f"{cert.property_level} fails with nullity {rep.nullity}")
    elif cert.property_level != "none":
        failures.append(f"unknown property level {cert.property_level!r}")
    if failures:
        cert.verified = False
        raise CertificateError(
            f"certificate {cert.name!r} failed verification: " + "; ".join(failures))
    cert.verified = True
    return cert


def _aligned(name: str, M: np.ndarray, target: Graph, claimed_q: int,
             property_level: str = "none", orthogonal: bool = False) -> Certificate:
    """Permute M so its pattern graph carries the target labeling."""
    M = check_symmetric(M)
    pat = graph_of_pattern(M)
    perm = find_isomorphism(pat, target)
    if perm is None:
        raise CertificateError(
            f"bank entry {name!r}: matrix pattern is not isomorphic to its graph")
    n = M.shape[0]
    out = np.zeros_like(M)
    for i in range(n):
        for j in range(n):
            out[perm[i], perm[j]] = M[i, j]
    return Certificate(name, target, out, claimed_q, property_level, orthogonal)


def _p6_complement_matrix() -> np.ndarray:
    r6 = math.sqrt(6.0)
    A = np.array([[3.0, 2.0, r6],
                  [2.0, 0.0, -2.0 * r6],
                  [r6, -2.0 * r6, 1.0]])
    B = np.array([[3.0, 2.0, 0.0],
                  [2.0, 0.0, 0.0],
                  [0.0, 0.0, -1.0]])
    return 2.0 ** (-2.5) * np.block([[A, B], [B, -A]])


def _s3_22_complement_matrix() -> np.ndarray:
    r2 = math.sqrt(2.0)
    ap = 1.5 * r2 + 2.0
    am = 1.5 * r2 - 2.0
    t = 2.0 * r2
    X = np.array([
        [-1.0, 1.0, ap, am, t, 3.0, 0.0],
        [1.0, -1.0, am, ap, -t, 3.0, 0.0],
        [ap, am, -1.0, 1.0, t, 0.0, 3.0],
        [am, ap, 1.0, -1.0, -t, 0.0, 3.0],
        [t, -t, t, -t, -2.0, 0.0, 0.0],
        [3.0, 3.0, 0.0, 0.0, 0.0, 0.0, -3.0 * r2],
        [0.0, 0.0, 3.0, 3.0, 0.0, -3.0 * r2, 0.0]])
    return X / 6.0


def _s2_22_complement_matrix() -> np.ndarray:
    A = np.array([[1.0, 1.0, 1.0],
                  [1.0, 0.0, -1.0],
                  [1.0, -1.0, 0.0]])
    B = np.array([[0.0, 0.0, 0.0],
                  [0.0, 1.0, -1.0],
                  [0.0, -1.0, 1.0]]) / math.sqrt(2.0)
    return np.block([[A, B], [B, -A]]) / math.sqrt(3.0)


def _w21_22_complement_matrix() -> np.ndarray:
    r6 = math.sqrt(6.0)
    ap = (3.0 + r6) / 2.0
    am = (3.0 - r6) / 2.0
    X = np.array([
        [0, -3, 3, -3, 3, 0, 0, 0],
        [-3, ap, -am, -ap, am, r6, 0, r6],
        [3, -am, ap, am, -ap, r6, 0, r6],
        [-3, -ap, am, ap, -am, 0, r6, r6],
        [3, am, -ap, -am, ap, 0, r6, r6],
        [0, r6, r6, 0, 0, -2 - r6, -2 + r6, 2],
        [0, 0, 0, r6, r6, -2 + r6, -2 - r6, 2],
        [0, r6, r6, r6, r6, 2, 2, -2]], dtype=float)
    return X / 6.0


def _h7_complement_matrix() -> np.ndarray:
    r2 = math.sqrt(2.0)
    r3 = math.sqrt(3.0)
    r6 = math.sqrt(6.0)
    X = np.array([
        [0, 0, 4, 0, 2 * r2, 2 * r3, 0],
        [0, -3, -r6, 3, 2 * r3, 0, 0],
        [4, -r6, 0, -r6, 0, 0, 2 * r2],
        [0, 3, -r6, 1, 0, 2 * r2, 2 * r3],
        [2 * r2, 2 * r3, 0, 0, 3, -r6, -1],
        [2 * r3, 0, 0, 2 * r2, -r6, 2, -r6],
        [0, 0, 2 * r2, 2 * r3, -1, -r6, 3]], dtype=float)
    return X / 6.0


def _w_k0_matrix(k: int) -> np.ndarray:
    n = 2 * k + 1
    X = np.zeros((n, n))
    val = math.sqrt(3.0 / k)
    for i in range(k):
        X[i, k + i] = X[k + i, i] = 1.0
        X[k + i, 2 * k] = X[2 * k, k + i] = val
    return X


def _w_k1_matrix(k: int) -> np.ndarray:
    n = 2 * k + 2
    X = np.zeros((n, n))
    val = math.sqrt(4.0 / k)
    for i in range(k):
        X[i, k + i] = X[k + i, i] = 1.0
        X[k + i, 2 * k] = X[2 * k, k + i] = val
    X[2 * k, 2 * k] = 1.0
    X[2 * k, 2 * k + 1] = X[2 * k + 1, 2 * k] = 1.0
    X[2 * k + 1, 2 * k + 1] = 1.0
    return X


def h_graph_order7() -> Graph:
    """C_7 plus a chord joining two vertices at distance 2."""
    from .graphs import add_edge, cycle_graph
    return add_edge(cycle_graph(7), 0, 2)


def certificate_bank() -> Dict[str, Certificate]:
    """Explicit certificate matrices, each aligned to its named graph."""
    from .families import skmn_graph, wkl_graph
    from .graphs import complement, path_graph
    bank: Dict[str, Certificate] = {}

    def put(cert: Certificate):
        bank[cert.name] = cert

    put(_aligned("P6_complement", _p6_complement_matrix(),
                 complement(path_graph(6)), 2, orthogonal=True))
    put(_aligned("S3_2_2_complement", _s3_22_complement_matrix(),
                 complement(skmn_graph(3, 2, 2)), 2, orthogonal=True))
    put(_aligned("S2_2_2_complement", _s2_22_complement_matrix(),
                 complement(skmn_graph(2, 2, 2)), 2, orthogonal=True))
    put(_aligned("W_2_1_22_complement", _w21_22_complement_matrix(),
                 complement(wkl_graph(2, 1, (2, 2))), 2, orthogonal=True))
    put(_aligned("H7_complement", _h7_complement_matrix(),
                 complement(h_graph_order7()), 2, property_level="SSP",
                 orthogonal=True))
    for k in range(2, 7):
        put(_aligned(f"W_{k}_0", _w_k0_matrix(k), wkl_graph(k, 0), 5))
        put(_aligned(f"W_{k}_1", _w_k1_matrix(k), wkl_graph(k, 1), 5))
    return bank
