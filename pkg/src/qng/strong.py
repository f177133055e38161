"""Strong spectral/multiplicity property verification, property-preserving
direct sums, and spectrum-preserving lifts to spanning supergraphs.

The strong spectral property (SSP) of a symmetric matrix A demands that the
only symmetric X with A o X = I o X = 0 and [A, X] = 0 is X = 0.  The strong
multiplicity property (SMP) relaxes the first two conditions to
tr(A^i X) = 0 for i = 0, ..., n-1, so SSP implies SMP.  Both reduce to the
nullity of a linear constraint system over the free entries of X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .graphs import Graph
from .spectra import (DEFAULT_TOL, ToleranceConfig, check_symmetric,
                      graph_of_pattern, pattern_matches, spectral_norm,
                      spectrum)


class StrongPropertyError(ValueError):
    pass


class LiftError(StrongPropertyError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass
class StrongPropertyReport:
    """Nullity of the SSP/SMP constraint system, with a witness on failure."""

    mode: str
    nullity: int
    witness: Optional[np.ndarray] = None
    singular_values: Optional[np.ndarray] = None

    @property
    def holds(self) -> bool:
        return self.nullity == 0

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"mode": self.mode, "nullity": self.nullity,
                "holds": self.holds,
                "singular_values": [] if self.singular_values is None
                else [float(s) for s in self.singular_values]}


def _free_positions(A: np.ndarray, cfg: ToleranceConfig) -> List[Tuple[int, int]]:
    # off-diagonal non-edges of the pattern: positions where X may be nonzero
    n = A.shape[0]
    return [(i, j) for i in range(n) for j in range(i + 1, n)
            if abs(A[i, j]) < cfg.entry_floor]


def strong_property_check(A: np.ndarray, mode: str = "SSP",
                          cfg: ToleranceConfig = DEFAULT_TOL) -> StrongPropertyReport:
    """Decide the SSP or SMP of A by the rank of its commutator system.

    Columns are indexed by the free entries x_{ij}; rows stack [A, X] = 0
    and, for the SMP, tr(A^i X) = 0 for i = 0, ..., n-1.  The property holds
    iff the system has full column rank.
    """
    if mode not in ("SSP", "SMP"):
        raise StrongPropertyError(f"unknown mode {mode!r}")
    A = check_symmetric(A)
    n = A.shape[0]
    free = _free_positions(A, cfg)
    if not free:
        return StrongPropertyReport(mode, 0, None, np.zeros(0))
    cols = []
    powers = None
    if mode == "SMP":
        powers = [np.eye(n)]
        for _ in range(n - 1):
            powers.append(powers[-1] @ A)
    for (i, j) in free:
        E = np.zeros((n, n))
        E[i, j] = E[j, i] = 1.0
        col = (A @ E - E @ A).reshape(-1)
        if mode == "SMP":
            traces = [2.0 * P[i, j] for P in powers]
            col = np.concatenate([col, traces])
        cols.append(col)
    C = np.column_stack(cols)
    U, s, Vt = np.linalg.svd(C, full_matrices=True)
    smax = s[0] if s.size else 0.0
    nullity = int(np.sum(s < cfg.rank_tol * max(smax, 1e-300)))
    if smax == 0.0:
        nullity = len(free)
    witness = None
    if nullity > 0:
        x = Vt[-1]
        X = np.zeros((n, n))
        for k, (i, j) in enumerate(free):
            X[i, j] = X[j, i] = x[k]
        X /= max(np.max(np.abs(X)), 1e-300)
        witness = X
    return StrongPropertyReport(mode, nullity, witness, s)


def direct_sum_checked(A1: np.ndarray, A2: np.ndarray, mode: str = "SSP",
                       cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Property-preserving direct sum: both blocks must have the property and
    disjoint spectra, and the result is re-verified before being returned."""
    A1 = check_symmetric(A1)
    A2 = check_symmetric(A2)
    for name, A in (("first", A1), ("second", A2)):
        rep = strong_property_check(A, mode, cfg)
        if not rep.holds:
            raise StrongPropertyError(
                f"{name} summand fails {mode} (nullity {rep.nullity})")
    s1 = spectrum(A1, cfg)
    s2 = spectrum(A2, cfg)
    scale = max(1.0, spectral_norm(A1), spectral_norm(A2))
    for v1 in s1.values:
        for v2 in s2.values:
            if abs(v1 - v2) <= cfg.eig_tol * scale:
                raise StrongPropertyError(
                    f"summands share the eigenvalue cluster "
                    f"{v1:.12g} ~ {v2:.12g}; spectra must be disjoint")
    n1, n2 = A1.shape[0], A2.shape[0]
    S = np.zeros((n1 + n2, n1 + n2))
    S[:n1, :n1] = A1
    S[n1:, n1:] = A2
    rep = strong_property_check(S, mode, cfg)
    if not rep.holds:
        raise StrongPropertyError(
            f"direct sum unexpectedly fails {mode} (nullity {rep.nullity})")
    return S


def _sorted_eig(A: np.ndarray):
    w, V = np.linalg.eigh(A)
    return w, V


def lift_to_supergraph(A: np.ndarray, G: Graph,
                       cfg: ToleranceConfig = DEFAULT_TOL,
                       seed: int = 0, mode: str = "SSP",
                       eps: float = 1e-2, max_iter: int = 50,
                       max_restarts: int = 5) -> np.ndarray:
    """Move A to a matrix with pattern G, the same sorted spectrum, and the
    same strong property, where G is a spanning supergraph of A's pattern.

    Gauss-Newton refinement over the entries on E(G) and the diagonal,
    initialized at A with entries of size eps placed on the new edges.  The
    strong property guarantees a nearby solution exists; non-convergence is
    reported, never silently absorbed.
    """
    A = check_symmetric(A)
    n = A.shape[0]
    if G.n != n:
        raise LiftError(f"graph order {G.n} != matrix dimension {n}")
    pat = graph_of_pattern(A, cfg)
    if pat.adj == G.adj:
        return A
    for i in range(n):
        if pat.adj[i] & ~G.adj[i]:
            raise LiftError("matrix pattern is not a subgraph of the target")
    rep = strong_property_check(A, mode, cfg)
    if not rep.holds:
        raise LiftError(f"input matrix lacks the {mode} (nullity {rep.nullity})")

    target = np.sort(np.linalg.eigvalsh(A))
    scale = max(1.0, float(np.max(np.abs(target))))
    goal = 1e-8 * scale
    polish = 1e-12 * scale
    # group the target spectrum into clusters; degenerate eigenvalues are
    # matched through full eigenvector blocks, not individually
    clusters: List[List[int]] = [[0]]
    for k in range(1, n):
        if target[k] - target[k - 1] <= cfg.eig_tol * scale:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    old_edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if pat.has_edge(i, j)]
    new_edges = [(i, j) for i in range(n) for j in range(i + 1, n)
                 if G.has_edge(i, j) and not pat.has_edge(i, j)]
    # the new edges are held fixed at small seed values so the refinement
    # cannot drift back onto a sub-pattern; only old entries move
    variables = [(i, i) for i in range(n)] + old_edges
    rng = np.random.default_rng(seed)

    last_resid = None
    for restart in range(max_restarts):
        e = eps * (0.5 ** restart) * scale
        M = A.copy()
        for (i, j) in new_edges:
            M[i, j] = M[j, i] = e * (1.0 if rng.random() < 0.5 else -1.0)
        converged = False
        best = np.inf
        stall = 0
        for _ in range(max_iter):
            w, V = _sorted_eig(M)
            last_resid = float(np.max(np.abs(w - target)))
            if last_resid <= polish:
                converged = True
                break
            if last_resid < 0.5 * best:
                best, stall = last_resid, 0
            else:
                stall += 1
                if stall >= 8:
                    break
            # one residual per entry of each cluster block V_c^T M V_c,
            # which must equal target * I; the off-diagonal rows keep
            # degenerate eigenvalues from splitting
            rows, rhs = [], []
            for cl in clusters:
                for a_pos, a in enumerate(cl):
                    for b in cl[a_pos:]:
                        va, vb = V[:, a], V[:, b]
                        row = np.empty(len(variables))
                        for vidx, (i, j) in enumerate(variables):
                            if i == j:
                                row[vidx] = va[i] * vb[i]
                            else:
                                row[vidx] = va[i] * vb[j] + va[j] * vb[i]
                        rows.append(row)
                        want = target[a] if a == b else 0.0
                        cur = w[a] if a == b else 0.0
                        rhs.append(want - cur)
            J = np.array(rows)
            step, *_ = np.linalg.lstsq(J, np.array(rhs), rcond=1e-12)
            limit = 0.5 * scale
            nrm = float(np.max(np.abs(step)))
            if nrm > limit:
                step *= limit / nrm
            for vidx, (i, j) in enumerate(variables):
                M[i, j] += step[vidx]
                if i != j:
                    M[j, i] += step[vidx]
        if not converged:
            w = np.sort(np.linalg.eigvalsh(M))
            last_resid = float(np.max(np.abs(w - target)))
            if last_resid > goal:
                continue
        ok = pattern_matches(M, G, cfg)
        if not ok:
            continue
        rep = strong_property_check(M, mode, cfg)
        if not rep.holds:
            continue
        return (M + M.T) / 2.0
    raise LiftError(
        f"lift failed after {max_restarts} restarts "
        f"(final spectral residual {last_resid:.3e}, goal {goal:.3e})",
        last_resid)
