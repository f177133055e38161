"""Dense symmetric spectral utilities: distinct-eigenvalue clustering,
PSD square roots, and matrix/graph pattern conformance."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .graphs import Graph


class NotSymmetricError(ValueError):
    pass


class NotPositiveSemidefiniteError(ValueError):
    pass


@dataclass(frozen=True)
class ToleranceConfig:
    eig_tol: float = 1e-8
    rank_tol: float = 1e-8
    entry_floor: float = 1e-6

    def __post_init__(self):
        if min(self.eig_tol, self.rank_tol, self.entry_floor) <= 0:
            raise ValueError("tolerances must be strictly positive")
        if self.entry_floor <= self.eig_tol:
            raise ValueError("entry_floor must exceed eig_tol")


DEFAULT_TOL = ToleranceConfig()


def check_symmetric(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NotSymmetricError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NotSymmetricError("matrix has non-finite entries")
    if not np.array_equal(A, A.T):
        if np.max(np.abs(A - A.T)) > 1e-13 * max(1.0, np.max(np.abs(A))):
            raise NotSymmetricError("matrix is not symmetric")
        A = (A + A.T) / 2.0
    return A


def spectral_norm(A: np.ndarray) -> float:
    return float(np.linalg.norm(A, 2)) if A.size else 0.0


@dataclass(frozen=True)
class SpectrumSummary:
    """Distinct eigenvalues with multiplicities under a clustering tolerance."""

    clusters: Tuple[Tuple[float, int], ...]
    tol: float

    @property
    def q(self) -> int:
        return len(self.clusters)

    @property
    def values(self) -> Tuple[float, ...]:
        return tuple(rep for rep, _ in self.clusters)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(m for _, m in self.clusters)


def spectrum(A: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOL) -> SpectrumSummary:
    """Eigenvalues of a symmetric matrix, clustered by gaps > eig_tol * max(1, ||A||)."""
    A = check_symmetric(A)
    try:
        w = np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError(
            f"eigensolver failed (||A||_F = {np.linalg.norm(A):.3e})") from exc
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    gap = cfg.eig_tol * scale
    clusters = []
    start = 0
    for k in range(1, len(w) + 1):
        if k == len(w) or w[k] - w[k - 1] > gap:
            block = w[start:k]
            clusters.append((float(np.mean(block)), len(block)))
            start = k
    return SpectrumSummary(tuple(clusters), cfg.eig_tol)


def psd_sqrt(A: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Symmetric PSD square root; eigenvalues clamped at zero."""
    A = check_symmetric(A)
    w, V = np.linalg.eigh(A)
    scale = max(1.0, float(np.max(np.abs(w))) if w.size else 0.0)
    if w.size and w[0] < -cfg.eig_tol * scale:
        raise NotPositiveSemidefiniteError(
            f"matrix has eigenvalue {w[0]:.3e} below -eig_tol*||A||")
    w = np.clip(w, 0.0, None)
    S = (V * np.sqrt(w)) @ V.T
    return (S + S.T) / 2.0


@dataclass
class PatternReport:
    """Outcome of a pattern-conformance check, with per-entry diagnostics."""

    ok: bool
    violations: List[tuple] = field(default_factory=list)
    warnings: List[tuple] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def pattern_matches(A: np.ndarray, g: Graph,
                    cfg: ToleranceConfig = DEFAULT_TOL) -> PatternReport:
    """Off-diagonal support of A must be exactly E(G); diagonal unconstrained.

    Entries within a factor 10 of the floor are reported as warnings: the
    nonzero pattern is a symbolic statement and near-floor magnitudes are
    genuinely ambiguous.
    """
    A = check_symmetric(A)
    if A.shape[0] != g.n:
        raise ValueError(f"matrix dimension {A.shape[0]} != graph order {g.n}")
    violations = []
    warnings = []
    for i in range(g.n):
        for j in range(i + 1, g.n):
            mag = abs(A[i, j])
            edge = g.has_edge(i, j)
            if edge and mag < cfg.entry_floor:
                violations.append((i, j, mag, "edge entry below floor"))
            elif not edge and mag >= cfg.entry_floor:
                violations.append((i, j, mag, "non-edge entry above floor"))
            elif cfg.entry_floor / 10 <= mag < cfg.entry_floor * 10:
                warnings.append((i, j, mag, "entry near floor"))
    return PatternReport(not violations, violations, warnings)


def graph_of_pattern(A: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOL) -> Graph:
    """The graph whose edges are the off-diagonal entries above the floor."""
    A = check_symmetric(A)
    n = A.shape[0]
    from .graphs import graph_from_edges
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if abs(A[i, j]) >= cfg.entry_floor]
    return graph_from_edges(n, edges)


# ---------------------------------------------------------------------------
# plain-text matrix files: first line n, then n rows of n values

def dump_matrix(A: np.ndarray) -> str:
    A = check_symmetric(A)
    n = A.shape[0]
    lines = [str(n)]
    for i in range(n):
        lines.append(" ".join(format(x, ".17g") for x in A[i]))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    buf = io.StringIO(text)
    first = buf.readline().strip()
    try:
        n = int(first)
    except ValueError:
        raise ValueError(f"bad dimension line {first!r}")
    rows = []
    for i in range(n):
        line = buf.readline()
        if not line:
            raise ValueError(f"expected {n} rows, file ended after {i}")
        vals = [float(tok) for tok in line.split()]
        if len(vals) != n:
            raise ValueError(f"row {i} has {len(vals)} values, expected {n}")
        rows.append(vals)
    return check_symmetric(np.array(rows))


def save_matrix(path, A: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.write(dump_matrix(A))


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return parse_matrix(fh.read())
