"""Pick matrices and positive-semidefiniteness feasibility checks.

For interpolation nodes ``z_1..z_n`` in the unit ball and scalar targets
``lambda_1..lambda_n`` in the closed unit disc, the Pick matrix of a
kernel ``K(z, w) = sum_m a_m <z, w>^m`` is

    M_ij = K(z_i, z_j) (1 - lambda_i conj(lambda_j)).

Positive semidefiniteness of ``M`` is exactly solvability of the
interpolation problem by a multiplier of norm at most 1; this module
builds ``M`` through certified kernel evaluations and decides PSD-ness
by the minimum eigenvalue of the Hermitized matrix with a scale-aware
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .seqkernel import CoefficientSequence, kernel_eval

__all__ = [
    "PickProblem",
    "HermitianMatrix",
    "PsdReport",
    "build_pick_matrix",
    "min_eigenvalue",
    "pick_feasible",
    "gram_and_irreducibility",
]

_HERMITIAN_BUILD_TOL = 1e-12
_HERMITIAN_ACCEPT_TOL = 1e-9
_NODE_GAP = 1e-12


class HermitianMatrix:
    """A square complex matrix validated to be Hermitian within tolerance."""

    def __init__(self, array, tol: float = _HERMITIAN_BUILD_TOL):
        arr = np.array(array, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("matrix must be square")
        scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
        drift = float(np.max(np.abs(arr - arr.conj().T))) if arr.size else 0.0
        if drift > tol * scale:
            raise ValueError(f"matrix is not Hermitian: max asymmetry {drift:g}")
        arr.setflags(write=False)
        self.array = arr

    @property
    def order(self) -> int:
        return self.array.shape[0]

    def __getitem__(self, idx):
        return self.array[idx]

    def sup_norm(self) -> float:
        """Max absolute row sum (the operator infinity-norm)."""
        return float(np.max(np.sum(np.abs(self.array), axis=1)))


@dataclass(frozen=True)
class PsdReport:
    """Minimum-eigenvalue verdict with the scaled tolerance actually used."""

    min_eigenvalue: float
    is_psd: bool
    tolerance: float

    def as_dict(self) -> dict:
        return {
            "min_eigenvalue": self.min_eigenvalue,
            "is_psd": self.is_psd,
            "tolerance": self.tolerance,
        }


@dataclass(frozen=True)
class PickProblem:
    """An interpolation data set: kernel, ball nodes, and disc targets.

    ``nodes`` is a tuple of length-``dimension`` complex tuples, pairwise
    distinct and of norm < 1; ``targets`` holds one complex number of
    modulus <= 1 per node.
    """

    kernel: CoefficientSequence
    dimension: int
    nodes: tuple
    targets: tuple

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        nodes = tuple(tuple(complex(c) for c in node) for node in self.nodes)
        targets = tuple(complex(t) for t in self.targets)
        if len(nodes) != len(targets) or not nodes:
            raise ValueError("need equally many nodes and targets, at least one each")
        for node in nodes:
            if len(node) != self.dimension:
                raise ValueError(f"every node must have {self.dimension} coordinates")
            if sum(abs(c) ** 2 for c in node) >= 1.0:
                raise ValueError("nodes must lie strictly inside the unit ball")
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                gap = max(abs(a - b) for a, b in zip(nodes[i], nodes[j]))
                if gap <= _NODE_GAP:
                    raise ValueError(f"nodes {i} and {j} coincide")
        for t in targets:
            if abs(t) > 1.0:
                raise ValueError("targets must have modulus <= 1")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "targets", targets)

    def __len__(self) -> int:
        return len(self.nodes)


def _pairings(nodes: Sequence[Sequence[complex]]) -> np.ndarray:
    """Hermitian inner products <z_i, z_j> as an n x n array."""
    arr = np.array(nodes, dtype=complex)
    return arr @ arr.conj().T


def build_pick_matrix(problem: PickProblem, kernel_tol: float = 1e-10) -> HermitianMatrix:
    """Assemble the Pick matrix with certified kernel evaluations.

    Entries are computed for i <= j and mirrored by conjugation, so the
    result is Hermitian by construction.  Kernel evaluations that cannot
    certify their tail at ``kernel_tol`` propagate as errors.
    """
    n = len(problem)
    inner = _pairings(problem.nodes)
    targets = problem.targets
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            k_val = complex(kernel_eval(problem.kernel, inner[i, j], tol=kernel_tol))
            entry = k_val * (1.0 - targets[i] * targets[j].conjugate())
            out[i, j] = entry
            if i != j:
                out[j, i] = entry.conjugate()
            else:
                out[i, j] = complex(entry.real, 0.0)
    return HermitianMatrix(out)


def min_eigenvalue(matrix, tol: float = 1e-9) -> PsdReport:
    """Minimum eigenvalue of a Hermitian matrix with a scaled PSD verdict.

    Accepts a `HermitianMatrix` or any square array Hermitian within
    1e-9 (relative to ``max(1, sup-norm)``); the matrix is symmetrized
    before the eigensolve.  The verdict tolerance is
    ``tol * max(1, sup_norm)``.
    """
    if isinstance(matrix, HermitianMatrix):
        herm = matrix
    else:
        herm = HermitianMatrix(matrix, tol=_HERMITIAN_ACCEPT_TOL)
    arr = herm.array
    sym = (arr + arr.conj().T) / 2.0
    eigenvalues = np.linalg.eigvalsh(sym)
    min_eig = float(eigenvalues[0])
    scaled = tol * max(1.0, herm.sup_norm())
    return PsdReport(min_eigenvalue=min_eig, is_psd=bool(min_eig >= -scaled), tolerance=scaled)


def pick_feasible(
    problem: PickProblem, tol: float = 1e-9, kernel_tol: float = 1e-10
) -> PsdReport:
    """Feasibility of the norm-one interpolation problem: is the Pick matrix PSD."""
    return min_eigenvalue(build_pick_matrix(problem, kernel_tol=kernel_tol), tol=tol)


def gram_and_irreducibility(
    kernel: CoefficientSequence,
    dimension: int,
    points: Sequence,
    tol: float = 1e-9,
    kernel_tol: float = 1e-10,
) -> tuple:
    """Gram matrix of kernel sections and a strict-irreducibility verdict.

    Returns ``(G, verdict)`` with ``G_ij = K(z_i, z_j)``.  The verdict is
    true when every entry has modulus above ``tol`` (no orthogonal pair)
    and every 2x2 principal minor ``G_ii G_jj - |G_ij|^2`` exceeds
    ``tol`` (no pair of proportional sections).
    """
    pts = tuple(tuple(complex(c) for c in (p if np.ndim(p) else (p,))) for p in points)
    if not pts:
        raise ValueError("need at least one point")
    for p in pts:
        if len(p) != dimension:
            raise ValueError(f"every point must have {dimension} coordinates")
        if sum(abs(c) ** 2 for c in p) >= 1.0:
            raise ValueError("points must lie strictly inside the unit ball")
    n = len(pts)
    inner = _pairings(pts)
    gram = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            val = complex(kernel_eval(kernel, inner[i, j], tol=kernel_tol))
            gram[i, j] = val if i != j else complex(val.real, 0.0)
            if i != j:
                gram[j, i] = val.conjugate()
    verdict = True
    for i in range(n):
        for j in range(i + 1, n):
            if abs(gram[i, j]) <= tol:
                verdict = False
            minor = gram[i, i].real * gram[j, j].real - abs(gram[i, j]) ** 2
            if minor <= tol:
                verdict = False
    return HermitianMatrix(gram), bool(verdict)
