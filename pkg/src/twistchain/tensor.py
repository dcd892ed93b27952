"""Dense complex linear algebra primitives for small spin chains.

Conventions used throughout the package:

* basis of C^2: |0> = (1,0)^T is spin-up, |1> = (0,1)^T is spin-down,
* tensor factor 1 is the leftmost Kronecker factor,
* everything is a dense ``complex128`` ndarray; chains are capped at
  N = 12 sites (4096-dimensional), which keeps every check desk-scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

MAX_SITES = 12

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
SM = 0.5 * (SX - 1j * SY)  # lowers |up> -> |down>, annihilates |down>
SP = 0.5 * (SX + 1j * SY)


class DecompositionError(RuntimeError):
    """Raised when the underlying eigendecomposition does not converge."""


def as_matrix(m, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Validate and return a dense complex matrix.

    Rejects non-2d input, shape mismatches against ``rows``/``cols`` and
    non-finite entries.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got array of ndim {a.ndim}")
    if rows is not None and a.shape[0] != rows:
        raise ValueError(f"expected {rows} rows, got {a.shape[0]}")
    if cols is not None and a.shape[1] != cols:
        raise ValueError(f"expected {cols} columns, got {a.shape[1]}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with factor `a` leftmost."""
    return np.kron(as_matrix(a), as_matrix(b))


def kron_all(ops: list[np.ndarray]) -> np.ndarray:
    if not ops:
        raise ValueError("empty operator list")
    out = as_matrix(ops[0])
    for op in ops[1:]:
        out = np.kron(out, as_matrix(op))
    return out


def embed_at_site(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """I x ... x op x ... x I with `op` at tensor factor `site` (1-based)."""
    if not 1 <= n_sites <= MAX_SITES:
        raise ValueError(f"n_sites must be in 1..{MAX_SITES}, got {n_sites}")
    if not 1 <= site <= n_sites:
        raise ValueError(f"site {site} out of range 1..{n_sites}")
    op = as_matrix(op, 2, 2)
    ops = [I2] * n_sites
    ops[site - 1] = op
    return kron_all(ops)


def lift(op: np.ndarray, dims: list[int], slots: list[int]) -> np.ndarray:
    """Embed `op`, acting on the tensor factors `slots` (0-based, in order),
    into the product space with factor dimensions `dims`.

    The factors named in `slots` need not be adjacent; `op` must be square
    with dimension prod(dims[s] for s in slots).
    """
    op = as_matrix(op)
    d_slots = int(np.prod([dims[s] for s in slots]))
    if op.shape != (d_slots, d_slots):
        raise ValueError(f"operator dim {op.shape} does not match slots {slots} of {dims}")
    n = len(dims)
    rest = [k for k in range(n) if k not in slots]
    full = int(np.prod(dims))
    t = op.reshape([dims[s] for s in slots] * 2).astype(complex)
    for k in rest:
        t = np.tensordot(t, np.eye(dims[k], dtype=complex), axes=0)
    # axis layout now: slots_out, slots_in, then (out, in) pairs per rest factor
    k_s = len(slots)
    axes_out = [0] * n
    axes_in = [0] * n
    for pos, s in enumerate(slots):
        axes_out[s] = pos
        axes_in[s] = k_s + pos
    for pos, r in enumerate(rest):
        axes_out[r] = 2 * k_s + 2 * pos
        axes_in[r] = 2 * k_s + 2 * pos + 1
    t = np.transpose(t, axes_out + axes_in)
    return t.reshape(full, full)


def permutation_op() -> np.ndarray:
    """4x4 permutation P with P(x ⊗ y) = y ⊗ x; equals sum_ij e_ij ⊗ e_ji."""
    p = np.zeros((4, 4), dtype=complex)
    for i in range(2):
        for j in range(2):
            p[2 * i + j, 2 * j + i] = 1.0
    return p


def eigenvalues(m: np.ndarray) -> np.ndarray:
    """Full eigenvalue multiset of a general complex matrix.

    Sorted lexicographically by (Re, Im) so that identical input yields an
    identical array. Non-normal input is fine; failures of the QR iteration
    surface as DecompositionError.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix must be square, got {m.shape}")
    try:
        ev = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise DecompositionError(str(exc)) from exc
    order = np.lexsort((ev.imag, ev.real))
    return ev[order]


@dataclass(frozen=True)
class SpectrumReport:
    """Outcome of a multiset eigenvalue comparison."""

    eigenvalues: np.ndarray
    matched: bool
    max_pair_distance: float


def match_spectra(s1, s2, tol: float) -> SpectrumReport:
    """Pair two eigenvalue multisets and test whether they coincide.

    Both multisets are sorted lexicographically by (Re, Im) and paired
    greedily; if the greedy pairing exceeds `tol` the comparison is retried
    with an optimal bipartite assignment before declaring a mismatch (this
    protects near-degenerate clusters from unlucky sort order).
    """
    a = np.sort_complex(np.asarray(s1, dtype=complex))
    b = np.sort_complex(np.asarray(s2, dtype=complex))
    if a.shape != b.shape:
        raise ValueError(f"cardinality mismatch: {a.shape} vs {b.shape}")
    dist = float(np.max(np.abs(a - b))) if a.size else 0.0
    if dist > tol and a.size:
        cost = np.abs(a[:, None] - b[None, :])
        rows, cols = linear_sum_assignment(cost)
        dist = float(np.max(cost[rows, cols]))
    return SpectrumReport(eigenvalues=a, matched=bool(dist <= tol), max_pair_distance=dist)


def rel_residual(lhs: np.ndarray, rhs: np.ndarray) -> float:
    """Frobenius distance of lhs and rhs relative to their scale (floored at 1)."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs), 1.0)
    return float(np.linalg.norm(lhs - rhs) / scale)
