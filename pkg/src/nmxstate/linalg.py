"""Dense Hermitian matrix primitives.

Everything here works on plain ``numpy`` arrays. Subsystem ordering follows
the usual Kronecker convention: for two qubits the basis index is
``2 * iA + iB`` so party A is the most significant factor.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .exceptions import (
    DimensionError,
    NonHermitianError,
    NormalizationError,
    PositivityError,
)

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
NEGATIVE_CLIP = 1e-12
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60

PAULI = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)
IDENTITY2 = np.eye(2, dtype=complex)


def as_hermitian(m, tol=HERMITIAN_TOL):
    """Return ``m`` as a square complex array, rejecting non-Hermitian input."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    asym = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if asym > tol:
        raise NonHermitianError(
            f"matrix is not Hermitian: max |m - m^H| = {asym:.3e} exceeds {tol:.0e}"
        )
    return m


def _rotate(a, v, p, q):
    app = a[p, p].real
    aqq = a[q, q].real
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    theta = 0.5 * np.arctan2(2.0 * r, aqq - app)
    c, s = np.cos(theta), np.sin(theta)
    # Unitary that diagonalises the (p, q) block: diag(phase, 1) @ [[c, s], [-s, c]].
    g = np.array([[phase * c, phase * s], [-s, c]])
    idx = [p, q]
    a[:, idx] = a[:, idx] @ g
    a[idx, :] = g.conj().T @ a[idx, :]
    a[p, q] = a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real
    v[:, idx] = v[:, idx] @ g


def hermitian_eigh(m):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with ``w`` ascending and ``m @ v[:, k] == w[k] * v[:, k]``.
    Sweeps stop once the off-diagonal Frobenius mass drops below
    ``1e-14 * max(1, ||m||_F)``.
    """
    a = as_hermitian(m).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, np.linalg.norm(a))
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(JACOBI_MAX_SWEEPS):
        if np.linalg.norm(a[offdiag]) < JACOBI_TOL * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] != 0:
                    _rotate(a, v, p, q)
    w = np.diag(a).real.copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(m):
    """Ascending real eigenvalues of a Hermitian matrix."""
    return hermitian_eigh(m)[0]


def _subsystem_dims(m, dims):
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims) or int(np.prod(dims)) != m.shape[0]:
        raise DimensionError(
            f"subsystem dims {dims} do not multiply to matrix size {m.shape[0]}"
        )
    return dims


def _party_indices(party, n_parties):
    if isinstance(party, str):
        names = "ABCDEFGH"[:n_parties]
        if party not in names:
            raise DimensionError(f"unknown party {party!r} for {n_parties} subsystems")
        return (names.index(party),)
    if isinstance(party, (int, np.integer)):
        party = (party,)
    parties = tuple(int(k) for k in party)
    if any(k < 0 or k >= n_parties for k in parties):
        raise DimensionError(f"party index out of range: {parties}")
    return parties


def partial_transpose(m, dims=(2, 2), party="A"):
    """Transpose the indices of one or more subsystems.

    ``party`` is ``"A"``/``"B"`` (first/second factor), an integer index, or a
    sequence of indices for multi-party layouts such as ``(A1, B1, A2, B2)``.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    dims = _subsystem_dims(m, dims)
    k = len(dims)
    parties = _party_indices(party, k)
    axes = list(range(2 * k))
    for p in parties:
        axes[p], axes[k + p] = axes[k + p], axes[p]
    return m.reshape(dims + dims).transpose(axes).reshape(m.shape)


def partial_trace(m, dims=(2, 2), keep="A"):
    """Reduced matrix on the kept subsystems."""
    m = np.asarray(m)
    dims = _subsystem_dims(m, dims)
    k = len(dims)
    kept = sorted(_party_indices(keep, k))
    traced = [i for i in range(k) if i not in kept]
    t = m.reshape(dims + dims)
    # Trace out from the highest index down so axis numbers stay valid.
    for i in sorted(traced, reverse=True):
        n = t.ndim // 2
        t = np.trace(t, axis1=i, axis2=n + i)
    d = int(np.prod([dims[i] for i in kept]))
    return t.reshape(d, d)


def permute_subsystems(m, dims, order):
    """Reorder tensor factors, e.g. ``(A1, B1, A2, B2) -> (A1, A2, B1, B2)``."""
    m = np.asarray(m)
    dims = _subsystem_dims(m, dims)
    k = len(dims)
    order = list(order)
    if sorted(order) != list(range(k)):
        raise DimensionError(f"{order} is not a permutation of {k} subsystems")
    return m.reshape(dims + dims).transpose(order + [k + i for i in order]).reshape(m.shape)


def trace_norm(m):
    """Sum of absolute eigenvalues of a Hermitian matrix."""
    return float(np.sum(np.abs(hermitian_eigenvalues(m))))


def kron_product(*factors):
    """Tensor product of any number of matrices (left factor most significant)."""
    return reduce(np.kron, (np.asarray(f, dtype=complex) for f in factors))


def check_density_matrix(rho, tol_trace=TRACE_TOL, clip=NEGATIVE_CLIP):
    """Validate ``rho`` as a density matrix and return ``(rho, eigenvalues)``.

    Eigenvalues in ``[-clip, 0)`` are set to zero in the returned spectrum.
    """
    rho = as_hermitian(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol_trace:
        raise NormalizationError(f"trace is {tr!r}, expected 1 within {tol_trace:.0e}")
    w = hermitian_eigenvalues(rho)
    if w[0] < -clip:
        raise PositivityError(f"negative eigenvalue {w[0]:.3e} below -{clip:.0e}")
    return rho, np.where(w < 0.0, 0.0, w)


def entropy_from_eigenvalues(w):
    w = np.asarray(w, dtype=float)
    w = w[w > 0.0]
    return float(max(-np.sum(w * np.log2(w)), 0.0))


def von_neumann_entropy(rho):
    """Von Neumann entropy in bits, ``0 log 0 = 0``."""
    _, w = check_density_matrix(rho)
    return entropy_from_eigenvalues(w)


def binary_entropy(p):
    """``h(p) = -p log2 p - (1-p) log2(1-p)``, vectorised, endpoints give 0."""
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    q = 1.0 - p
    with np.errstate(divide="ignore", invalid="ignore"):
        out = -np.where(p > 0, p * np.log2(p), 0.0) - np.where(q > 0, q * np.log2(q), 0.0)
    out = out + 0.0  # no negative zero
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class BlochForm:
    """Pauli expansion of a two-qubit state.

    rho = (I + x.sigma (x) I + I (x) y.sigma + sum_ij T_ij sigma_i (x) sigma_j) / 4
    """

    x: np.ndarray
    y: np.ndarray
    T: np.ndarray

    def reconstruct(self):
        rho = kron_product(IDENTITY2, IDENTITY2)
        for i in range(3):
            rho = rho + self.x[i] * np.kron(PAULI[i], IDENTITY2)
            rho = rho + self.y[i] * np.kron(IDENTITY2, PAULI[i])
            for j in range(3):
                rho = rho + self.T[i, j] * np.kron(PAULI[i], PAULI[j])
        return rho / 4.0


def bloch_decompose(rho):
    rho = as_hermitian(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"Bloch decomposition needs a 4x4 matrix, got {rho.shape}")
    x = np.array([np.trace(rho @ np.kron(s, IDENTITY2)).real for s in PAULI])
    y = np.array([np.trace(rho @ np.kron(IDENTITY2, s)).real for s in PAULI])
    T = np.array([[np.trace(rho @ np.kron(si, sj)).real for sj in PAULI] for si in PAULI])
    return BlochForm(x, y, T)
