"""Quantum-correlation measures for two-qubit states.

Each measure has a generic route working on a dense 4x4 density matrix. For
X-states the entanglement measures also have closed forms; both routes are
kept so that they can be checked against each other.
"""

from dataclasses import astuple, dataclass, fields
import logging
import math

import numpy as np

from . import linalg
from .exceptions import ConvergenceError, DomainError, NumericalError, StateError
from .simplex import nelder_mead
from .state import XState, to_dense, validate_state

logger = logging.getLogger(__name__)

SIGMA_YY = np.kron(linalg.PAULI[1], linalg.PAULI[1])
ARA_GUARD = 1e-6
# A PSD partial transpose of a unit-trace matrix has trace norm 1 up to rounding.
TRACE_NORM_ROUNDING = 1e-13
VERIFY_TOL = 1e-9


@dataclass(frozen=True)
class MeasureSet:
    concurrence: float
    eof: float
    negativity: float
    log_negativity: float
    discord: float
    geometric_discord: float

    @classmethod
    def names(cls):
        return tuple(f.name for f in fields(cls))

    def as_tuple(self):
        return astuple(self)


MEASURE_NAMES = MeasureSet.names()


@dataclass(frozen=True)
class DiscordOptimizerConfig:
    """Grid search over measurement directions followed by simplex refinement.

    The polar grid covers [0, pi/2] (directions n and -n give the same
    measurement) including both end points, so sigma_z and sigma_x are always
    sampled. The refinement simplex starts at half a grid cell.
    """

    theta_grid: int = 64
    phi_grid: int = 128
    refine_iters: int = 200
    tol: float = 1e-9

    def __post_init__(self):
        if self.theta_grid < 8 or self.phi_grid < 8:
            raise DomainError("discord grids need at least 8 samples per angle")
        if not self.tol > 0:
            raise DomainError(f"tol must be positive, got {self.tol}")
        if self.refine_iters < 0:
            raise DomainError("refine_iters must be nonnegative")


def _as_density(rho):
    if isinstance(rho, XState):
        if not rho.normalized:
            raise StateError("measures need a normalized state")
        rho = to_dense(rho)
    rho, w = linalg.check_density_matrix(rho)
    if rho.shape != (4, 4):
        raise DomainError(f"two-qubit measures need a 4x4 matrix, got {rho.shape}")
    return rho, w


def _checked_xstate(s):
    if not s.normalized:
        raise StateError("X-state fast paths need a normalized state")
    report = validate_state(s)
    if not report.ok:
        raise StateError("; ".join(report.violations))
    return s


def concurrence(rho):
    """Wootters concurrence from the spectrum of sqrt(rho) rho~ sqrt(rho)."""
    rho, _ = _as_density(rho)
    w, v = linalg.hermitian_eigh(rho)
    sqrt_rho = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    flipped = SIGMA_YY @ rho.conj() @ SIGMA_YY
    m = sqrt_rho @ flipped @ sqrt_rho
    lam = linalg.hermitian_eigenvalues(0.5 * (m + m.conj().T))
    r = np.sqrt(np.clip(lam, 0.0, None))[::-1]
    return float(max(0.0, r[0] - r[1] - r[2] - r[3]))


def concurrence_xstate(s):
    s = _checked_xstate(s)
    return 2.0 * max(0.0, abs(s.z) - math.sqrt(s.a * s.d), abs(s.w) - math.sqrt(s.b * s.c))


def entanglement_of_formation(c):
    c = float(c)
    if not -1e-12 <= c <= 1.0 + 1e-12:
        raise DomainError(f"concurrence must lie in [0, 1], got {c}")
    c = min(max(c, 0.0), 1.0)
    return float(linalg.binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c))))


def negativity(rho):
    """Absolute sum of the negative eigenvalues of the partial transpose on A."""
    rho, _ = _as_density(rho)
    w = linalg.hermitian_eigenvalues(linalg.partial_transpose(rho, (2, 2), "A"))
    return float(-np.sum(w[w < 0.0]))


def negativity_xstate(s):
    # Partial transpose swaps the coherences: z pairs with a, d and w with b, c.
    s = _checked_xstate(s)
    outer = 0.5 * (s.a + s.d) - math.hypot(0.5 * (s.a - s.d), s.z)
    inner = 0.5 * (s.b + s.c) - math.hypot(0.5 * (s.b - s.c), s.w)
    return max(0.0, -outer) + max(0.0, -inner)


def log_negativity(rho, dims=(2, 2), party="A"):
    """log2 of the trace norm of the partial transpose, in bits.

    ``dims``/``party`` default to two qubits transposed on A; larger layouts
    such as rho (x) sigma with parties (A1, B1, A2, B2) pass ``party=(0, 2)``.
    """
    if isinstance(rho, XState):
        rho, _ = _as_density(rho)
    else:
        rho, _ = linalg.check_density_matrix(rho)
    norm = linalg.trace_norm(linalg.partial_transpose(rho, dims, party))
    if norm <= 1.0 + TRACE_NORM_ROUNDING:
        return 0.0
    return math.log2(norm)


def _reduced_entropies(rho):
    sa = linalg.von_neumann_entropy(linalg.partial_trace(rho, (2, 2), "A"))
    sb = linalg.von_neumann_entropy(linalg.partial_trace(rho, (2, 2), "B"))
    return sa, sb


def mutual_information(rho):
    rho, w = _as_density(rho)
    sa, sb = _reduced_entropies(rho)
    return max(0.0, sa + sb - linalg.entropy_from_eigenvalues(w))


def _directions(theta, phi):
    st = np.sin(theta)
    return np.stack([st * np.cos(phi), st * np.sin(phi), np.cos(theta) * np.ones_like(phi)], axis=-1)


def measured_conditional_entropy(bloch, n):
    """Average entropy of B after a projective measurement of A along ``n``.

    ``n`` has shape (..., 3). Outcome k = +/-1 occurs with probability
    (1 + k n.x)/2 and leaves B with Bloch vector (y + k T^T n)/(1 + k n.x).
    """
    n = np.asarray(n, dtype=float)
    nx = n @ bloch.x
    nT = n @ bloch.T
    total = np.zeros(n.shape[:-1])
    for k in (1.0, -1.0):
        weight = 1.0 + k * nx
        length = np.linalg.norm(bloch.y + k * nT, axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.where(weight > 1e-15, length / weight, 0.0)
        r = np.clip(r, 0.0, 1.0)
        total = total + 0.5 * weight * linalg.binary_entropy(0.5 * (1.0 + r))
    return total


def _minimise_conditional_entropy(bloch, cfg):
    theta = np.linspace(0.0, 0.5 * np.pi, cfg.theta_grid)
    phi = 2.0 * np.pi * np.arange(cfg.phi_grid) / cfg.phi_grid
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    values = measured_conditional_entropy(bloch, _directions(tt, pp))
    i, j = np.unravel_index(np.argmin(values), values.shape)
    best_grid = float(values[i, j])
    if cfg.refine_iters == 0:
        return best_grid

    def objective(x):
        return float(measured_conditional_entropy(bloch, _directions(x[0], x[1])))

    step = 0.5 * np.array([theta[1] - theta[0], phi[1] - phi[0]])
    result = nelder_mead(objective, [theta[i], phi[j]], step, tol=cfg.tol, max_iter=cfg.refine_iters)
    best = min(best_grid, result.fun)
    if not result.converged:
        raise ConvergenceError(
            f"discord refinement did not reach tol={cfg.tol:g} in {cfg.refine_iters} iterations",
            best=best,
        )
    return best


def quantum_discord(rho, cfg=None, party="A"):
    """Quantum discord in bits with projective measurements on ``party``.

    D = I(A:B) - J(B|A) = S(rho_A) - S(rho) + min_n sum_k p_k S(rho_B|k)
    when A is measured.
    """
    cfg = cfg or DiscordOptimizerConfig()
    rho, w = _as_density(rho)
    if party == "B":
        rho = linalg.permute_subsystems(rho, (2, 2), [1, 0])
    elif party != "A":
        raise DomainError(f"party must be 'A' or 'B', got {party!r}")
    bloch = linalg.bloch_decompose(rho)
    s_a = float(linalg.binary_entropy(0.5 * (1.0 + min(np.linalg.norm(bloch.x), 1.0))))
    offset = s_a - linalg.entropy_from_eigenvalues(w)
    try:
        cond = _minimise_conditional_entropy(bloch, cfg)
    except ConvergenceError as exc:
        exc.best = max(0.0, offset + exc.best)
        raise
    return max(0.0, offset + cond)


def _h2(p):
    return float(linalg.binary_entropy(p))


def _block_eigenvalues(p, q, coherence):
    mean = 0.5 * (p + q)
    radius = math.hypot(0.5 * (p - q), coherence)
    return mean + radius, mean - radius


def ara_discord_xstate(s):
    """Discord of an X-state minimised over the sigma_z and sigma_x candidates.

    Everything is written in terms of the matrix entries, with no dense
    eigensolve, so it doubles as an independent check of the numeric route.
    """
    s = _checked_xstate(s)
    a, b, c, d = s.a, s.b, s.c, s.d
    spectrum = _block_eigenvalues(a, d, s.w) + _block_eigenvalues(b, c, s.z)
    s_ab = linalg.entropy_from_eigenvalues(np.clip(spectrum, 0.0, None))
    s_a = _h2(a + b)

    def cond(p0, p1):
        tot = p0 + p1
        return tot * _h2(p0 / tot) if tot > 0 else 0.0

    q_z = cond(a, b) + cond(c, d)
    q_x = _h2(0.5 * (1.0 + min(1.0, math.hypot(a + c - b - d, 2.0 * (abs(s.z) + abs(s.w))))))
    return max(0.0, s_a - s_ab + min(q_z, q_x))


def geometric_discord(rho):
    """Hilbert-Schmidt geometric discord, 1/4 (|x|^2 + |T|^2 - lambda_max(x x^T + T T^T)).

    Not rescaled: a maximally entangled state gives 1/2.
    """
    rho, _ = _as_density(rho)
    bloch = linalg.bloch_decompose(rho)
    k = np.outer(bloch.x, bloch.x) + bloch.T @ bloch.T.T
    lam_max = linalg.hermitian_eigenvalues(k)[-1]
    return max(0.0, 0.25 * float(np.trace(k) - lam_max))


def _generic_measures(rho, cfg):
    c = concurrence(rho)
    n = negativity(rho)
    return MeasureSet(
        concurrence=c,
        eof=entanglement_of_formation(c),
        negativity=n,
        log_negativity=log_negativity(rho),
        discord=quantum_discord(rho, cfg),
        geometric_discord=geometric_discord(rho),
    )


def measure_all(state, cfg=None, verify=False):
    """All six measures for one state.

    X-states use the closed forms for concurrence and negativity; dense
    matrices go through the generic routes. ``verify=True`` recomputes the
    generic values for X-states and raises on any disagreement above 1e-9.
    """
    cfg = cfg or DiscordOptimizerConfig()
    if not isinstance(state, XState):
        return _generic_measures(state, cfg)

    s = _checked_xstate(state)
    rho = to_dense(s)
    c = concurrence_xstate(s)
    n = negativity_xstate(s)
    qd = quantum_discord(rho, cfg)
    ara = ara_discord_xstate(s)
    if qd < ara - ARA_GUARD:
        logger.warning("numeric discord %.9g is below the X-state candidate %.9g", qd, ara)
    result = MeasureSet(
        concurrence=c,
        eof=entanglement_of_formation(c),
        negativity=n,
        log_negativity=math.log2(1.0 + 2.0 * n),
        discord=qd,
        geometric_discord=geometric_discord(rho),
    )
    if verify:
        generic = _generic_measures(rho, cfg)
        for name, fast, slow in zip(MEASURE_NAMES, result.as_tuple(), generic.as_tuple()):
            if abs(fast - slow) > VERIFY_TOL:
                raise NumericalError(f"{name}: fast path {fast!r} vs generic {slow!r}")
    return result


def esd_threshold(measure=concurrence, family=None, lo=0.0, hi=1.0, tol=1e-12):
    """Smallest epsilon at which ``measure(family(epsilon))`` reaches zero, by bisection.

    ``family`` defaults to the normalized noisy X-state. The measure must be
    positive at ``lo`` and zero at ``hi``.
    """
    if family is None:
        from .state import rho_normalized as family
    if not measure(family(lo)) > 0 or measure(family(hi)) > 0:
        raise DomainError(f"no sign change of the measure on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if measure(family(mid)) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
