"""The two-oscillator X-state as a function of the injected noise energy.

Two independent oscillators, each driven by its own stochastic reservoir and
prepared in (|01> + |10>)/sqrt(2), end up (after noise averaging) in an X-shaped
density matrix whose entries depend only on the energy ``epsilon`` each
reservoir has pumped in.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .exceptions import DomainError

EPSILON_MAX = 1e6
STATE_TOL = 1e-12


@dataclass(frozen=True)
class XState:
    """Two-qubit X-state in the basis |00>, |01>, |10>, |11>.

    ``z`` is the |01><10| coherence and ``w`` the |00><11| coherence.
    """

    a: float
    b: float
    c: float
    d: float
    z: float = 0.0
    w: float = 0.0
    normalized: bool = True

    @property
    def trace(self):
        return self.a + self.b + self.c + self.d

    def to_dense(self):
        return to_dense(self)


@dataclass(frozen=True)
class EvalPoint:
    omega: float
    t: float
    epsilon: float

    # NaN epsilon is allowed: sweeps use it to mark a failed evaluation.
    def __post_init__(self):
        if not self.omega > 0:
            raise DomainError(f"omega must be positive, got {self.omega}")
        if not self.t >= 0:
            raise DomainError(f"t must be nonnegative, got {self.t}")
        if self.epsilon < 0:
            raise DomainError(f"epsilon must be nonnegative, got {self.epsilon}")


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def _check_epsilon(epsilon):
    epsilon = float(epsilon)
    if not math.isfinite(epsilon) or epsilon < 0:
        raise DomainError(f"epsilon must be finite and nonnegative, got {epsilon}")
    if epsilon > EPSILON_MAX:
        raise DomainError(f"epsilon {epsilon} exceeds the supported range (<= {EPSILON_MAX:g})")
    return epsilon


def rho_unnormalized(epsilon):
    """Raw matrix entries, before dividing by the trace."""
    e = _check_epsilon(epsilon)
    p = 1.0 + e
    a = e / p**3
    b = (0.5 + e * e) / p**4
    z = 0.5 / p**4
    d = e * (1.0 + e * e) / p**5
    return XState(a, b, b, d, z=z, w=0.0, normalized=False)


def trace_unnormalized(epsilon):
    """Closed-form trace of :func:`rho_unnormalized`."""
    e = _check_epsilon(epsilon)
    return e / (1 + e) ** 3 + (1 + 2 * e * e) / (1 + e) ** 4 + e * (1 + e * e) / (1 + e) ** 5


def rho_normalized(epsilon):
    s = rho_unnormalized(epsilon)
    tr = s.a + s.b + s.c + s.d
    return XState(s.a / tr, s.b / tr, s.c / tr, s.d / tr, z=s.z / tr, w=s.w / tr, normalized=True)


def bell_initial():
    """(|01> + |10>)(<01| + <10|) / 2."""
    return XState(0.0, 0.5, 0.5, 0.0, z=0.5, w=0.0, normalized=True)


def validate_state(s, tol=STATE_TOL):
    report = ValidationReport()
    for name in "abcd":
        value = getattr(s, name)
        if not value >= -tol:
            report.violations.append(f"nonnegativity: {name} = {value!r} < 0")
    bound_z = math.sqrt(max(s.b * s.c, 0.0))
    if abs(s.z) > bound_z + tol:
        report.violations.append(f"block positivity: |z| = {abs(s.z)!r} > sqrt(b c) = {bound_z!r}")
    bound_w = math.sqrt(max(s.a * s.d, 0.0))
    if abs(s.w) > bound_w + tol:
        report.violations.append(f"block positivity: |w| = {abs(s.w)!r} > sqrt(a d) = {bound_w!r}")
    if s.normalized and abs(s.trace - 1.0) > tol:
        report.violations.append(f"trace: {s.trace!r} != 1 for a state flagged normalized")
    return report


def to_dense(s):
    rho = np.diag([s.a, s.b, s.c, s.d]).astype(complex)
    rho[1, 2] = s.z
    rho[2, 1] = np.conj(s.z)
    rho[0, 3] = s.w
    rho[3, 0] = np.conj(s.w)
    return rho


def from_dense(rho, tol=STATE_TOL):
    """Read an X-shaped 4x4 matrix back into an :class:`XState`.

    Coherences must be real; anything outside the X pattern raises.
    """
    rho = np.asarray(rho, dtype=complex)
    mask = np.ones((4, 4), dtype=bool)
    mask[np.diag_indices(4)] = False
    mask[1, 2] = mask[2, 1] = mask[0, 3] = mask[3, 0] = False
    if rho.shape != (4, 4) or np.max(np.abs(rho[mask])) > tol:
        raise DomainError("matrix is not X-shaped")
    if abs(rho[1, 2].imag) > tol or abs(rho[0, 3].imag) > tol:
        raise DomainError("X-state coherences must be real")
    a, b, c, d = np.diag(rho).real
    tr = a + b + c + d
    return XState(a, b, c, d, z=rho[1, 2].real, w=rho[0, 3].real,
                  normalized=abs(tr - 1.0) <= tol)
