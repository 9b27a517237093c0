"""Reservoir autocorrelation models and the injected energy epsilon(t).

For a stationary kernel C the noise-averaged energy pumped into an oscillator
of frequency omega is

    epsilon(t) = int_0^t int_0^t exp(i omega (t1 - t2)) C(t1 - t2) dt1 dt2
               = int_0^t 2 (t - u) Re[exp(i omega u) C(u)] du.

White noise, C(u) = gamma delta(u), gives epsilon = gamma t. The exponential
(Ornstein-Uhlenbeck) kernel C(u) = (gamma lam / 2) exp(-lam |u|) integrates to
gamma for every lam and tends to the white kernel as lam -> infinity.
"""

from dataclasses import dataclass
import math

import numpy as np

from .exceptions import DomainError, NumericalError, UnsupportedOperationError
from .state import EvalPoint

WHITE = "white"
EXPONENTIAL = "exponential"

GAUSS3_NODES = np.array([-math.sqrt(3.0 / 5.0), 0.0, math.sqrt(3.0 / 5.0)])
GAUSS3_WEIGHTS = np.array([5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0])

DEFAULT_PANELS = 64
SERIES_AGREEMENT_RTOL = 1e-6


@dataclass(frozen=True)
class NoiseKernel:
    kind: str
    gamma: float
    lam: float = math.inf

    def __post_init__(self):
        if self.kind not in (WHITE, EXPONENTIAL):
            raise DomainError(f"unknown kernel kind {self.kind!r}")
        if not self.gamma > 0:
            raise DomainError(f"gamma must be positive, got {self.gamma}")
        if self.kind == EXPONENTIAL and not (self.lam > 0 and math.isfinite(self.lam)):
            raise DomainError(f"exponential kernel needs finite lam > 0, got {self.lam}")

    @classmethod
    def white(cls, gamma):
        return cls(WHITE, gamma)

    @classmethod
    def exponential(cls, gamma, lam):
        return cls(EXPONENTIAL, gamma, lam)


@dataclass(frozen=True)
class QuadratureConfig:
    panels: int = DEFAULT_PANELS
    points_per_panel: int = 3

    def __post_init__(self):
        if int(self.panels) != self.panels or self.panels < 1:
            raise DomainError(f"panels must be a positive integer, got {self.panels}")
        if self.points_per_panel != 3:
            raise DomainError("only the 3-point Gauss rule is supported")


def kernel_autocorrelation(kernel, delta):
    if kernel.kind == WHITE:
        raise UnsupportedOperationError(
            "the white kernel is a delta function and cannot be evaluated pointwise"
        )
    delta = np.asarray(delta, dtype=float)
    out = 0.5 * kernel.gamma * kernel.lam * np.exp(-kernel.lam * np.abs(delta))
    return out if out.ndim else float(out)


def gauss3_integrate(f, a, b, panels=1):
    """Composite 3-point Gauss-Legendre rule on ``panels`` equal subintervals.

    ``f`` is called once with the array of all nodes and must be vectorised.
    """
    if b < a:
        raise DomainError(f"integration bounds reversed: {a} > {b}")
    if panels < 1:
        raise DomainError(f"panels must be >= 1, got {panels}")
    if a == b:
        return 0.0
    edges = np.linspace(a, b, int(panels) + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    nodes = mid[:, None] + half[:, None] * GAUSS3_NODES[None, :]
    values = np.asarray(f(nodes), dtype=float)
    return float(np.sum(half * (values @ GAUSS3_WEIGHTS)))


def _check_time(t):
    t = float(t)
    if not t >= 0 or not math.isfinite(t):
        raise DomainError(f"time must be finite and nonnegative, got {t}")
    return t


def epsilon_at(kernel, omega, t, quadrature=None):
    """Injected energy by composite Gauss-3 quadrature (white noise: gamma t)."""
    t = _check_time(t)
    if kernel.kind == WHITE:
        return kernel.gamma * t
    if t == 0.0:
        return 0.0
    q = quadrature or QuadratureConfig()
    g, lam = kernel.gamma, kernel.lam

    def integrand(u):
        return g * lam * (t - u) * np.exp(-lam * u) * np.cos(omega * u)

    return gauss3_integrate(integrand, 0.0, t, q.panels)


def _exp_minus_linear(x):
    """exp(x) - 1 - x without cancellation for small complex x."""
    if abs(x) < 0.1:
        term = x * x / 2.0
        total = term
        k = 2
        while abs(term) > 1e-18 * abs(total):
            k += 1
            term = term * x / k
            total += term
        return total
    return np.expm1(x) - x


def epsilon_closed_form(kernel, omega, t):
    """Exact epsilon(t) for the white and exponential kernels.

    int_0^t (t - u) exp(s u) du = (exp(s t) - 1 - s t) / s^2 with s = i omega - lam.
    """
    t = _check_time(t)
    if kernel.kind == WHITE:
        return kernel.gamma * t
    s = complex(-kernel.lam, omega)
    value = kernel.gamma * kernel.lam * (_exp_minus_linear(s * t) / s**2).real
    return max(value, 0.0)


def epsilon_rate(kernel, omega, t):
    """d epsilon / dt = gamma lam Re[(exp(s t) - 1) / s] for the exponential kernel."""
    t = _check_time(t)
    if kernel.kind == WHITE:
        return kernel.gamma
    s = complex(-kernel.lam, omega)
    return kernel.gamma * kernel.lam * (np.expm1(s * t) / s).real


def epsilon_series(kernel, omega, t_grid, quadrature=None, verify=False):
    """One :class:`EvalPoint` per grid time.

    With ``verify=True`` each quadrature value is checked against the closed
    form and a :class:`NumericalError` is raised on disagreement.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or t_grid.size == 0:
        raise DomainError("t_grid must be a non-empty 1-D sequence")
    if t_grid[0] < 0 or np.any(np.diff(t_grid) <= 0):
        raise DomainError("t_grid must be strictly increasing and start at t >= 0")
    points = []
    for t in t_grid:
        eps = epsilon_at(kernel, omega, t, quadrature)
        if verify:
            ref = epsilon_closed_form(kernel, omega, t)
            if abs(eps - ref) > SERIES_AGREEMENT_RTOL * max(abs(ref), 1e-12):
                raise NumericalError(
                    f"quadrature {eps!r} and closed form {ref!r} disagree at t={t}"
                )
        points.append(EvalPoint(float(omega), float(t), max(eps, 0.0)))
    return points
