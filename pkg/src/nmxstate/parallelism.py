"""How closely the six measure series track each other."""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .events import detect_transitions
from .exceptions import DomainError
from .measures import MEASURE_NAMES

UNDEFINED = None


@dataclass
class ParallelismReport:
    names: tuple
    correlation: list
    sign_agreement: list
    events: dict = field(default_factory=dict)

    def pairs(self):
        for i, j in combinations(range(len(self.names)), 2):
            yield self.names[i], self.names[j], self.correlation[i][j], self.sign_agreement[i][j]

    def to_dict(self):
        return {
            "measures": list(self.names),
            "pearson": self.correlation,
            "sign_agreement": self.sign_agreement,
            "events": self.events,
        }


def pearson(x, y):
    """Pearson correlation, or ``None`` when either series is constant."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.all(x == x[0]) or np.all(y == y[0]):
        return UNDEFINED
    xc, yc = x - x.mean(), y - y.mean()
    r = float(np.dot(xc, yc) / np.sqrt(np.dot(xc, xc) * np.dot(yc, yc)))
    return min(1.0, max(-1.0, r))


def sign_agreement(x, y):
    """Fraction of steps where both series move in the same direction."""
    dx = np.sign(np.diff(np.asarray(x, dtype=float)))
    dy = np.sign(np.diff(np.asarray(y, dtype=float)))
    return float(np.mean(dx == dy))


def _mean_defined(values):
    defined = [v for v in values if v is not UNDEFINED]
    return float(np.mean(defined)) if defined else UNDEFINED


def parallelism_stats(table, names=MEASURE_NAMES, tol=1e-9):
    """Pairwise statistics computed per omega, then averaged over omega."""
    k = len(names)
    per_omega_r = [[[] for _ in range(k)] for _ in range(k)]
    per_omega_s = [[[] for _ in range(k)] for _ in range(k)]
    omegas = table.omegas()
    for omega in omegas:
        series = [table.column(name, omega) for name in names]
        if len(series[0]) < 3:
            raise DomainError(f"need at least 3 rows per series, omega={omega} has {len(series[0])}")
        ok = np.all([~np.isnan(s) for s in series], axis=0)
        series = [s[ok] for s in series]
        for i, j in combinations(range(k), 2):
            per_omega_r[i][j].append(pearson(series[i], series[j]))
            per_omega_s[i][j].append(sign_agreement(series[i], series[j]))

    corr = [[1.0 if i == j else None for j in range(k)] for i in range(k)]
    agree = [[1.0 if i == j else None for j in range(k)] for i in range(k)]
    for i, j in combinations(range(k), 2):
        corr[i][j] = corr[j][i] = _mean_defined(per_omega_r[i][j])
        agree[i][j] = agree[j][i] = _mean_defined(per_omega_s[i][j])

    events = {name: [] for name in names}
    for ev in detect_transitions(table, tol=tol, measures=names):
        events[ev.measure].append(
            {"kind": ev.kind, "omega": ev.omega, "t": ev.t, "epsilon": ev.epsilon}
        )
    return ParallelismReport(tuple(names), corr, agree, events)
