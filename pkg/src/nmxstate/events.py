"""Sudden death and revival of correlation measures along t."""

from dataclasses import dataclass

import numpy as np

from .measures import MEASURE_NAMES

DEATH = "death"
REVIVAL = "revival"


@dataclass(frozen=True)
class TransitionEvent:
    measure: str
    kind: str
    omega: float
    t: float
    epsilon: float
    bracket: tuple


def _crossing(x, y, i, tol):
    # Linear interpolation of where the measure passes through ``tol``.
    y0, y1 = y[i], y[i + 1]
    frac = 0.0 if y1 == y0 else (y0 - tol) / (y0 - y1)
    return x[i] + min(max(frac, 0.0), 1.0) * (x[i + 1] - x[i]), frac


def series_transitions(t, values, tol=1e-9):
    """Indices and interpolated times of deaths and revivals in one series.

    A death is a step from ``> tol`` to ``<= tol``; a revival is a later
    step back above ``tol``. Rising above ``tol`` without a prior death is
    not an event. NaN rows are skipped.
    """
    t = np.asarray(t, dtype=float)
    values = np.asarray(values, dtype=float)
    keep = ~np.isnan(values)
    idx = np.flatnonzero(keep)
    t, values = t[keep], values[keep]
    out = []
    dead_once = False
    for i in range(len(values) - 1):
        alive, alive_next = values[i] > tol, values[i + 1] > tol
        if alive and not alive_next:
            kind = DEATH
            dead_once = True
        elif not alive and alive_next and dead_once:
            kind = REVIVAL
        else:
            continue
        t_event, frac = _crossing(t, values, i, tol)
        out.append((kind, int(idx[i]), int(idx[i + 1]), float(t_event), float(frac)))
    return out


def detect_transitions(table, tol=1e-9, measures=MEASURE_NAMES):
    """Scan every measure at every omega; events come out sorted by (omega, measure, t)."""
    events = []
    for omega in table.omegas():
        rows = table.series(omega)
        t = np.array([r.point.t for r in rows])
        eps = np.array([r.point.epsilon for r in rows])
        for name in measures:
            values = [getattr(r.measures, name) for r in rows]
            for kind, i, j, t_event, frac in series_transitions(t, values, tol):
                frac = min(max(frac, 0.0), 1.0)
                events.append(
                    TransitionEvent(
                        measure=name,
                        kind=kind,
                        omega=omega,
                        t=t_event,
                        epsilon=float(eps[i] + frac * (eps[j] - eps[i])),
                        bracket=(i, j),
                    )
                )
    return events
