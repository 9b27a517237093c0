"""Deterministic Nelder-Mead simplex minimisation.

Standard coefficients (reflect 1, expand 2, contract 1/2, shrink 1/2). The
run is considered converged once the spread of function values across the
simplex vertices is at most ``tol``.
"""

from dataclasses import dataclass

import numpy as np


@dataclass
class SimplexResult:
    x: np.ndarray
    fun: float
    iterations: int
    evaluations: int
    converged: bool


def nelder_mead(f, x0, step, tol=1e-9, max_iter=200):
    """Minimise ``f`` starting from the simplex ``x0, x0 + step_i e_i``."""
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    step = np.broadcast_to(np.asarray(step, dtype=float), (n,))
    pts = np.vstack([x0] + [x0 + step[i] * np.eye(n)[i] for i in range(n)])
    vals = np.array([f(p) for p in pts])
    nfev = n + 1

    for it in range(max_iter + 1):
        order = np.argsort(vals, kind="stable")
        pts, vals = pts[order], vals[order]
        if vals[-1] - vals[0] <= tol:
            return SimplexResult(pts[0].copy(), float(vals[0]), it, nfev, True)
        if it == max_iter:
            break

        centroid = pts[:-1].mean(axis=0)
        worst = pts[-1]
        xr = centroid + (centroid - worst)
        fr = f(xr)
        nfev += 1
        if fr < vals[0]:
            xe = centroid + 2.0 * (centroid - worst)
            fe = f(xe)
            nfev += 1
            if fe < fr:
                pts[-1], vals[-1] = xe, fe
            else:
                pts[-1], vals[-1] = xr, fr
            continue
        if fr < vals[-2]:
            pts[-1], vals[-1] = xr, fr
            continue

        if fr < vals[-1]:
            xc = centroid + 0.5 * (xr - centroid)
        else:
            xc = centroid + 0.5 * (worst - centroid)
        fc = f(xc)
        nfev += 1
        if fc < min(fr, vals[-1]):
            pts[-1], vals[-1] = xc, fc
            continue

        pts[1:] = pts[0] + 0.5 * (pts[1:] - pts[0])
        vals[1:] = [f(p) for p in pts[1:]]
        nfev += n

    return SimplexResult(pts[0].copy(), float(vals[0]), max_iter, nfev, False)
