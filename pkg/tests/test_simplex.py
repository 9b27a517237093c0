import numpy as np
import pytest

from nmxstate.simplex import nelder_mead


def rosenbrock(x):
    return (1 - x[0]) ** 2 + 100 * (x[1] - x[0] ** 2) ** 2


def test_quadratic_bowl():
    res = nelder_mead(lambda x: float(np.sum((x - [0.3, -1.2]) ** 2)), [0, 0], 0.5, tol=1e-14, max_iter=500)
    assert res.converged
    assert np.allclose(res.x, [0.3, -1.2], atol=1e-6)


def test_rosenbrock():
    res = nelder_mead(rosenbrock, [-1.2, 1.0], 0.1, tol=1e-16, max_iter=2000)
    assert res.converged
    assert np.allclose(res.x, [1, 1], atol=1e-4)


def test_not_converged_reports_best():
    res = nelder_mead(rosenbrock, [-1.2, 1.0], 0.1, tol=1e-16, max_iter=3)
    assert not res.converged
    assert res.fun <= rosenbrock([-1.2, 1.0])
    assert res.iterations == 3


def test_one_dimensional():
    res = nelder_mead(lambda x: float((x[0] - 2) ** 2), [0.0], 1.0, tol=1e-14)
    assert res.x[0] == pytest.approx(2, abs=1e-6)


def test_deterministic():
    a = nelder_mead(rosenbrock, [0.0, 0.0], 0.2, max_iter=100)
    b = nelder_mead(rosenbrock, [0.0, 0.0], 0.2, max_iter=100)
    assert np.array_equal(a.x, b.x) and a.fun == b.fun and a.evaluations == b.evaluations


def test_never_worse_than_start():
    f = lambda x: float(np.cos(3 * x[0]) + np.sin(2 * x[1]))  # noqa: E731
    res = nelder_mead(f, [0.4, 0.1], 0.3)
    assert res.fun <= f([0.4, 0.1])
