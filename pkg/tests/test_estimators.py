import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from nmxstate.estimators import CorrelationMeasures, InjectedEnergy
from nmxstate.measures import MEASURE_NAMES, measure_all
from nmxstate.noise import epsilon_closed_form
from nmxstate.presets import regime_kernel
from nmxstate.state import rho_normalized


def test_white_energy():
    X = np.array([[1.0, 0.0], [1.0, 5.0], [2.0, 5.0]])
    eps = InjectedEnergy("white").fit_transform(X)
    assert eps.shape == (3, 1)
    assert eps.ravel() == pytest.approx([0.0, 0.5, 1.0])


def test_colored_energy_matches_closed_form():
    X = np.array([[1.0, 3.0], [1.5, 2.0]])
    eps = InjectedEnergy("colored").fit_transform(X).ravel()
    for (omega, t), e in zip(X, eps):
        assert e == pytest.approx(epsilon_closed_form(regime_kernel("colored", omega), omega, t), rel=1e-6)


def test_overrides():
    est = InjectedEnergy("white", gamma=0.2)
    assert est.fit_transform([[1.0, 1.0]])[0, 0] == pytest.approx(0.2)


def test_params_and_clone():
    est = InjectedEnergy("partial", lam=2.0, panels=32)
    assert est.get_params() == {"regime": "partial", "gamma": None, "lam": 2.0, "panels": 32}
    assert clone(est).get_params() == est.get_params()
    est.set_params(regime="colored")
    assert est.regime == "colored"


def test_not_fitted():
    with pytest.raises(NotFittedError):
        InjectedEnergy().transform([[1.0, 1.0]])
    with pytest.raises(NotFittedError):
        CorrelationMeasures().transform([[0.1]])


def test_bad_inputs():
    with pytest.raises(ValueError):
        InjectedEnergy("pink").fit([[1.0, 1.0]])
    with pytest.raises(ValueError):
        InjectedEnergy().fit([[1.0, 1.0, 1.0]])
    with pytest.raises(ValueError):
        CorrelationMeasures().fit([[0.1, 0.2]])


def test_measures_columns():
    est = CorrelationMeasures(theta_grid=16, phi_grid=32).fit([[0.0]])
    out = est.transform([[0.0], [0.2]])
    assert out.shape == (2, 6)
    assert out[0] == pytest.approx([1, 1, 0.5, 1, 1, 0.5], abs=1e-9)
    assert out[1] == pytest.approx(measure_all(rho_normalized(0.2)).as_tuple(), abs=1e-8)
    assert list(est.get_feature_names_out()) == list(MEASURE_NAMES)


def test_parallel_matches_serial():
    X = np.linspace(0, 2, 6).reshape(-1, 1)
    serial = CorrelationMeasures(theta_grid=16, phi_grid=32).fit_transform(X)
    parallel = CorrelationMeasures(theta_grid=16, phi_grid=32, n_jobs=2).fit_transform(X)
    assert np.array_equal(serial, parallel)


def test_pipeline():
    pipe = make_pipeline(InjectedEnergy("white"), CorrelationMeasures(theta_grid=16, phi_grid=32))
    out = pipe.fit_transform([[1.0, 0.0], [1.0, 10.0]])
    assert out.shape == (2, 6)
    assert out[1, 0] == 0 and out[1, 4] > 0
    assert pipe.get_params()["injectedenergy__regime"] == "white"
