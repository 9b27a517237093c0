"""scikit-learn transformers wrapping the energy model and the measures.

Both transformers are stateless: ``fit`` only validates parameters and
input shape. They compose in a :class:`~sklearn.pipeline.Pipeline`::

    make_pipeline(InjectedEnergy(regime="colored"), CorrelationMeasures())

maps rows of ``(omega, t)`` to the six measure columns.
"""

from joblib import Parallel, delayed
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .measures import MEASURE_NAMES, DiscordOptimizerConfig, measure_all
from .noise import QuadratureConfig, epsilon_at
from .presets import PRESET_NAMES, kernel_from_spec, load_preset
from .state import rho_normalized


class InjectedEnergy(TransformerMixin, BaseEstimator):
    """Map ``(omega, t)`` rows to the injected noise energy epsilon.

    Parameters
    ----------
    regime : {"white", "partial", "colored"}
        Preset supplying the kernel family and default rates.
    gamma, lam : float, optional
        Override the preset's noise power / inverse correlation time, both in
        units of omega.
    panels : int
        Panels of the composite 3-point Gauss rule.
    """

    def __init__(self, regime="white", gamma=None, lam=None, panels=64):
        self.regime = regime
        self.gamma = gamma
        self.lam = lam
        self.panels = panels

    def _kernel_spec(self):
        spec = dict(load_preset(self.regime)["kernel"])
        if self.gamma is not None:
            spec["gamma"] = self.gamma
        if self.lam is not None:
            spec["lambda"] = self.lam
        return spec

    def fit(self, X, y=None):
        if self.regime not in PRESET_NAMES:
            raise ValueError(f"regime must be one of {PRESET_NAMES}, got {self.regime!r}")
        X = check_array(X, dtype=float)
        if X.shape[1] != 2:
            raise ValueError(f"expected 2 columns (omega, t), got {X.shape[1]}")
        self.kernel_spec_ = self._kernel_spec()
        self.quadrature_ = QuadratureConfig(self.panels)
        kernel_from_spec(self.kernel_spec_, 1.0)
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "kernel_spec_")
        X = check_array(X, dtype=float)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} columns, got {X.shape[1]}")
        eps = [
            epsilon_at(kernel_from_spec(self.kernel_spec_, omega), omega, t, self.quadrature_)
            for omega, t in X
        ]
        return np.maximum(np.asarray(eps), 0.0).reshape(-1, 1)

    def get_feature_names_out(self, input_features=None):
        return np.array(["epsilon"], dtype=object)


class CorrelationMeasures(TransformerMixin, BaseEstimator):
    """Map a column of injected energies to the six correlation measures.

    Output columns follow :data:`~nmxstate.measures.MEASURE_NAMES`.
    """

    def __init__(self, theta_grid=64, phi_grid=128, refine_iters=200, tol=1e-9, n_jobs=None):
        self.theta_grid = theta_grid
        self.phi_grid = phi_grid
        self.refine_iters = refine_iters
        self.tol = tol
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        X = check_array(X, dtype=float)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single epsilon column, got {X.shape[1]} columns")
        self.discord_config_ = DiscordOptimizerConfig(
            self.theta_grid, self.phi_grid, self.refine_iters, self.tol
        )
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "discord_config_")
        X = check_array(X, dtype=float)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single epsilon column, got {X.shape[1]} columns")
        cfg = self.discord_config_
        if self.n_jobs in (None, 1):
            rows = [measure_all(rho_normalized(e), cfg).as_tuple() for e in X[:, 0]]
        else:
            rows = Parallel(n_jobs=self.n_jobs)(
                delayed(_measure_row)(e, cfg) for e in X[:, 0]
            )
        return np.array(rows, dtype=float).reshape(-1, len(MEASURE_NAMES))

    def get_feature_names_out(self, input_features=None):
        return np.array(MEASURE_NAMES, dtype=object)


def _measure_row(epsilon, cfg):
    return measure_all(rho_normalized(epsilon), cfg).as_tuple()
