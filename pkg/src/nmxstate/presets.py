"""Packaged sweep presets, one per noise regime (white, partial, colored).

Rates in the preset files are multiples of omega when
``kernel.scale_with_omega`` is true, which makes epsilon a function of
omega * t alone.
"""

from importlib import resources
import json

from .exceptions import ConfigError
from .noise import NoiseKernel

PRESET_NAMES = ("white", "partial", "colored")

# figure number -> (preset, measure shown)
FIGURES = {
    2: ("white", "log_negativity"),
    3: ("partial", "log_negativity"),
    4: ("colored", "log_negativity"),
    5: ("white", "discord"),
    6: ("partial", "discord"),
    7: ("colored", "discord"),
    8: ("white", "geometric_discord"),
    9: ("partial", "geometric_discord"),
    10: ("colored", "geometric_discord"),
    11: ("white", "negativity"),
    12: ("partial", "negativity"),
    13: ("colored", "negativity"),
}


def load_preset(name):
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    text = resources.files(__package__).joinpath("presets", f"{name}.json").read_text()
    return json.loads(text)


def preset_for_figure(number):
    try:
        return FIGURES[int(number)][0]
    except (KeyError, ValueError):
        raise ConfigError(f"no preset for figure {number!r}; figures 2-13 are available") from None


def kernel_from_spec(spec, omega):
    """Build a :class:`NoiseKernel` from a preset/config ``kernel`` block."""
    kind = spec.get("kind", "white")
    scale = omega if spec.get("scale_with_omega", False) else 1.0
    try:
        gamma = float(spec["gamma"]) * scale
        if kind == "white":
            return NoiseKernel.white(gamma)
        return NoiseKernel.exponential(gamma, float(spec["lambda"]) * scale)
    except KeyError as exc:
        raise ConfigError(f"kernel block is missing {exc.args[0]!r}") from None


def regime_kernel(name, omega):
    return kernel_from_spec(load_preset(name)["kernel"], omega)
