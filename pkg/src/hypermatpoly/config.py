"""Default tolerances and parameter grids.

Every analysis function takes its tolerances as keyword arguments; the values
here are only the defaults.  ``Tolerances`` bundles them for callers (the CLI,
the experiment scripts) that want to pass one object around.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

#: Real affine-combination parameters probed when a property must hold for
#: every real alpha.  Deliberately reaches far outside [0, 1].
DEFAULT_ALPHA_GRID: tuple[float, ...] = (
    -10.0, -3.0, -1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 3.0, 10.0,
)

#: Shift parameters for the derivative pencil L + tL'.
DEFAULT_T_GRID: tuple[float, ...] = (-5.0, -1.0, 0.0, 1.0, 5.0)


def unit_circle_directions(count: int = 16) -> tuple[tuple[float, float], ...]:
    """``count`` equally spaced (alpha, beta) directions on the unit circle.

    Components within 1e-15 of zero are snapped to exactly zero so that the
    difference direction (1, -1) really cancels leading coefficients.
    """
    out = []
    for k in range(count):
        theta = 2.0 * np.pi * k / count
        a, b = np.cos(theta), np.sin(theta)
        a = 0.0 if abs(a) < 1e-15 else float(a)
        b = 0.0 if abs(b) < 1e-15 else float(b)
        if abs(abs(a) - abs(b)) < 1e-15:
            b = float(np.copysign(abs(a), b))
        out.append((a, b))
    return tuple(out)


@dataclass(frozen=True)
class Tolerances:
    root: float = 1e-8  # |Im z| <= root * (1 + |z|) counts as real
    simple: float = 1e-7  # roots closer than simple * (1 + |z|) are multiple
    residue: float = 1e-10  # |c_j| below this is a degenerate residue
    coprime: float = 1e-10  # Euclidean remainder cutoff, relative
    coincidence: float = 1e-7
    pd_margin: float = 1e-7
    eq_tol: float = 1e-8
    zone: float = 1e-6
    horn: float = 1e-8

    def as_dict(self) -> dict[str, float]:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()
