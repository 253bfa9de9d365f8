"""Ready-made grafting inputs."""

from __future__ import annotations

import numpy as np

from .forms import Axis, FormField, GridChart
from .graft import GraftInputs, SingularPoint

COLLAR = 0.25


def collar_chart(n: int = 64, xy_periodic: bool = True, box: tuple[float, float] = (0.0, 1.0),
                 nt: int | None = None) -> GridChart:
    lo, hi = box
    return GridChart((Axis("x", n, lo, hi, xy_periodic), Axis("y", n, lo, hi, xy_periodic),
                      Axis("t", nt or n, -1.0 - COLLAR, 1.0 + COLLAR)))


def dxdy_inputs(n: int = 64) -> GraftInputs:
    """beta_1 = dx, beta_2 = dy on T^2 with collars mu_1 = -t dy, mu_2 = t dx."""
    ch = collar_chart(n)
    return GraftInputs(
        beta1=FormField.from_functions(ch, 1, {"x": 1.0}),
        beta2=FormField.from_functions(ch, 1, {"y": 1.0}),
        mu1=FormField.from_functions(ch, 1, {"y": lambda c: -c["t"]}),
        mu2=FormField.from_functions(ch, 1, {"x": lambda c: c["t"]}),
    )


def saddle_inputs(n: int = 65, band: float = 0.9) -> GraftInputs:
    """beta_1 = d(x^2 - y^2), beta_2 = d(2xy) on a box around their common zero.

    Use an odd n so the origin is a grid point; the region is |t| <= band.
    """
    ch = collar_chart(n, xy_periodic=False, box=(-1.0, 1.0))
    t = ch.coords()["t"]
    return GraftInputs(
        beta1=FormField.from_functions(ch, 1, {"x": lambda c: 2 * c["x"], "y": lambda c: -2 * c["y"]}),
        beta2=FormField.from_functions(ch, 1, {"x": lambda c: 2 * c["y"], "y": lambda c: 2 * c["x"]}),
        singular=(SingularPoint(0.0, 0.0, 1),),
        region=np.abs(t) <= band,
    )


def standard_contact(chart: GridChart) -> FormField:
    """dt + x dy - y dx."""
    return FormField.from_functions(chart, 1, {"t": 1.0, "y": lambda c: c["x"], "x": lambda c: -c["y"]})
