"""Liouville forms of the standard trisection of the projective plane.

In the affine chart of sector lam with polar coordinates (r_lam, th_lam,
r_next, th_next),

    alpha_lam = (2 r_lam^2 dth_lam + 2 r_next^2 dth_next) / (1 + r_lam^2 + r_next^2).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..verdict import InputError
from .forms import DEFAULT_ORDER, Axis, FormField, GridChart, exterior_derivative, wedge


@dataclass(frozen=True)
class PositivityReport:
    margin: float
    argmin: dict[str, float]
    residuals: dict[str, float] = field(default_factory=dict)
    where: dict[str, dict[str, float]] = field(default_factory=dict)


def _next(lam: int) -> int:
    if lam not in (1, 2, 3):
        raise InputError(f"sector must be 1, 2 or 3, got {lam}")
    return lam % 3 + 1


def _value(chart: GridChart, coords: dict, name: str) -> np.ndarray:
    if name not in coords:
        raise InputError(f"chart does not name coordinate {name!r} (as an axis or a fixed value)")
    return coords[name]


def fs_liouville(lam: int, chart: GridChart) -> FormField:
    """alpha_lam pulled back to the chart; angle coordinates that are fixed drop out."""
    nxt = _next(lam)
    c = chart.coords()
    r1 = _value(chart, c, f"r{lam}")
    r2 = _value(chart, c, f"r{nxt}")
    den = 1.0 + r1 ** 2 + r2 ** 2
    parts = {}
    for r, th in ((r1, f"th{lam}"), (r2, f"th{nxt}")):
        if chart.has(th):
            parts[th] = 2.0 * r ** 2 / den
        elif th not in chart.fixed:
            raise InputError(f"chart does not name coordinate {th!r}")
    return FormField.from_functions(chart, 1, parts)


def alpha3_in_chart1(chart: GridChart) -> FormField:
    """alpha_3 written in the chart-1 coordinates (r1, th1, r2, th2).

    The chart change z3 = 1/z2, z1' = z1/z2 gives s1 = r1/r2, psi1 = th1 - th2,
    s3 = 1/r2, psi3 = -th2, and alpha_3 = (2 s3^2 dpsi3 + 2 s1^2 dpsi1) / (1 + s3^2 + s1^2).
    """
    c = chart.coords()
    r1, r2 = _value(chart, c, "r1"), _value(chart, c, "r2")
    s1, s3 = r1 / r2, 1.0 / r2
    den = 1.0 + s3 ** 2 + s1 ** 2
    a_psi3 = 2.0 * s3 ** 2 / den
    a_psi1 = 2.0 * s1 ** 2 / den
    parts = {}
    # dpsi1 = dth1 - dth2, dpsi3 = -dth2
    if chart.has("th1"):
        parts["th1"] = a_psi1
    if chart.has("th2"):
        parts["th2"] = -a_psi1 - a_psi3
    return FormField.from_functions(chart, 1, parts)


def h1_torus_chart(resolution: int) -> GridChart:
    """|z2| = 1, |z1| <= 1 in chart 1: coordinates (r1, th1, th2) with r2 = 1."""
    return GridChart((Axis("r1", resolution, 0.0, 1.0), Axis("th1", resolution, 0.0, 2 * np.pi, True),
                      Axis("th2", resolution, 0.0, 2 * np.pi, True)), {"r2": 1.0})


def _dalpha1_closed(chart: GridChart) -> FormField:
    r1 = chart.coords()["r1"]
    den2 = (2.0 + r1 ** 2) ** 2
    return FormField.from_functions(chart, 2, {("r1", "th1"): 8.0 * r1 / den2,
                                               ("r1", "th2"): -4.0 * r1 / den2})


def _argmax(arr: np.ndarray, chart: GridChart) -> dict[str, float]:
    return chart.point(np.unravel_index(int(np.argmax(arr)), arr.shape))


def fs_residuals(resolution: int, order: int = DEFAULT_ORDER) -> dict[str, float]:
    chart = h1_torus_chart(resolution)
    beta = fs_liouville(1, chart) - alpha3_in_chart1(chart)
    target = FormField.from_functions(chart, 1, {"th2": 2.0})
    diff = beta - target
    dnum = exterior_derivative(fs_liouville(1, chart), order) - _dalpha1_closed(chart)
    d13 = exterior_derivative(fs_liouville(1, chart), order) - exterior_derivative(alpha3_in_chart1(chart), order)
    return {"beta1": diff.max_abs(), "dalpha1": dnum.max_abs(), "dalpha1_vs_dalpha3": d13.max_abs()}


def smoothed_boundary_chart(resolution: int) -> GridChart:
    return GridChart((Axis("s", resolution, 0.0, 1.0), Axis("th1", resolution, 0.0, 2 * np.pi, True),
                      Axis("th2", resolution, 0.0, 2 * np.pi, True)))


def smoothed_profile(s: np.ndarray, p: int = 8) -> tuple[np.ndarray, np.ndarray]:
    """Superellipse R1^p + R2^p = 1 from (0, 1) to (1, 0), in polar form."""
    phi = 0.5 * np.pi * s
    rho = (np.sin(phi) ** p + np.cos(phi) ** p) ** (-1.0 / p)
    return rho * np.sin(phi), rho * np.cos(phi)


def boundary_contact_margin(resolution: int, core: float = 0.05, order: int = DEFAULT_ORDER) -> PositivityReport:
    """min of alpha_1 ^ d alpha_1 on the smoothed boundary of the sector polydisk.

    Points with R1 or R2 below ``core`` are left out: there the polar chart
    degenerates and the coefficient vanishes for coordinate reasons.
    """
    chart = smoothed_boundary_chart(resolution)
    s = chart.coords()["s"]
    r1, r2 = smoothed_profile(s)
    den = 1.0 + r1 ** 2 + r2 ** 2
    alpha = FormField.from_functions(chart, 1, {"th1": 2.0 * r1 ** 2 / den, "th2": 2.0 * r2 ** 2 / den})
    vol = wedge(alpha, exterior_derivative(alpha, order)).top()
    mask = (r1 >= core) & (r2 >= core)
    vals = np.where(mask, vol, np.inf)
    k = np.unravel_index(int(np.argmin(vals)), vals.shape)
    return PositivityReport(float(vals[k]), chart.point(k))


def verify_fs_identities(resolution: int = 64, order: int = DEFAULT_ORDER) -> PositivityReport:
    """(a) (alpha1 - alpha3) - 2 dth2 on the torus |z2| = 1; (b) contact margin on the smoothed boundary."""
    if resolution < 16:
        raise InputError("resolution must be at least 16")
    res = fs_residuals(resolution, order)
    chart = h1_torus_chart(resolution)
    beta = fs_liouville(1, chart) - alpha3_in_chart1(chart)
    err = np.abs(beta.component((2,)) - 2.0) + np.abs(beta.component((1,)))
    report = boundary_contact_margin(resolution, order=order)
    return PositivityReport(report.margin, report.argmin, res, {"beta1": _argmax(err, chart)})


def convergence_ratio(resolution: int = 32, order: int = 4) -> float:
    """Shrink factor of the d alpha_1 stencil error when the resolution doubles."""
    coarse = fs_residuals(resolution, order)["dalpha1"]
    fine = fs_residuals(2 * resolution, order)["dalpha1"]
    return coarse / fine
