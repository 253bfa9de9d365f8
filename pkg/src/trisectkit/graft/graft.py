"""Grafted contact forms on Sigma x [-1-h, 1+h].

Layout along t: alpha_0 = phi beta_1 + (1 - phi) beta_2 equals beta_2 for
t <= -1 and beta_1 for t >= 1.  The collar terms pair each mu_i with the
end where beta_i lives: eps psi_low mu_2 near t = -1 and eps psi_high mu_1
near t = +1.  At a singular point s of sign sigma the inosculation patch is
delta q(t) sigma psi_s(r) (dt + x dy - y dx) in coordinates centred at s.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from ..verdict import InputError, Verdict
from .forms import DEFAULT_ORDER, FormField, GridChart, exterior_derivative, wedge
from .fubini import PositivityReport


def smoothstep(u: np.ndarray) -> np.ndarray:
    """Quintic step: 0 for u <= 0, 1 for u >= 1, C^2 at both ends."""
    u = np.clip(u, 0.0, 1.0)
    return u ** 3 * (10.0 - 15.0 * u + 6.0 * u ** 2)


@dataclass(frozen=True)
class SingularPoint:
    x: float
    y: float
    sign: int = 1
    sign_mu1: int = 1
    sign_mu2: int = 1


@dataclass(frozen=True)
class GraftConfig:
    eps: float
    delta: float
    eps0: float
    bump_cells: int = 8
    q_flat: float = 0.5
    bump_radius: float | None = None

    def __post_init__(self) -> None:
        if self.eps < 0 or self.delta < 0:
            raise InputError("eps and delta must be nonnegative")
        if not 0 < self.eps0 < 0.5:
            raise InputError("eps0 must lie in (0, 1/2) so the collars stay inside (-1, 1)")
        if not 0 < self.q_flat < 1:
            raise InputError("q must be supported inside (-1, 1)")

    def phi(self, t: np.ndarray) -> np.ndarray:
        return smoothstep((t + 1.0) / 2.0)

    def q(self, t: np.ndarray) -> np.ndarray:
        w = 1.0 - self.q_flat
        return smoothstep((t + 1.0) / w) * smoothstep((1.0 - t) / w)

    def psi_low(self, t: np.ndarray) -> np.ndarray:
        """1 for t <= -1 + eps0, 0 for t >= -1 + 2 eps0."""
        return 1.0 - smoothstep((t + 1.0 - self.eps0) / self.eps0)

    def psi_high(self, t: np.ndarray) -> np.ndarray:
        return self.psi_low(-t)

    def radius(self, chart: GridChart) -> float:
        """Patch radius: fixed once chosen, otherwise bump_cells cells of this chart."""
        if self.bump_radius is not None:
            return self.bump_radius
        return self.bump_cells * min(chart.axes[0].h, chart.axes[1].h)

    def pinned(self, chart: GridChart) -> "GraftConfig":
        return replace(self, bump_radius=self.radius(chart))

    def bump(self, r: np.ndarray, radius: float) -> np.ndarray:
        return 1.0 - smoothstep((r - radius / 2) / (radius / 2))


def _top(a: FormField) -> np.ndarray:
    return a.top()


def contact_margin(alpha: FormField, mask: np.ndarray | None = None, order: int = DEFAULT_ORDER) -> PositivityReport:
    """min over the grid (or mask) of the alpha ^ d alpha coefficient."""
    if alpha.degree != 1 or alpha.chart.dim != 3:
        raise InputError("contact margin needs a 1-form on a 3-chart")
    vol = wedge(alpha, exterior_derivative(alpha, order)).top()
    vals = vol if mask is None else np.where(mask, vol, np.inf)
    k = np.unravel_index(int(np.argmin(vals)), vals.shape)
    return PositivityReport(float(vals[k]), alpha.chart.point(k))


def _dilate(mask: np.ndarray, chart: GridChart) -> np.ndarray:
    out = mask.copy()
    for pos, axis in enumerate(chart.axes):
        for step in (-1, 1):
            shifted = np.roll(mask, step, axis=pos)
            if not axis.periodic:
                edge = [slice(None)] * mask.ndim
                edge[pos] = 0 if step == 1 else -1
                shifted[tuple(edge)] = False
            out |= shifted
    return out


def _pointwise_norm(beta: FormField) -> np.ndarray:
    return np.sqrt(sum(v ** 2 for v in beta.coeffs.values())) if beta.coeffs else np.zeros(beta.chart.shape)


def compatibility_check(beta1: FormField, beta2: FormField, singular: Sequence[SingularPoint] = (),
                        tol: float = 1e-9, zero_tol: float = 1e-6) -> Verdict:
    """beta_1 ^ beta_2 >= -tol, matching zero sets (within a cell) and matching orientations."""
    if beta1.chart != beta2.chart or beta1.chart.dim != 2:
        raise InputError("compatibility is checked on a common 2-chart")
    if beta1.degree != 1 or beta2.degree != 1:
        raise InputError("foliation forms are 1-forms")
    coeff = wedge(beta1, beta2).top()
    chart = beta1.chart
    z1 = _pointwise_norm(beta1) < zero_tol
    z2 = _pointwise_norm(beta2) < zero_tol
    zeros_match = bool(np.all(~z1 | _dilate(z2, chart)) and np.all(~z2 | _dilate(z1, chart)))
    orient = [s for s in singular if s.sign_mu1 != s.sign_mu2]
    away = ~_dilate(z1 | z2, chart)
    strict = float(coeff[away].min()) if away.any() else float("inf")
    lo = float(coeff.min())
    # strictness is reported, not required: the defining condition is >= 0
    witness = {"min_wedge": lo, "zeros_match": zeros_match, "strict_away_from_zeros": strict,
               "strict_positive": strict > tol,
               "orientation_mismatch": [(s.x, s.y) for s in orient]}
    ok = lo >= -tol and zeros_match and not orient
    return Verdict("holds" if ok else "violated", slack=lo + tol, lhs=-tol, rhs=lo, witness=witness)


def _slice(beta: FormField, chart2: GridChart) -> FormField:
    """Restrict a t-independent form on (x, y, t) to the (x, y) chart."""
    k = beta.chart.index("t")
    mid = beta.chart.axes[k].n // 2
    coeffs = {}
    for idx, arr in beta.coeffs.items():
        if k in idx:
            continue
        coeffs[idx] = np.take(arr, mid, axis=k)
    return FormField(beta.degree, coeffs, chart2)


def surface_chart(chart: GridChart) -> GridChart:
    axes = tuple(a for a in chart.axes if a.name != "t")
    return GridChart(axes, dict(chart.fixed))


@dataclass(frozen=True, eq=False)
class GraftInputs:
    beta1: FormField
    beta2: FormField
    mu1: FormField | None = None
    mu2: FormField | None = None
    singular: tuple[SingularPoint, ...] = ()
    region: np.ndarray | None = None

    @property
    def chart(self) -> GridChart:
        return self.beta1.chart


def _check_chart(chart: GridChart) -> None:
    names = [a.name for a in chart.axes]
    if names != ["x", "y", "t"]:
        raise InputError("grafting charts have axes (x, y, t) in this order")
    t = chart.axes[2]
    if not (t.lo < -1 and t.hi > 1) or t.periodic:
        raise InputError("the t axis must be non-periodic and cover [-1, 1] with collars")


def grafted_form(inp: GraftInputs, cfg: GraftConfig, check: bool = True) -> FormField:
    chart = inp.chart
    _check_chart(chart)
    c = chart.coords()
    t, x, y = c["t"], c["x"], c["y"]
    if check:
        verdict = compatibility_check(_slice(inp.beta1, surface_chart(chart)),
                                      _slice(inp.beta2, surface_chart(chart)), inp.singular)
        if not verdict.ok:
            raise InputError(f"beta_1, beta_2 are not compatible: {verdict.witness}")
        for beta, mu, side in ((inp.beta1, inp.mu1, t >= 1), (inp.beta2, inp.mu2, t <= -1)):
            if mu is None or not side.any():
                continue
            val = wedge(beta, exterior_derivative(mu)).top()[side]
            if val.min() <= 0:
                raise InputError("beta_i ^ d mu_i must be positive on its extension strip")
    phi = cfg.phi(t)
    alpha = inp.beta1.scale(phi) + inp.beta2.scale(1.0 - phi)
    if inp.singular and cfg.delta:
        radius = cfg.radius(chart)
        qt = cfg.q(t)
        for s in inp.singular:
            u, v = x - s.x, y - s.y
            w = cfg.delta * qt * s.sign * cfg.bump(np.hypot(u, v), radius)
            alpha = alpha + FormField.from_functions(chart, 1, {"t": w, "y": w * u, "x": -w * v})
    if inp.mu2 is not None and cfg.eps:
        alpha = alpha + inp.mu2.scale(cfg.eps * cfg.psi_low(t))
    if inp.mu1 is not None and cfg.eps:
        alpha = alpha + inp.mu1.scale(cfg.eps * cfg.psi_high(t))
    return alpha


def graft_margin(inp: GraftInputs, cfg: GraftConfig, check: bool = True) -> PositivityReport:
    return contact_margin(grafted_form(inp, cfg, check), inp.region)


@dataclass(frozen=True)
class TuneResult:
    config: GraftConfig
    margin: float
    steps: int
    log: tuple[tuple[float, float, float, float], ...] = field(default_factory=tuple)


def tune_graft(inp: GraftInputs, start: GraftConfig | None = None, max_steps: int = 40) -> TuneResult:
    """Search (eps, delta, eps0) for a positive contact margin.

    Starting from ``start``, each failed step halves eps and delta in turn,
    and widens eps0 toward its cap; the first config with margin > 0 wins.
    """
    chart = inp.chart
    _check_chart(chart)
    verdict = compatibility_check(_slice(inp.beta1, surface_chart(chart)),
                                  _slice(inp.beta2, surface_chart(chart)), inp.singular)
    if not verdict.ok:
        raise InputError(f"incompatible inputs: {verdict.witness}")
    cfg = start or GraftConfig(eps=0.05, delta=0.1 if inp.singular else 0.0, eps0=0.2)
    # pin the patch radius so refining the grid does not shrink the patch
    cfg = cfg.pinned(chart)
    log = []
    best = (-np.inf, cfg)
    for step in range(1, max_steps + 1):
        m = graft_margin(inp, cfg, check=False).margin
        log.append((cfg.eps, cfg.delta, cfg.eps0, m))
        if m > best[0]:
            best = (m, cfg)
        if m > 0:
            return TuneResult(cfg, m, step, tuple(log))
        if step % 3 == 1:
            cfg = replace(cfg, eps=cfg.eps / 2)
        elif step % 3 == 2 and cfg.delta:
            cfg = replace(cfg, delta=cfg.delta / 2)
        else:
            cfg = replace(cfg, eps0=min(0.45, cfg.eps0 * 1.25))
    raise InputError(f"graft search exhausted after {max_steps} steps; best margin {best[0]:.3e}")


def _step_value(beta: FormField, a: tuple[int, ...], b: tuple[int, ...], pos: int, sign: int) -> float:
    """beta on the step a -> b (length h along axis pos), trapezoidal average."""
    h = beta.chart.axes[pos].h
    comp = beta.component((pos,))
    return 0.5 * (comp[a] + comp[b]) * sign * h


def _neighbours(chart: GridChart, node: tuple[int, ...]):
    for pos, axis in enumerate(chart.axes):
        for sign in (1, -1):
            k = node[pos] + sign
            if axis.periodic:
                k %= axis.n
            elif not 0 <= k < axis.n:
                continue
            nxt = list(node)
            nxt[pos] = k
            yield tuple(nxt), pos, sign


def positive_path_graph(beta: FormField, tol: float = 1e-12) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Edges u -> v between grid neighbours with beta(step) > tol."""
    if beta.degree != 1:
        raise InputError("positive paths need a 1-form")
    graph = {}
    for node in np.ndindex(*beta.chart.shape):
        graph[node] = [v for v, pos, sign in _neighbours(beta.chart, node)
                       if _step_value(beta, node, v, pos, sign) > tol]
    return graph


def calabi_positive_path(beta: FormField, p: tuple[int, ...], q: tuple[int, ...], tol: float = 1e-9) -> Verdict:
    """Is there a beta-positive grid path from p to q?"""
    norm = _pointwise_norm(beta)
    for name, pt in (("p", p), ("q", q)):
        if len(pt) != beta.chart.dim or any(not 0 <= i < n for i, n in zip(pt, beta.chart.shape)):
            raise InputError(f"{name} is not a grid point")
        if norm[pt] <= tol:
            raise InputError(f"{name} lies at a zero of beta")
    p, q = tuple(p), tuple(q)
    seen = {p: None}
    queue = deque([p])
    while queue:
        u = queue.popleft()
        if u == q:
            break
        for v, pos, sign in _neighbours(beta.chart, u):
            if v not in seen and _step_value(beta, u, v, pos, sign) > tol:
                seen[v] = u
                queue.append(v)
    if q not in seen:
        return Verdict("violated", witness={"reached": len(seen)})
    path = [q]
    while seen[path[-1]] is not None:
        path.append(seen[path[-1]])
    return Verdict("holds", witness={"length": len(path) - 1})
