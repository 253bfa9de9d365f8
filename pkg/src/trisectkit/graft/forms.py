"""Differential forms sampled on product grids.

A k-form stores one coefficient array per increasing multi-index of axis
positions; missing indices are zero.  Derivatives are finite differences:
centred in the interior, one-sided of the same order at non-periodic ends.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Mapping

import numpy as np

from ..verdict import InputError

DEFAULT_ORDER = 6
MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class Axis:
    name: str
    n: int
    lo: float
    hi: float
    periodic: bool = False

    def __post_init__(self) -> None:
        if self.n < 8:
            raise InputError(f"axis {self.name!r} needs at least 8 samples")
        if not self.hi > self.lo:
            raise InputError(f"axis {self.name!r} has an empty range")

    @property
    def h(self) -> float:
        span = self.hi - self.lo
        return span / self.n if self.periodic else span / (self.n - 1)

    def samples(self) -> np.ndarray:
        if self.periodic:
            return self.lo + self.h * np.arange(self.n)
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class GridChart:
    axes: tuple[Axis, ...]
    fixed: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.axes) not in (2, 3):
            raise InputError("charts are 2- or 3-dimensional")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names) or set(names) & set(self.fixed):
            raise InputError("axis names must be distinct and not also fixed")

    def __hash__(self) -> int:
        return hash((self.axes, tuple(sorted(self.fixed.items()))))

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(a.n for a in self.axes)

    def index(self, name: str) -> int:
        for k, a in enumerate(self.axes):
            if a.name == name:
                return k
        raise InputError(f"chart has no axis named {name!r}")

    def has(self, name: str) -> bool:
        return any(a.name == name for a in self.axes)

    def coords(self) -> dict[str, np.ndarray]:
        grids = np.meshgrid(*[a.samples() for a in self.axes], indexing="ij")
        out = {a.name: g for a, g in zip(self.axes, grids)}
        for k, v in self.fixed.items():
            out[k] = np.full(self.shape, float(v))
        return out

    def point(self, idx: tuple[int, ...]) -> dict[str, float]:
        return {a.name: float(a.samples()[i]) for a, i in zip(self.axes, idx)}

    def refined(self, factor: int = 2) -> "GridChart":
        """Same ranges with (n - 1) * factor + 1 samples (n * factor if periodic)."""
        axes = tuple(Axis(a.name, a.n * factor if a.periodic else (a.n - 1) * factor + 1,
                          a.lo, a.hi, a.periodic) for a in self.axes)
        return GridChart(axes, dict(self.fixed))


@lru_cache(maxsize=None)
def fd_weights(offsets: tuple[int, ...], deriv: int = 1) -> np.ndarray:
    """Finite-difference weights for the given stencil offsets (unit spacing)."""
    m = len(offsets)
    a = np.array([[o ** p for o in offsets] for p in range(m)], dtype=float)
    rhs = np.zeros(m)
    rhs[deriv] = float(np.prod(np.arange(1, deriv + 1)))
    return np.linalg.solve(a, rhs)


def partial(arr: np.ndarray, axis: Axis, position: int, order: int = DEFAULT_ORDER) -> np.ndarray:
    if order % 2 or order < 2:
        raise InputError("finite-difference order must be even and >= 2")
    h = axis.h
    half = order // 2
    if axis.periodic:
        w = fd_weights(tuple(range(-half, half + 1)))
        out = np.zeros_like(arr, dtype=float)
        for o, c in zip(range(-half, half + 1), w):
            if c:
                out += c * np.roll(arr, -o, axis=position)
        return out / h
    n = axis.n
    if n < order + 1:
        raise InputError(f"axis {axis.name!r} is too short for order {order}")
    a = np.moveaxis(np.asarray(arr, dtype=float), position, 0)
    out = np.empty_like(a)
    w = fd_weights(tuple(range(-half, half + 1)))
    inner = np.zeros_like(a[half:n - half])
    for o, c in zip(range(-half, half + 1), w):
        inner += c * a[half + o:n - half + o]
    out[half:n - half] = inner
    for i in list(range(half)) + list(range(n - half, n)):
        start = min(max(i - half, 0), n - order - 1)
        offs = tuple(range(start - i, start - i + order + 1))
        wb = fd_weights(offs)
        out[i] = sum(c * a[i + o] for o, c in zip(offs, wb))
    return np.moveaxis(out / h, 0, position)


def _sort_sign(idx: tuple[int, ...]) -> tuple[int, MultiIndex]:
    """Sign of the permutation sorting ``idx``; 0 if an index repeats."""
    if len(set(idx)) != len(idx):
        return 0, ()
    inv = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    return (-1) ** inv, tuple(sorted(idx))


@dataclass(frozen=True, eq=False)
class FormField:
    degree: int
    coeffs: dict[MultiIndex, np.ndarray]
    chart: GridChart

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= self.chart.dim:
            raise InputError(f"degree {self.degree} impossible on a {self.chart.dim}-chart")
        clean = {}
        for idx, arr in self.coeffs.items():
            idx = tuple(idx)
            if len(idx) != self.degree or list(idx) != sorted(set(idx)) or max(idx, default=-1) >= self.chart.dim:
                raise InputError(f"bad multi-index {idx} for a {self.degree}-form")
            arr = np.broadcast_to(np.asarray(arr, dtype=float), self.chart.shape).copy()
            arr.setflags(write=False)
            clean[idx] = arr
        object.__setattr__(self, "coeffs", clean)

    def component(self, idx: MultiIndex) -> np.ndarray:
        return self.coeffs.get(tuple(idx), np.zeros(self.chart.shape))

    def top(self) -> np.ndarray:
        """Coefficient against the chart's coordinate volume element."""
        if self.degree != self.chart.dim:
            raise InputError("not a top-degree form")
        return self.component(tuple(range(self.chart.dim)))

    def __add__(self, other: "FormField") -> "FormField":
        _same(self, other)
        if self.degree != other.degree:
            raise InputError("cannot add forms of different degree")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return FormField(self.degree, out, self.chart)

    def __neg__(self) -> "FormField":
        return FormField(self.degree, {k: -v for k, v in self.coeffs.items()}, self.chart)

    def __sub__(self, other: "FormField") -> "FormField":
        return self + (-other)

    def scale(self, f: np.ndarray | float) -> "FormField":
        return FormField(self.degree, {k: f * v for k, v in self.coeffs.items()}, self.chart)

    def max_abs(self, mask: np.ndarray | None = None) -> float:
        vals = [np.abs(v if mask is None else v[mask]) for v in self.coeffs.values()]
        return float(max((v.max() for v in vals if v.size), default=0.0))

    @classmethod
    def zero(cls, degree: int, chart: GridChart) -> "FormField":
        return cls(degree, {}, chart)

    @classmethod
    def from_functions(cls, chart: GridChart, degree: int,
                       parts: Mapping[tuple[str, ...] | str, Callable[[dict], np.ndarray] | np.ndarray | float]
                       ) -> "FormField":
        """Build from ``{("x", "y"): f}``; f is a number, an array, or a function of the coordinate dict.

        Names may be given in any order; the sign is adjusted.
        """
        c = chart.coords()
        out: dict[MultiIndex, np.ndarray] = {}
        for names, fn in parts.items():
            names = (names,) if isinstance(names, str) else tuple(names)
            if len(names) != degree:
                raise InputError(f"{names} is not a {degree}-index")
            sign, idx = _sort_sign(tuple(chart.index(n) for n in names))
            if sign == 0:
                continue
            val = fn(c) if callable(fn) else np.broadcast_to(np.asarray(fn, dtype=float), chart.shape)
            out[idx] = out.get(idx, 0) + sign * np.asarray(val, dtype=float)
        return cls(degree, out, chart)


def _same(a: FormField, b: FormField) -> None:
    if a.chart != b.chart:
        raise InputError("forms live on different charts")


def exterior_derivative(f: FormField, order: int = DEFAULT_ORDER) -> FormField:
    if f.degree >= f.chart.dim:
        raise InputError("degree overflow: d of a top-degree form")
    out: dict[MultiIndex, np.ndarray] = {}
    for idx, arr in f.coeffs.items():
        for pos, axis in enumerate(f.chart.axes):
            if pos in idx:
                continue
            sign, new = _sort_sign((pos,) + idx)
            dv = partial(arr, axis, pos, order)
            out[new] = out.get(new, 0) + sign * dv
    return FormField(f.degree + 1, out, f.chart)


def wedge(a: FormField, b: FormField) -> FormField:
    _same(a, b)
    if a.degree + b.degree > a.chart.dim:
        raise InputError("wedge degree exceeds the chart dimension")
    out: dict[MultiIndex, np.ndarray] = {}
    for i, u in a.coeffs.items():
        for j, v in b.coeffs.items():
            sign, idx = _sort_sign(i + j)
            if sign:
                out[idx] = out.get(idx, 0) + sign * (u * v)
    return FormField(a.degree + b.degree, out, a.chart)


def constant_form(chart: GridChart, degree: int, parts: Mapping) -> FormField:
    return FormField.from_functions(chart, degree, {k: float(v) for k, v in parts.items()})


def all_indices(dim: int, degree: int) -> list[MultiIndex]:
    return list(combinations(range(dim), degree))
