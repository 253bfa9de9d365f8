"""Characteristic vectors of unimodular forms and class-wise adjunction bounds."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..verdict import BudgetExceeded, InputError

E8 = np.array([
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
], dtype=np.int64)
H = np.array([[0, 1], [1, 0]], dtype=np.int64)
BLOCKS = {"+1": np.array([[1]]), "-1": np.array([[-1]]), "H": H, "-E8": -E8, "E8": E8}
ENUMERATION_BUDGET = 2_000_000


def intersection_form(blocks: list[str]) -> np.ndarray:
    mats = []
    for b in blocks:
        if b not in BLOCKS:
            raise InputError(f"unknown form block {b!r}; use one of {sorted(BLOCKS)}")
        mats.append(BLOCKS[b])
    size = sum(m.shape[0] for m in mats)
    q = np.zeros((size, size), dtype=np.int64)
    k = 0
    for m in mats:
        n = m.shape[0]
        q[k:k + n, k:k + n] = m
        k += n
    if round(abs(np.linalg.det(q))) != 1:
        raise InputError("intersection form is not unimodular")
    return q


def signature(q: np.ndarray) -> int:
    ev = np.linalg.eigvalsh(q.astype(float))
    return int(np.sum(ev > 0) - np.sum(ev < 0))


def c_square(q: np.ndarray, c: np.ndarray) -> int:
    """c.c for c given by its pairings c.e_i with the basis (a dual vector)."""
    qinv = np.rint(np.linalg.inv(q.astype(float))).astype(np.int64)
    return int(c @ qinv @ c)


def characteristic_vectors(q: np.ndarray, target: int, bound: int) -> list[tuple[int, ...]]:
    """All c with |c.e_i| <= bound, c.e_i = e_i.e_i mod 2 and c.c = target."""
    n = q.shape[0]
    parity = [int(q[i, i]) % 2 for i in range(n)]
    ranges = [[v for v in range(-bound, bound + 1) if v % 2 == parity[i]] for i in range(n)]
    total = 1
    for r in ranges:
        total *= len(r)
    if total > ENUMERATION_BUDGET:
        raise BudgetExceeded(f"{total} candidate vectors exceed the enumeration budget; supply c1")
    qinv = np.rint(np.linalg.inv(q.astype(float))).astype(np.int64)
    grid = np.array(list(itertools.product(*ranges)), dtype=np.int64).reshape(-1, n)
    sq = np.einsum("ij,jk,ik->i", grid, qinv, grid)
    return [tuple(int(v) for v in row) for row in grid[sq == target]]


@dataclass(frozen=True)
class ClassReport:
    label: str
    k2: int
    c1k: int
    bound: int
    sign_free_bound: int

    @property
    def sphere_ruled_out(self) -> bool:
        return 2 > self.bound

    @property
    def torus_ruled_out(self) -> bool:
        return 0 > self.bound

    @property
    def min_genus(self) -> int:
        """Smallest genus g with 2 - 2g <= bound."""
        return max(0, -((self.bound - 2) // 2))


@dataclass(frozen=True)
class LatticeReport:
    target: int
    candidates: tuple[tuple[int, ...], ...]
    rows: dict[tuple[int, ...], tuple[ClassReport, ...]] = field(default_factory=dict)
    data_rows: tuple[ClassReport, ...] = ()
    note: str = ""

    def sphere_obstructed_for_all(self) -> bool:
        """Every candidate rules out at least one of the input classes as a sphere."""
        return bool(self.candidates) and all(
            any(r.sphere_ruled_out for r in rows) for rows in self.rows.values())


def lattice_obstructions(form: list[str] | np.ndarray, chi_top: int, sigma: int,
                         classes: list[tuple[int, ...]] = (), *, c1: tuple[int, ...] | None = None,
                         bound: int = 19, sigma_coefficient: int = 3,
                         class_data: list[tuple[str, int, int]] = ()) -> LatticeReport:
    """Adjunction bounds for every characteristic candidate and class.

    ``class_data`` entries ``(label, K.K, <c1, K>)`` skip the lattice entirely.
    The c.c target is ``2 chi + sigma_coefficient * sigma``.
    """
    if sigma_coefficient not in (2, 3):
        raise InputError("sigma coefficient must be 2 or 3")
    if sigma_coefficient == 2:
        warnings.warn("sigma coefficient 2 does not match the almost-complex relation c^2 = 2chi + 3sigma",
                      stacklevel=2)
    target = 2 * chi_top + sigma_coefficient * sigma
    data_rows = tuple(ClassReport(lab, k2, c1k, c1k - k2, -abs(c1k) - k2) for lab, k2, c1k in class_data)
    if isinstance(form, np.ndarray):
        q = form.astype(np.int64)
    elif form:
        q = intersection_form(list(form))
    else:
        return LatticeReport(target, (), {}, data_rows)
    if signature(q) != sigma:
        raise InputError(f"form has signature {signature(q)}, not {sigma}")
    if c1 is not None:
        cand = np.array(c1, dtype=np.int64)
        if cand.shape != (q.shape[0],):
            raise InputError("c1 has the wrong length")
        if any((int(cand[i]) - int(q[i, i])) % 2 for i in range(q.shape[0])):
            raise InputError("supplied c1 is not characteristic")
        candidates = [tuple(int(v) for v in cand)]
        note = "" if c_square(q, cand) == target else f"supplied c1 has square {c_square(q, cand)}, not {target}"
    else:
        candidates = characteristic_vectors(q, target, bound)
        note = "" if candidates else f"no characteristic vector with square {target} and |c_i| <= {bound}"
    rows = {}
    for c in candidates:
        cv = np.array(c, dtype=np.int64)
        reps = []
        for k in classes:
            kv = np.array(k, dtype=np.int64)
            if kv.shape != (q.shape[0],):
                raise InputError(f"class {k} has the wrong length")
            k2 = int(kv @ q @ kv)
            c1k = int(cv @ kv)
            reps.append(ClassReport(str(tuple(k)), k2, c1k, c1k - k2, -abs(c1k) - k2))
        rows[c] = tuple(reps)
    return LatticeReport(target, tuple(candidates), rows, data_rows, note)


def hypersurface_class(d: int) -> tuple[str, int, int]:
    """Hyperplane class of a degree-d surface in CP^3: h.h = d, <c1, h> = (4 - d) d."""
    if d < 1:
        raise InputError("degree must be positive")
    return (f"V{d} hyperplane", d, (4 - d) * d)
