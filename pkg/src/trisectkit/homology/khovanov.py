from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .cube import Cube
from .diagram import PlanarDiagram
from .linalg import BinaryEchelon, RationalEchelon
from .polynomial import LaurentPoly, Q_PLUS_QINV
from ..verdict import BudgetExceeded, InputError

RATIONAL = "Q"
BINARY = "F2"
BRACKET_BUDGET = 20
KHOVANOV_BUDGET = 14


@dataclass(frozen=True)
class BigradedRanks:
    ranks: dict[tuple[int, int], int] = field(default_factory=dict)
    coeff: str = RATIONAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "ranks", {k: v for k, v in sorted(self.ranks.items()) if v})

    def support(self) -> list[tuple[int, int]]:
        return sorted(self.ranks)

    def euler(self) -> LaurentPoly:
        out: dict[int, int] = {}
        for (i, j), r in self.ranks.items():
            out[j] = out.get(j, 0) + (-1) ** (i % 2) * r
        return LaurentPoly(out)

    def total(self) -> int:
        return sum(self.ranks.values())

    def mirrored(self) -> "BigradedRanks":
        return BigradedRanks({(-i, -j): r for (i, j), r in self.ranks.items()}, self.coeff)


def kauffman_bracket(d: PlanarDiagram, budget: int = BRACKET_BUDGET) -> LaurentPoly:
    """Unnormalized Jones polynomial; the unknot gives q + 1/q."""
    n = len(d)
    if n > budget:
        raise BudgetExceeded(f"{n} crossings exceed the state-sum budget of {budget}")
    cube = Cube(d, budget=budget)
    # (q + 1/q)^k for every circle count that occurs, computed once
    powers: dict[int, LaurentPoly] = {}
    total = LaurentPoly()
    for state in range(1 << n):
        nc = cube.n_circles(state)
        if nc not in powers:
            powers[nc] = Q_PLUS_QINV ** nc
        r = bin(state).count("1")
        total = total + powers[nc] * LaurentPoly.monomial(r, (-1) ** r)
    shift = LaurentPoly.monomial(d.n_plus - 2 * d.n_minus, (-1) ** d.n_minus)
    return total * shift


def _block_rank(cube: Cube, i: int, j: int, coeff: str) -> int:
    """Rank of d: C^{i,j} -> C^{i+1,j}."""
    sources = cube.generators(i, j)
    if not sources or not cube.states(i + 1):
        return 0
    index: dict[tuple[int, int], int] = {}
    if coeff == BINARY:
        ech = BinaryEchelon()
        for g in sources:
            row = 0
            for t, c in cube.differential(g).items():
                if c % 2:
                    row |= 1 << index.setdefault(t, len(index))
            ech.add(row)
        return len(ech)
    ech_q = RationalEchelon()
    for g in sources:
        vec = {index.setdefault(t, len(index)): c for t, c in cube.differential(g).items()}
        ech_q.add(vec)
    return len(ech_q)


def khovanov(d: PlanarDiagram, coeff: str = RATIONAL, budget: int = KHOVANOV_BUDGET) -> BigradedRanks:
    if coeff not in (RATIONAL, BINARY):
        raise InputError(f"coefficients must be {RATIONAL} or {BINARY}")
    cube = Cube(d, budget=budget)
    n = len(d)
    dims: dict[tuple[int, int], int] = {}
    for i in range(-d.n_minus, n - d.n_minus + 1):
        for s in cube.states(i):
            nc = cube.n_circles(s)
            r = bin(s).count("1")
            for plus in range(nc + 1):
                j = 2 * plus - nc + r + d.n_plus - 2 * d.n_minus
                dims[(i, j)] = dims.get((i, j), 0) + _binom(nc, plus)
    rank: dict[tuple[int, int], int] = {}
    for (i, j) in dims:
        if (i + 1, j) in dims:
            rank[(i, j)] = _block_rank(cube, i, j, coeff)
    out = {}
    for (i, j), dim in dims.items():
        h = dim - rank.get((i, j), 0) - rank.get((i - 1, j), 0)
        if h:
            out[(i, j)] = h
    return BigradedRanks(out, coeff)


def unlink_ranks(components: int) -> BigradedRanks:
    out = {}
    for plus in range(components + 1):
        out[(0, 2 * plus - components)] = _binom(components, plus)
    return BigradedRanks(out)


def _binom(n: int, k: int) -> int:
    return comb(n, k)

