"""Lee homology and the Rasmussen s-invariant.

The Lee differential adds m(v-, v-) = v+ and an extra v+ v+ term to
Δ(v-).  Both extra terms raise the quantum degree by 4, so the complex
splits by q mod 4 and the canonical class s_o splits into two homogeneous
pieces, proportional to s_o + s_ō and s_o - s_ō.  The filtration grade of a
class is the largest minimal quantum degree over its representatives; it is
found by reducing the representative against an echelon basis of the image
of d^{-1}, with rows ordered by quantum degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cube import Cube
from .diagram import PlanarDiagram, _DSU, mirror
from .linalg import RationalEchelon
from ..verdict import BudgetExceeded, InputError

LEE_BUDGET = 14


@dataclass(frozen=True)
class LeeSummary:
    s: int | None
    levels: tuple[int, int]
    components: int
    total_rank: int | None = None
    mirrored: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)


def oriented_state(d: PlanarDiagram) -> int:
    state = 0
    for c, x in enumerate(d.crossings):
        if x[4] == -1:
            state |= 1 << c
    return state


def _colouring(cube: Cube, state: int) -> list[int]:
    """2-colouring (0 = a, 1 = b) of the Seifert circles, component by component."""
    cid, nc = cube.circles(state)
    adj: dict[int, set[int]] = {x: set() for x in range(nc)}
    for i, j, k, l, _ in cube.d.crossings:
        a, b = cid[i], cid[k]
        if a == b:
            raise InputError("oriented resolution has a crossing on a single circle")
        adj[a].add(b)
        adj[b].add(a)
    colour = [-1] * nc
    for start in range(nc):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if colour[y] < 0:
                    colour[y] = 1 - colour[x]
                    stack.append(y)
                elif colour[y] == colour[x]:
                    raise InputError("Seifert graph is not bipartite")
    return colour


def canonical_pieces(cube: Cube, state: int) -> tuple[dict[int, int], dict[int, int]]:
    """The two q mod 4 pieces of s_o, keyed by mask.

    a = v- + v+ and b = v- - v+; the expansion has coefficient
    (-1)^(number of b circles carrying v+).
    """
    colour = _colouring(cube, state)
    nc = len(colour)
    bmask = sum(1 << x for x, c in enumerate(colour) if c)
    even: dict[int, int] = {}
    odd: dict[int, int] = {}
    for mask in range(1 << nc):
        coeff = -1 if bin(mask & bmask).count("1") % 2 else 1
        (odd if bin(mask).count("1") % 2 else even)[mask] = coeff
    return even, odd


def _row_key(cube: Cube, state: int, mask: int) -> int:
    # increasing in q first; ties broken by (state, mask)
    q = cube.q_degree(state, mask) + 4 * cube.n + 64
    return (q << 48) | (state << 24) | mask


def _grade(cube: Cube, state: int, piece: dict[int, int]) -> int:
    klass = cube.q_degree(state, next(iter(piece))) % 4
    ech = RationalEchelon()
    for s in cube.states(-1):
        nc = cube.n_circles(s)
        for mask in range(1 << nc):
            if cube.q_degree(s, mask) % 4 != klass:
                continue
            image = cube.differential((s, mask))
            if image:
                ech.add({_row_key(cube, t, m): c for (t, m), c in image.items()})
    reduced = ech.reduce({_row_key(cube, state, m): c for m, c in piece.items()})
    return (min(reduced) >> 48) - 4 * cube.n - 64


def _s_direct(d: PlanarDiagram, budget: int) -> tuple[int, int]:
    cube = Cube(d, lee=True, budget=budget)
    state = oriented_state(d)
    even, odd = canonical_pieces(cube, state)
    g1 = _grade(cube, state, even)
    g2 = _grade(cube, state, odd)
    return min(g1, g2), max(g1, g2)


def _minus_one_size(d: PlanarDiagram) -> int:
    from math import comb
    return comb(len(d), d.n_minus - 1) if d.n_minus else 0


def lee_s_invariant(d: PlanarDiagram, budget: int = LEE_BUDGET,
                    with_total_rank: bool = False) -> LeeSummary:
    if d.components != 1:
        raise InputError(f"s is defined for knots; diagram has {d.components} components")
    if len(d) > budget:
        raise BudgetExceeded(f"{len(d)} crossings exceed the budget of {budget}")
    # work with whichever of D and its mirror has the smaller degree -1 group
    m = mirror(d)
    use_mirror = _minus_one_size(m) < _minus_one_size(d)
    lo, hi = _s_direct(m if use_mirror else d, budget)
    if hi - lo != 2:
        raise ArithmeticError(f"Lee classes at levels {lo}, {hi} do not differ by 2")
    if use_mirror:
        lo, hi = -hi, -lo
    total = lee_total_rank(d, budget) if with_total_rank else None
    return LeeSummary(s=lo + 1, levels=(lo, hi), components=1, total_rank=total, mirrored=use_mirror)


def lee_total_rank(d: PlanarDiagram, budget: int = 10) -> int:
    """Total rank of Lee homology over Q (expected 2^components)."""
    cube = Cube(d, lee=True, budget=budget)
    lo, hi = -d.n_minus, len(d) - d.n_minus
    dims = {i: sum(1 << cube.n_circles(s) for s in cube.states(i)) for i in range(lo, hi + 1)}
    ranks = {}
    for i in range(lo, hi):
        index: dict[tuple[int, int], int] = {}
        ech = RationalEchelon()
        for g in cube.generators(i):
            ech.add({index.setdefault(t, len(index)): c for t, c in cube.differential(g).items()})
        ranks[i] = len(ech)
    return sum(dims[i] - ranks.get(i, 0) - ranks.get(i - 1, 0) for i in dims)
