"""The cube of resolutions and its Khovanov / Lee differentials.

A generator is ``(state, mask)``: ``state`` is a bitmask of 1-smoothed
crossings and bit ``c`` of ``mask`` is set when circle ``c`` carries v+.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .diagram import PlanarDiagram, _DSU
from ..verdict import BudgetExceeded

Gen = tuple[int, int]


class Cube:
    def __init__(self, diagram: PlanarDiagram, lee: bool = False, budget: int = 14) -> None:
        if len(diagram) > budget:
            raise BudgetExceeded(f"{len(diagram)} crossings exceed the budget of {budget}")
        self.d = diagram
        self.lee = lee
        self.n = len(diagram)
        self.n_plus = diagram.n_plus
        self.n_minus = diagram.n_minus
        self.edges = diagram.edges()
        self.circles = lru_cache(maxsize=None)(self._circles)
        self.edge_data = lru_cache(maxsize=None)(self._edge_data)

    # -- resolutions -------------------------------------------------------

    def _circles(self, state: int) -> tuple[dict[int, int], int]:
        """Circle id of each edge and the circle count (free loops last)."""
        dsu = _DSU()
        for c, (i, j, k, l, _) in enumerate(self.d.crossings):
            if state >> c & 1:
                dsu.union(i, l)
                dsu.union(j, k)
            else:
                dsu.union(i, j)
                dsu.union(k, l)
        ids: dict[int, int] = {}
        cid: dict[int, int] = {}
        for e in self.edges:
            r = dsu.find(e)
            if r not in ids:
                ids[r] = len(ids)
            cid[e] = ids[r]
        return cid, len(ids) + self.d.free_loops

    def n_circles(self, state: int) -> int:
        return self.circles(state)[1]

    def _edge_data(self, state: int, c: int):
        """Data of the edge flipping crossing ``c`` (0 -> 1) from ``state``."""
        target = state | (1 << c)
        src, ns = self.circles(state)
        dst, nt = self.circles(target)
        i, j, k, l, _ = self.d.crossings[c]
        edge_circles = ns - self.d.free_loops
        # carry untouched circles across by a representative edge
        rep: dict[int, int] = {}
        for e in self.edges:
            rep.setdefault(src[e], e)
        mapping = [dst[rep[x]] for x in range(edge_circles)]
        shift = (nt - self.d.free_loops) - edge_circles
        mapping += [x + shift for x in range(edge_circles, ns)]
        sign = -1 if bin(state & ((1 << c) - 1)).count("1") % 2 else 1
        a, b = src[i], src[k]
        if a != b:
            return target, sign, "merge", (a, b), (dst[i],), mapping
        return target, sign, "split", (a,), (dst[i], dst[j]), mapping

    # -- gradings ------------------------------------------------------------

    def hom_degree(self, state: int) -> int:
        return bin(state).count("1") - self.n_minus

    def q_degree(self, state: int, mask: int) -> int:
        nc = self.n_circles(state)
        plus = bin(mask).count("1")
        r = bin(state).count("1")
        return (2 * plus - nc) + r + self.n_plus - 2 * self.n_minus

    def states(self, i: int) -> list[int]:
        r = i + self.n_minus
        if r < 0 or r > self.n:
            return []
        out = []
        for combo in combinations(range(self.n), r):
            s = 0
            for c in combo:
                s |= 1 << c
            out.append(s)
        return out

    def generators(self, i: int, j: int | None = None) -> list[Gen]:
        out = []
        for s in self.states(i):
            nc = self.n_circles(s)
            if j is None:
                out.extend((s, m) for m in range(1 << nc))
                continue
            r = bin(s).count("1")
            deg = j - r - self.n_plus + 2 * self.n_minus
            if (deg + nc) % 2 or abs(deg) > nc:
                continue
            plus = (deg + nc) // 2
            for combo in combinations(range(nc), plus):
                m = 0
                for x in combo:
                    m |= 1 << x
                out.append((s, m))
        return out

    # -- differential ----------------------------------------------------------

    def differential(self, gen: Gen) -> dict[Gen, int]:
        state, mask = gen
        out: dict[Gen, int] = {}
        for c in range(self.n):
            if state >> c & 1:
                continue
            target, sign, kind, old, new, mapping = self.edge_data(state, c)
            base = 0
            for x, y in enumerate(mapping):
                if x not in old and mask >> x & 1:
                    base |= 1 << y
            for m, coeff in self._local(kind, old, new, mask):
                key = (target, base | m)
                val = out.get(key, 0) + sign * coeff
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
        return out

    def _local(self, kind, old, new, mask):
        if kind == "merge":
            pa = mask >> old[0] & 1
            pb = mask >> old[1] & 1
            bit = 1 << new[0]
            if pa and pb:
                return ((bit, 1),)
            if pa or pb:
                return ((0, 1),)
            return ((bit, 1),) if self.lee else ()
        p = mask >> old[0] & 1
        b1, b2 = 1 << new[0], 1 << new[1]
        if p:
            return ((b1, 1), (b2, 1))
        return ((0, 1), (b1 | b2, 1)) if self.lee else ((0, 1),)
