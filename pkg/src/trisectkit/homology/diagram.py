"""Planar diagram (PD) codes.

Convention: ``X[i, j, k, l]`` lists the four edge labels counterclockwise,
starting at the incoming under-edge, so the under strand runs ``i -> k``.
The over strand runs ``l -> j`` at a positive crossing and ``j -> l`` at a
negative one.  The 0-smoothing joins ``(i, j)`` and ``(k, l)``; the
1-smoothing joins ``(i, l)`` and ``(j, k)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from ..braids import BraidWord
from ..verdict import InputError

Crossing = tuple[int, int, int, int, int]


class _DSU:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class PlanarDiagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    name: str = ""

    def __post_init__(self) -> None:
        xs = tuple(tuple(int(v) for v in x) for x in self.crossings)
        object.__setattr__(self, "crossings", xs)
        if self.free_loops < 0:
            raise InputError("free_loops must be nonnegative")
        counts: Counter[int] = Counter()
        outgoing: Counter[int] = Counter()
        incoming: Counter[int] = Counter()
        for n, x in enumerate(xs, start=1):
            if len(x) != 5:
                raise InputError(f"crossing {n}: expected four labels and a sign")
            i, j, k, l, s = x
            if s not in (1, -1):
                raise InputError(f"crossing {n}: sign must be +1 or -1")
            if min(i, j, k, l) < 1:
                raise InputError(f"crossing {n}: edge labels must be positive")
            counts.update((i, j, k, l))
            ins, outs = ((i, l), (k, j)) if s == 1 else ((i, j), (k, l))
            incoming.update(ins)
            outgoing.update(outs)
        bad = sorted(e for e, c in counts.items() if c != 2)
        if bad:
            raise InputError(f"edge labels {bad} do not occur exactly twice")
        skew = sorted(e for e in counts if incoming[e] != 1 or outgoing[e] != 1)
        if skew:
            raise InputError(f"edges {skew} are not consistently oriented")

    @property
    def n_plus(self) -> int:
        return sum(1 for x in self.crossings if x[4] == 1)

    @property
    def n_minus(self) -> int:
        return sum(1 for x in self.crossings if x[4] == -1)

    def __len__(self) -> int:
        return len(self.crossings)

    def edges(self) -> list[int]:
        return sorted({e for x in self.crossings for e in x[:4]})

    @property
    def components(self) -> int:
        dsu = _DSU()
        for i, j, k, l, _ in self.crossings:
            dsu.union(i, k)
            dsu.union(j, l)
        return len({dsu.find(e) for e in self.edges()}) + self.free_loops

    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    def component_of_edges(self) -> dict[int, int]:
        """Component index (0-based, by smallest edge) of every edge."""
        dsu = _DSU()
        for i, j, k, l, _ in self.crossings:
            dsu.union(i, k)
            dsu.union(j, l)
        roots = sorted({dsu.find(e) for e in self.edges()})
        idx = {r: n for n, r in enumerate(roots)}
        return {e: idx[dsu.find(e)] for e in self.edges()}


def relabel(crossings: list[Crossing]) -> list[Crossing]:
    order: dict[int, int] = {}
    for x in crossings:
        for e in x[:4]:
            order.setdefault(e, len(order) + 1)
    return [(order[x[0]], order[x[1]], order[x[2]], order[x[3]], x[4]) for x in crossings]


def closure_pd(word: BraidWord) -> PlanarDiagram:
    """PD code of the trace closure, strands running upward.

    At a letter on positions (p, p+1) with incoming edges a (left) and b
    (right) and outgoing c (left) and d (right): a positive letter gives
    ``X[b, d, c, a]`` and a negative one ``X[a, b, d, c]``.
    """
    n = word.strands
    bottom = list(range(1, n + 1))
    current = list(bottom)
    fresh = n + 1
    raw: list[list[int]] = []
    touched = set()
    for e in word.letters:
        p = abs(e) - 1
        a, b = current[p], current[p + 1]
        c, d = fresh, fresh + 1
        fresh += 2
        raw.append([b, d, c, a, 1] if e > 0 else [a, b, d, c, -1])
        current[p], current[p + 1] = c, d
        touched.update((p, p + 1))
    # close up: the top edge at position p is the bottom edge at position p
    alias = {current[p]: bottom[p] for p in range(n)}

    def resolve(e: int) -> int:
        seen = set()
        while e in alias and e not in seen and alias[e] != e:
            seen.add(e)
            e = alias[e]
        return e

    xs = [tuple(resolve(v) for v in x[:4]) + (x[4],) for x in raw]
    free = n - len(touched)
    return PlanarDiagram(tuple(relabel(xs)), free_loops=free)


def mirror(d: PlanarDiagram) -> PlanarDiagram:
    out = []
    for i, j, k, l, s in d.crossings:
        out.append((l, i, j, k, -1) if s == 1 else (j, k, l, i, 1))
    return PlanarDiagram(tuple(out), d.free_loops, d.name + "*" if d.name else "")


def disjoint_union(a: PlanarDiagram, b: PlanarDiagram) -> PlanarDiagram:
    shift = max(a.edges(), default=0)
    xs = a.crossings + tuple((i + shift, j + shift, k + shift, l + shift, s)
                             for i, j, k, l, s in b.crossings)
    return PlanarDiagram(xs, a.free_loops + b.free_loops)


def unknot(components: int = 1) -> PlanarDiagram:
    return PlanarDiagram((), free_loops=components)


def linking_number(d: PlanarDiagram, first: int, second: int) -> int:
    """Half the signed count of crossings between two components."""
    comp = d.component_of_edges()
    total = 0
    for i, j, k, l, s in d.crossings:
        pair = {comp[i], comp[j]}
        if pair == {first, second} and first != second:
            total += s
    if total % 2:
        raise InputError("odd crossing sum between components; diagram is not closed")
    return total // 2


def self_writhe(d: PlanarDiagram, component: int) -> int:
    comp = d.component_of_edges()
    return sum(s for i, j, k, l, s in d.crossings if comp[i] == component and comp[j] == component)
