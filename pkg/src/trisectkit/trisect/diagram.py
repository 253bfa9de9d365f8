"""Torus diagrams: signed bridge points and A/B/C arc families on the unit torus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..verdict import InputError

Point = tuple[Fraction, Fraction]
FAMILIES = ("A", "B", "C")
SECTOR_OF = {"A": 1, "B": 2, "C": 3}


def as_point(p) -> Point:
    return (Fraction(p[0]), Fraction(p[1]))


@dataclass(frozen=True)
class BridgePoint:
    x: Fraction
    y: Fraction
    sign: int


@dataclass(frozen=True)
class TorusArc:
    """Polyline from ``tail`` (a negative point) to ``head`` (a positive point).

    ``path`` lists torus coordinates in [0, 1)^2.  Segment ``k`` runs from
    ``path[k]`` to ``path[k + 1] + lifts[k]`` in the universal cover.
    """

    family: str
    tail: int
    head: int
    path: tuple[Point, ...]
    lifts: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InputError(f"arc family must be A, B or C, got {self.family!r}")
        object.__setattr__(self, "path", tuple(as_point(p) for p in self.path))
        object.__setattr__(self, "lifts", tuple((int(a), int(b)) for a, b in self.lifts))
        if len(self.path) < 2:
            raise InputError("an arc needs at least one segment")
        if len(self.lifts) != len(self.path) - 1:
            raise InputError("one lift offset per segment is required")
        for d in self.displacements():
            if d == (0, 0):
                raise InputError("zero-length segment")

    @property
    def sector(self) -> int:
        return SECTOR_OF[self.family]

    def displacements(self) -> list[Point]:
        out = []
        for k in range(len(self.path) - 1):
            (x0, y0), (x1, y1) = self.path[k], self.path[k + 1]
            dx, dy = self.lifts[k]
            out.append((x1 + dx - x0, y1 + dy - y0))
        return out

    def lifted_segments(self) -> list[tuple[Point, Point]]:
        segs = []
        for k, (dx, dy) in enumerate(self.displacements()):
            x0, y0 = self.path[k]
            segs.append(((x0, y0), (x0 + dx, y0 + dy)))
        return segs


def beta_value(sector: int, dx: Fraction, dy: Fraction) -> Fraction:
    """The constant foliation form of a sector on a displacement."""
    if sector == 1:
        return dy
    if sector == 2:
        return -dx
    if sector == 3:
        return dx - dy
    raise InputError(f"sector must be 1, 2 or 3, got {sector}")


def beta_positive(arc: TorusArc, sector: int | None = None) -> bool:
    """Strict positivity on every segment (tangent segments count as failures)."""
    lam = arc.sector if sector is None else sector
    return all(beta_value(lam, dx, dy) > 0 for dx, dy in arc.displacements())


def _orient(a: Point, b: Point, c: Point) -> int:
    v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (v > 0) - (v < 0)


def _on_segment(a: Point, b: Point, p: Point) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segments_meet(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and _on_segment(p1, p2, q1)) or (o2 == 0 and _on_segment(p1, p2, q2))
            or (o3 == 0 and _on_segment(q1, q2, p1)) or (o4 == 0 and _on_segment(q1, q2, p2)))


def arcs_meet_on_torus(a: TorusArc, b: TorusArc) -> bool:
    """Do two arcs meet anywhere on the torus (checked over nearby translates)?"""
    for s in a.lifted_segments():
        for t in b.lifted_segments():
            reach = int(max(abs(v) for pt in s + t for v in pt)) + 2
            for i in range(-reach, reach + 1):
                for j in range(-reach, reach + 1):
                    t1 = (t[0][0] + i, t[0][1] + j)
                    t2 = (t[1][0] + i, t[1][1] + j)
                    if segments_meet(s[0], s[1], t1, t2):
                        return True
    return False


@dataclass(frozen=True)
class TorusDiagram:
    points: tuple[BridgePoint, ...]
    arcs: tuple[TorusArc, ...]

    def __post_init__(self) -> None:
        pts = tuple(p if isinstance(p, BridgePoint) else BridgePoint(Fraction(p[0]), Fraction(p[1]), int(p[2]))
                    for p in self.points)
        object.__setattr__(self, "points", pts)
        n = len(pts)
        if n == 0 or n % 2:
            raise InputError("a torus diagram needs an even, positive number of bridge points")
        for p in pts:
            if p.sign not in (1, -1):
                raise InputError("bridge point signs must be +-1")
            if not (0 <= p.x < 1 and 0 <= p.y < 1):
                raise InputError("bridge point coordinates must lie in [0, 1)")
        if sum(p.sign for p in pts) != 0:
            raise InputError("positive and negative bridge points must pair up")
        meets = {(k, f): 0 for k in range(n) for f in FAMILIES}
        for m, arc in enumerate(self.arcs, start=1):
            for end in (arc.tail, arc.head):
                if not 0 <= end < n:
                    raise InputError(f"arc {m}: endpoint {end + 1} is not a declared bridge point")
                meets[(end, arc.family)] += 1
            if pts[arc.tail].sign != -1 or pts[arc.head].sign != 1:
                raise InputError(f"arc {m}: must run from a negative to a positive point")
            start = (pts[arc.tail].x, pts[arc.tail].y)
            stop = (pts[arc.head].x, pts[arc.head].y)
            if arc.path[0] != start or arc.path[-1] != stop:
                raise InputError(f"arc {m}: path does not start and end at its bridge points")
        bad = [(k + 1, f) for (k, f), v in meets.items() if v != 1]
        if bad:
            raise InputError(f"bridge points must meet exactly one arc per family: {bad[:4]}")

    @property
    def bridge_index(self) -> int:
        return len(self.points) // 2

    def family_disjoint(self) -> list[tuple[int, int]]:
        """Pairs of same-family arcs that meet (empty for a valid diagram)."""
        clashes = []
        for (i, a), (j, b) in combinations(enumerate(self.arcs), 2):
            if a.family == b.family and arcs_meet_on_torus(a, b):
                clashes.append((i, j))
        return clashes

    def sector_arcs(self, sector: int) -> list[TorusArc]:
        return [a for a in self.arcs if a.sector == sector]


def arc_area(arc: TorusArc) -> Fraction:
    return sum((beta_value(arc.sector, dx, dy) for dx, dy in arc.displacements()), Fraction(0))


def symplectic_area(diagram: TorusDiagram) -> Fraction:
    """Sum of the exact line integrals of the sector forms along the lifted arcs."""
    return sum((arc_area(a) for a in diagram.arcs), Fraction(0))


def line_diagram() -> TorusDiagram:
    """The (1; 1, 1, 1) diagram used for the complex projective line."""
    q = Fraction
    pm, pp = (q(0), q(0)), (q(2, 3), q(1, 3))
    return TorusDiagram(
        points=(BridgePoint(q(0), q(0), -1), BridgePoint(q(2, 3), q(1, 3), 1)),
        arcs=(
            TorusArc("A", 0, 1, (pm, pp), ((0, 0),)),
            TorusArc("B", 0, 1, (pm, pp), ((-1, 0),)),
            TorusArc("C", 0, 1, (pm, (q(1, 6), q(0)), pp), ((0, 0), (0, 0))),
        ),
    )
