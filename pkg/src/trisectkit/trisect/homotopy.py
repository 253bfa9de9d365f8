"""Homotopy bookkeeping for arcs of a bridge-trisected surface.

Each arc runs from a negative bridge point (tail) to a positive one (head)
and carries a class: a free word in the longitude ``l`` and the symbols of a
declared factor alphabet.  Factor kinds:

* ``M0``  a meridian factor, flat by annotation;
* ``R``   a relation loop, removable by pushing the arc tail along the
          named flat word ``rho``;
* ``flat`` a bare flat symbol (used for the rho words themselves).

Flatness is an annotation carried by the alphabet, never re-derived.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction

from ..grouplab import FreeWord, longitude_normal_form
from ..verdict import InputError
from .diagram import BridgePoint, TorusArc, TorusDiagram

LONGITUDE = "l"
KINDS = ("M0", "R", "flat")


@dataclass(frozen=True)
class FactorSpec:
    kind: str
    rho: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InputError(f"factor kind must be one of {KINDS}, got {self.kind!r}")
        if self.kind == "R" and not self.rho:
            raise InputError("an R factor must name its flat word rho")

    @property
    def flat(self) -> bool:
        return self.kind in ("M0", "flat")


@dataclass(frozen=True)
class HArc:
    tail: int
    head: int
    word: FreeWord = field(default_factory=FreeWord)

    def __post_init__(self) -> None:
        object.__setattr__(self, "word", FreeWord(self.word).reduced())


def base_symbol(letter: str) -> str:
    return letter.split("@", 1)[0]


@dataclass(frozen=True)
class SurfaceHomotopyRecord:
    signs: tuple[int, ...]
    arcs: tuple[tuple[HArc, ...], tuple[HArc, ...], tuple[HArc, ...]]
    alphabet: dict[str, FactorSpec] = field(default_factory=dict)
    basepoint_sheet: int = 1

    def __post_init__(self) -> None:
        alpha = dict(self.alphabet)
        for spec in list(alpha.values()):
            if spec.kind == "R":
                alpha.setdefault(spec.rho, FactorSpec("flat"))
        if LONGITUDE in alpha:
            raise InputError(f"{LONGITUDE!r} is reserved for the longitude")
        object.__setattr__(self, "alphabet", alpha)
        object.__setattr__(self, "arcs", tuple(tuple(s) for s in self.arcs))
        n = len(self.signs)
        if n == 0 or n % 2 or sum(self.signs) != 0 or any(s not in (1, -1) for s in self.signs):
            raise InputError("bridge points must come in +/- pairs")
        if len(self.arcs) != 3:
            raise InputError("exactly three sectors of arcs are required")
        for lam, sector in enumerate(self.arcs, start=1):
            seen = [0] * n
            for arc in sector:
                if not (0 <= arc.tail < n and 0 <= arc.head < n):
                    raise InputError(f"sector {lam}: unknown bridge point")
                if self.signs[arc.tail] != -1 or self.signs[arc.head] != 1:
                    raise InputError(f"sector {lam}: arcs run from negative to positive points")
                seen[arc.tail] += 1
                seen[arc.head] += 1
                for g in arc.word.generators():
                    if g != LONGITUDE and base_symbol(g) not in alpha:
                        raise InputError(f"symbol {g!r} is not in the factor alphabet")
            if any(v != 1 for v in seen):
                raise InputError(f"sector {lam}: every bridge point needs exactly one arc")

    @property
    def b(self) -> int:
        return len(self.signs) // 2

    def cycles(self, lam: int) -> int:
        """Number of circles in tau_lam union tau_(lam+1)."""
        first, second = self.arcs[lam - 1], self.arcs[lam % 3]
        parent = list(range(len(self.signs)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for arc in first + second:
            parent[find(arc.tail)] = find(arc.head)
        return len({find(x) for x in range(len(self.signs))})

    @property
    def c(self) -> tuple[int, int, int]:
        return (self.cycles(1), self.cycles(2), self.cycles(3))

    @property
    def chi(self) -> int:
        return sum(self.c) - self.b

    def connected(self) -> bool:
        parent = list(range(len(self.signs)))

        def find(x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x

        for sector in self.arcs:
            for arc in sector:
                parent[find(arc.tail)] = find(arc.head)
        return len({find(x) for x in range(len(self.signs))}) == 1

    def label(self, lam: int, i: int) -> tuple[int, bool, FreeWord]:
        """(longitude exponent p, flat flag, residual) of arc i of sector lam."""
        p, rest = longitude_normal_form(self.arcs[lam - 1][i].word, LONGITUDE)
        flat = p == 0 and all(self.alphabet[base_symbol(g)].flat for g in rest.generators())
        return p, flat, rest

    def longitude_count(self) -> int:
        return sum(a.word.exponent(LONGITUDE) for a in self.arcs[0])

    def exponents(self, lam: int = 1) -> list[int]:
        return [a.word.exponent(LONGITUDE) for a in self.arcs[lam - 1]]

    def arc_at(self, lam: int, point: int) -> int:
        for i, arc in enumerate(self.arcs[lam - 1]):
            if point in (arc.tail, arc.head):
                return i
        raise InputError(f"bridge point {point} has no arc in sector {lam}")

    def replace_arc(self, lam: int, i: int, word: FreeWord) -> "SurfaceHomotopyRecord":
        sectors = [list(s) for s in self.arcs]
        old = sectors[lam - 1][i]
        sectors[lam - 1][i] = HArc(old.tail, old.head, word)
        return replace(self, arcs=tuple(tuple(s) for s in sectors))


def point_push(shr: SurfaceHomotopyRecord, x: int, mu: FreeWord) -> SurfaceHomotopyRecord:
    """Drag bridge point x once around the loop mu.

    At a positive point each incident class becomes class * mu; at a negative
    point it becomes mu^-1 * class.
    """
    if not 0 <= x < len(shr.signs):
        raise InputError(f"unknown bridge point {x}")
    mu = FreeWord(mu).reduced()
    for g in mu.generators():
        if g != LONGITUDE and base_symbol(g) not in shr.alphabet:
            raise InputError(f"loop symbol {g!r} is not in the factor alphabet")
    out = shr
    for lam in (1, 2, 3):
        i = out.arc_at(lam, x)
        w = out.arcs[lam - 1][i].word
        new = w * mu if shr.signs[x] == 1 else mu.inverse() * w
        out = out.replace_arc(lam, i, new)
    return out


def transfer_longitude(shr: SurfaceHomotopyRecord, sector: int, j: int, amount: int = 1) -> SurfaceHomotopyRecord:
    """Move ``amount`` longitudes between the two tau_1 arcs at the ends of arc j.

    For a tau_2 arc (an alpha_3 drag) the tau_1 arc at its tail gains an
    l^-amount prefix and the tau_1 arc at its head an l^amount suffix.  A
    tau_3 arc (an alpha_2 drag) moves longitudes the other way.  The dragged
    arc's own class must be flat.
    """
    if sector not in (2, 3):
        raise InputError("longitudes are transferred along tau_2 or tau_3 arcs")
    arcs = shr.arcs[sector - 1]
    if not 0 <= j < len(arcs):
        raise InputError(f"sector {sector} has no arc {j}")
    if not shr.label(sector, j)[1]:
        raise InputError(f"drag would make the non-flat class of tau_{sector} arc {j} non-flat")
    k = amount if sector == 2 else -amount
    arc = arcs[j]
    lk = FreeWord.gen(LONGITUDE, k)
    out = shr
    i_tail = out.arc_at(1, arc.tail)
    out = out.replace_arc(1, i_tail, lk.inverse() * out.arcs[0][i_tail].word)
    i_head = out.arc_at(1, arc.head)
    out = out.replace_arc(1, i_head, out.arcs[0][i_head].word * lk)
    for lam in (2, 3):
        for i in range(len(out.arcs[lam - 1])):
            if not out.label(lam, i)[1] and shr.label(lam, i)[1]:
                raise InputError(f"transfer made tau_{lam} arc {i} non-flat")
    return out


def concentrate_longitudes(shr: SurfaceHomotopyRecord) -> SurfaceHomotopyRecord:
    """Transfer every longitude onto the first tau_1 arc along a spanning tree."""
    t1 = shr.arcs[0]
    owner = {}
    for i, a in enumerate(t1):
        owner[a.tail] = owner[a.head] = i
    edges: dict[int, list[tuple[int, int, int]]] = {i: [] for i in range(len(t1))}
    for sector in (2, 3):
        for j, arc in enumerate(shr.arcs[sector - 1]):
            if not shr.label(sector, j)[1]:
                continue
            u, v = owner[arc.tail], owner[arc.head]
            if u != v:
                edges[u].append((v, sector, j))
                edges[v].append((u, sector, j))
    parent: dict[int, tuple[int, int, int] | None] = {0: None}
    order = [0]
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v, sector, j in edges[u]:
            if v not in parent:
                parent[v] = (u, sector, j)
                order.append(v)
                queue.append(v)
    if len(parent) != len(t1):
        raise InputError("tau_1 arcs are not connected through flat tau_2/tau_3 arcs")
    out = shr
    for child in reversed(order[1:]):
        up, sector, j = parent[child]
        p = out.arcs[0][child].word.exponent(LONGITUDE)
        if p == 0:
            continue
        arc = out.arcs[sector - 1][j]
        # tau_2: tail side loses, head side gains; tau_3 reversed
        child_is_tail = owner[arc.tail] == child
        forward = child_is_tail == (sector == 2)
        out = transfer_longitude(out, sector, j, p if forward else -p)
    return out


def _factors(shr: SurfaceHomotopyRecord, word: FreeWord) -> list[FreeWord]:
    """Single-factor pieces: l^{+-1} letters first, then the residual letters."""
    p, rest = longitude_normal_form(word, LONGITUDE)
    pieces = [FreeWord.gen(LONGITUDE, 1 if p > 0 else -1) for _ in range(abs(p))]
    for g, s in rest:
        if base_symbol(g) not in shr.alphabet:
            raise InputError(f"residual symbol {g!r} is not in the factor alphabet")
        pieces.append(FreeWord([(g, s)]))
    return pieces


def flatten_and_count(shr: SurfaceHomotopyRecord) -> tuple[SurfaceHomotopyRecord, int, bool]:
    """Split every tau_1 arc into single-factor arcs by ministabilization.

    Each split adds a +/- pair of bridge points joined by a new tau_2 and a
    new tau_3 arc, so b and c_2 both grow by one and chi is unchanged.  An R
    factor is removed by pushing the new tail along its rho word, which lands
    on the new tau_2 arc as a flat class.
    """
    if not shr.connected():
        raise InputError("flattening needs a connected record")
    signs = list(shr.signs)
    t1: list[HArc] = []
    t2 = list(shr.arcs[1])
    t3 = list(shr.arcs[2])
    for arc in shr.arcs[0]:
        pieces = _factors(shr, arc.word) or [FreeWord()]
        tail = arc.tail
        for n, piece in enumerate(pieces):
            if n == len(pieces) - 1:
                head = arc.head
            else:
                head = len(signs)
                new_tail = head + 1
                signs.extend((1, -1))
            spec = shr.alphabet.get(base_symbol(piece[0][0])) if piece else None
            word = piece
            if spec is not None and spec.kind == "R":
                word = FreeWord()
                # the tau_2 arc through the tail of this piece absorbs rho
                k = next(i for i, a in enumerate(t2) if tail in (a.tail, a.head))
                rho = FreeWord.gen(spec.rho)
                t2[k] = HArc(t2[k].tail, t2[k].head, t2[k].word * rho)
            t1.append(HArc(tail, head, word))
            if n != len(pieces) - 1:
                t2.append(HArc(new_tail, head))
                t3.append(HArc(new_tail, head))
                tail = new_tail
    out = SurfaceHomotopyRecord(tuple(signs), (tuple(t1), tuple(t2), tuple(t3)), shr.alphabet,
                                shr.basepoint_sheet)
    count = out.longitude_count()
    return out, count, count > 0


def line_record() -> SurfaceHomotopyRecord:
    """b = 1: one longitude on the tau_1 arc, trivial tau_2 and tau_3 arcs."""
    return SurfaceHomotopyRecord((-1, 1), ((HArc(0, 1, FreeWord.gen(LONGITUDE)),), (HArc(0, 1),), (HArc(0, 1),)))


def random_record(rng: random.Random, max_b: int = 5, max_len: int = 4) -> SurfaceHomotopyRecord:
    """Random connected record over the alphabet {z (M0), r (R, rho = q)}."""
    alphabet = {"z": FactorSpec("M0"), "r": FactorSpec("R", "q")}
    while True:
        b = rng.randint(1, max_b)
        signs = tuple([-1] * b + [1] * b)
        sectors = []
        for lam in (1, 2, 3):
            heads = list(range(b, 2 * b))
            rng.shuffle(heads)
            arcs = []
            for t, h in zip(range(b), heads):
                if lam == 1:
                    letters = [(rng.choice(["l", "l", "z", "r"]), rng.choice([1, -1]))
                               for _ in range(rng.randint(0, max_len))]
                else:
                    letters = [("z", rng.choice([1, -1])) for _ in range(rng.randint(0, 1))]
                arcs.append(HArc(t, h, FreeWord(letters)))
            sectors.append(tuple(arcs))
        shr = SurfaceHomotopyRecord(signs, tuple(sectors), alphabet)
        if shr.connected():
            return shr


def synthetic_diagram(shr: SurfaceHomotopyRecord, rng: random.Random) -> TorusDiagram:
    """A torus diagram for the record's combinatorics with area equal to its longitude count.

    Each tau_1 arc gets vertical lift p; the tau_2 and tau_3 lifts are
    random except for one tau_3 arc, adjusted so their contributions cancel.
    Arcs are not meant to be beta-positive; interior waypoints are random.
    """
    n = len(shr.signs)
    pts = []
    used = set()
    while len(pts) < n:
        p = (Fraction(rng.randrange(1, 97), 97), Fraction(rng.randrange(1, 89), 89))
        if p not in used:
            used.add(p)
            pts.append(p)
    points = tuple(BridgePoint(x, y, s) for (x, y), s in zip(pts, shr.signs))

    def build(family: str, arc: HArc, total: tuple[int, int]) -> TorusArc:
        mid = (Fraction(rng.randrange(0, 50), 50), Fraction(rng.randrange(0, 50), 50))
        start, stop = pts[arc.tail], pts[arc.head]
        lift1 = (rng.randint(-1, 1), rng.randint(-1, 1))
        lift2 = (total[0] - lift1[0], total[1] - lift1[1])
        return TorusArc(family, arc.tail, arc.head, (start, mid, stop), (lift1, lift2))

    arcs = [build("A", a, (0, a.word.exponent(LONGITUDE))) for a in shr.arcs[0]]
    balance = 0
    for a in shr.arcs[1]:
        lx = rng.randint(-2, 2)
        balance -= lx
        arcs.append(build("B", a, (lx, rng.randint(-2, 2))))
    c_arcs = list(shr.arcs[2])
    for k, a in enumerate(c_arcs):
        if k < len(c_arcs) - 1:
            lx, ly = rng.randint(-2, 2), rng.randint(-2, 2)
        else:
            ly = rng.randint(-2, 2)
            lx = ly - balance
        balance += lx - ly
        arcs.append(build("C", a, (lx, ly)))
    return TorusDiagram(points, tuple(arcs))
