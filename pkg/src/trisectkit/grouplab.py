"""Free-group words, Wirtinger presentations of trivial tangles and monodromy.

Words are tuples of ``(generator, sign)`` letters.  Everything here is a pure
function of immutable values.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import groupby
from typing import Iterable, Mapping, Sequence

from .verdict import InputError, Verdict

Letter = tuple[str, int]

_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_.']*)(?:\^(-?\d+))?$")


class FreeWord(tuple):
    """An immutable (not necessarily reduced) word in named generators."""

    def __new__(cls, letters: Iterable[Letter] = ()):
        checked = []
        for g, s in letters:
            if s not in (1, -1):
                raise InputError(f"letter sign must be +-1, got {s}")
            checked.append((str(g), int(s)))
        return super().__new__(cls, checked)

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        """``"a b^-1 l^2"``; ``"1"`` or an empty string is the identity."""
        letters: list[Letter] = []
        for tok in text.split():
            if tok == "1":
                continue
            m = _TOKEN.match(tok)
            if not m:
                raise InputError(f"bad free-group token {tok!r}")
            power = int(m.group(2)) if m.group(2) else 1
            sign = 1 if power > 0 else -1
            letters.extend([(m.group(1), sign)] * abs(power))
        return cls(letters)

    @classmethod
    def gen(cls, name: str, power: int = 1) -> "FreeWord":
        sign = 1 if power > 0 else -1
        return cls([(name, sign)] * abs(power))

    def __mul__(self, other: "FreeWord") -> "FreeWord":  # type: ignore[override]
        return reduce_word(tuple(self) + tuple(other))

    def inverse(self) -> "FreeWord":
        return FreeWord((g, -s) for g, s in reversed(self))

    def reduced(self) -> "FreeWord":
        return reduce_word(self)

    def generators(self) -> set[str]:
        return {g for g, _ in self}

    def exponent(self, name: str) -> int:
        return sum(s for g, s in self if g == name)

    def __str__(self) -> str:
        if not self:
            return "1"
        parts = []
        for (g, sign), run in groupby(self):
            n = sign * len(list(run))
            parts.append(g if n == 1 else f"{g}^{n}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"FreeWord({str(self)!r})"


def reduce_word(letters: Iterable[Letter]) -> FreeWord:
    out: list[Letter] = []
    for g, s in letters:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return FreeWord(out)


def word_ops(u: FreeWord, v: FreeWord | None = None, mode: str = "reduce") -> FreeWord:
    if mode == "reduce":
        return u.reduced()
    if mode == "invert":
        return u.inverse()
    if v is None:
        raise InputError(f"mode {mode!r} needs two words")
    if mode == "multiply":
        return u * v
    if mode == "conjugate":
        return v.inverse() * u * v
    raise InputError(f"unknown mode {mode!r}")


def substitute(word: FreeWord, images: Mapping[str, FreeWord]) -> FreeWord:
    """Replace each generator that has an image; others are kept."""
    out: list[Letter] = []
    for g, s in word:
        if g in images:
            piece = images[g] if s == 1 else images[g].inverse()
            out.extend(piece)
        else:
            out.append((g, s))
    return reduce_word(out)


# -- longitudes ---------------------------------------------------------------


def conjugate_name(name: str, power: int, longitude: str) -> str:
    """Label of the meridian l^-power x l^power."""
    return name if power == 0 else f"{name}@{longitude}{power:+d}"


def longitude_normal_form(gamma: FreeWord, longitude: str = "l") -> tuple[int, FreeWord]:
    """Move every longitude letter to the front using ``x l = l (l^-1 x l)``.

    Returns ``(p, gamma0)`` with ``gamma = l^p gamma0``.  The letters of
    ``gamma0`` are conjugated meridians ``x@l+k`` standing for
    ``l^-k x l^k``; :func:`expand_conjugates` turns them back into plain words.
    """
    # scanning right to left, track how many l's have been moved past each letter
    shift = 0
    rest: list[Letter] = []
    for g, s in reversed(gamma):
        if g == longitude:
            shift += s
            continue
        rest.append((conjugate_name(g, shift, longitude), s))
    rest.reverse()
    return shift, reduce_word(rest)


_CONJ = re.compile(r"^(.*)@(.+?)([+-]\d+)$")


def expand_conjugates(word: FreeWord, longitude: str = "l") -> FreeWord:
    out: list[Letter] = []
    for g, s in word:
        m = _CONJ.match(g)
        if m and m.group(2) == longitude:
            k = int(m.group(3))
            lk = FreeWord.gen(longitude, k)
            piece = tuple(lk.inverse()) + ((m.group(1), 1),) + tuple(lk)
            out.extend(piece if s == 1 else FreeWord(piece).inverse())
        else:
            out.append((g, s))
    return reduce_word(out)


# -- the half-twist relation table ------------------------------------------

HALF_TWIST_TABLE: dict[int, tuple[str, str]] = {
    1: ("a d", "c b"),
    2: ("a^-1 d a b", "c b^-1 a b"),
    -2: ("a b^-1 a^-1 c a b", "b^-1 d b a b a^-1"),
    3: ("a^-1 d a b^-1 a b", "c b^-1 a^-1 b a b"),
}


def half_twist_relations(k: int) -> tuple[FreeWord, FreeWord]:
    if k not in HALF_TWIST_TABLE:
        raise InputError(f"half-twist exponent must be one of -2, 1, 2, 3; got {k}")
    r1, r2 = HALF_TWIST_TABLE[k]
    return FreeWord.parse(r1), FreeWord.parse(r2)


def conjugated_relations(k: int, longitude: str = "l", depth: int = 0) -> list[FreeWord]:
    """l^j rho l^-j for |j| <= depth.  Only finitely many conjugates exist in
    memory; the caller picks the depth."""
    if depth < 0:
        raise InputError("conjugate depth must be nonnegative")
    out = []
    for rho in half_twist_relations(k):
        for j in range(-depth, depth + 1):
            lj = FreeWord.gen(longitude, j) if j else FreeWord()
            out.append(lj * rho * lj.inverse())
    return out


# -- Wirtinger presentations --------------------------------------------------


@dataclass(frozen=True)
class TangleCrossing:
    over: str
    incoming: str
    outgoing: str
    sign: int


@dataclass(frozen=True)
class TangleDiagram:
    """A tangle diagram: arc labels, crossings, and the bottom (base) arcs.

    ``substitution`` maps surface loops to words in arc meridians; it is the
    data that accompanies a local model.
    """

    arcs: tuple[str, ...]
    crossings: tuple[TangleCrossing, ...] = ()
    bottom: tuple[str, ...] = ()
    kill: tuple[FreeWord, ...] = ()
    longitude: FreeWord | None = None
    substitution: dict[str, FreeWord] = field(default_factory=dict)
    name: str = ""


@dataclass(frozen=True)
class TanglePresentation:
    generators: tuple[str, ...]
    relations: tuple[FreeWord, ...]
    rules: dict[str, FreeWord]
    height: dict[str, int]
    longitude: FreeWord | None = None
    kill_set: tuple[FreeWord, ...] = ()
    substitution: dict[str, FreeWord] = field(default_factory=dict)


def wirtinger(diagram: TangleDiagram) -> TanglePresentation:
    """One generator per arc, one relator per crossing.

    A positive crossing gives ``out = over^-1 in over``; a negative one
    ``out = over in over^-1``.  Relators are also kept as directed rewriting
    rules ``out -> conjugate of in`` pointing toward the bottom arcs.
    """
    arcs = tuple(diagram.arcs)
    if len(set(arcs)) != len(arcs):
        raise InputError("duplicate arc labels")
    known = set(arcs)
    rules: dict[str, FreeWord] = {}
    relations: list[FreeWord] = []
    for n, x in enumerate(diagram.crossings):
        for lab in (x.over, x.incoming, x.outgoing):
            if lab not in known:
                raise InputError(f"crossing {n + 1}: undeclared arc {lab!r}")
        if x.sign not in (1, -1):
            raise InputError(f"crossing {n + 1}: sign must be +-1")
        if x.outgoing in rules:
            raise InputError(f"crossing {n + 1}: arc {x.outgoing!r} is outgoing twice")
        o = FreeWord.gen(x.over)
        conj = (o.inverse() * FreeWord.gen(x.incoming) * o) if x.sign == 1 else (
            o * FreeWord.gen(x.incoming) * o.inverse())
        rules[x.outgoing] = conj
        relations.append(FreeWord.gen(x.outgoing).inverse() * conj)
    for b in diagram.bottom:
        if b not in known:
            raise InputError(f"bottom arc {b!r} is not declared")
        if b in rules:
            raise InputError(f"bottom arc {b!r} is the outgoing arc of a crossing")

    height = _heights(arcs, diagram.bottom, diagram.crossings)
    for src, word in diagram.substitution.items():
        missing = word.generators() - known
        if missing:
            raise InputError(f"substitution for {src!r} uses undeclared arcs {sorted(missing)}")
    return TanglePresentation(
        generators=arcs,
        relations=tuple(relations),
        rules=rules,
        height=height,
        longitude=diagram.longitude,
        kill_set=tuple(diagram.kill),
        substitution=dict(diagram.substitution),
    )


def _heights(arcs: Sequence[str], bottom: Sequence[str], crossings: Sequence[TangleCrossing]) -> dict[str, int]:
    """Distance of each arc from the bottom along rewriting rules.

    A rule ``out -> w(over, in)`` gives out the height 1 + max(height of over, in),
    so every rule strictly lowers the height; cycles are rejected."""
    height = {b: 0 for b in bottom}
    by_out = {x.outgoing: x for x in crossings}
    pending = [a for a in arcs if a not in height]
    for _ in range(len(arcs) + 1):
        progressed = False
        for a in list(pending):
            x = by_out.get(a)
            if x is None:
                height[a] = 0
            elif x.over in height and x.incoming in height:
                height[a] = 1 + max(height[x.over], height[x.incoming])
            else:
                continue
            pending.remove(a)
            progressed = True
        if not pending:
            return height
        if not progressed:
            break
    raise InputError(f"arcs {sorted(pending)} cannot be rewritten toward the bottom (cyclic labels)")


def rewrite(word: FreeWord, pres: TanglePresentation) -> FreeWord:
    """Apply the directed Wirtinger rules until no rule applies, then reduce."""
    current = word.reduced()
    order = sorted(pres.rules, key=lambda a: -pres.height[a])
    for arc in order:
        if arc in current.generators():
            current = substitute(current, {arc: pres.rules[arc]})
    return current


def kill(word: FreeWord, pres: TanglePresentation) -> FreeWord:
    killed = {w[0][0] for w in pres.kill_set if len(w) == 1}
    out = FreeWord(l for l in word if l[0] not in killed)
    return out.reduced()


def free_rank(pres: TanglePresentation) -> int:
    """Rank of the presented group after Tietze elimination of rule arcs.

    Only valid for the presentations built here, where every relator
    expresses one arc in terms of lower arcs."""
    killed = {w[0][0] for w in pres.kill_set if len(w) == 1}
    survivors = [g for g in pres.generators if g not in pres.rules and g not in killed]
    return len(survivors)


def verify_relation_trivial(rho: FreeWord, pres: TanglePresentation,
                            substitution: Mapping[str, FreeWord] | None = None) -> bool:
    """True iff ``rho`` becomes the empty word after substitution, kill set
    and Wirtinger rewriting."""
    sub = dict(pres.substitution if substitution is None else substitution)
    known = set(pres.generators)
    for g in rho.generators():
        if g not in sub and g not in known:
            raise InputError(f"generator {g!r} has no meridian expression")
    word = substitute(rho, sub)
    word = rewrite(word, pres)
    word = kill(word, pres)
    return len(word) == 0


def _x(over: str, incoming: str, outgoing: str, sign: int) -> TangleCrossing:
    return TangleCrossing(over, incoming, outgoing, sign)


def local_model(k: int) -> TangleDiagram:
    """Clasp-type tangle diagram for the band with k half-twists.

    Surface loops a, b are the bottom meridians a0, b0; c, d are the inverses
    of the meridians of the two strands where they leave the picture.
    """
    inv = lambda name: FreeWord.gen(name, -1)  # noqa: E731
    base = {"a": FreeWord.gen("a0"), "b": FreeWord.gen("b0")}
    if k == 1:
        arcs, xs = ("a0", "b0"), ()
        ends = {"c": inv("b0"), "d": inv("a0")}
    elif k == 2:
        arcs = ("a0", "b0", "a1", "b1")
        xs = (_x("b0", "a0", "a1", 1), _x("a0", "b0", "b1", -1))
        ends = {"c": inv("a1"), "d": inv("b1")}
    elif k == -2:
        arcs = ("a0", "b0", "a1", "a2", "b1", "b2")
        xs = (_x("b0", "a0", "a1", -1), _x("a0", "a1", "a2", -1),
              _x("a0", "b0", "b1", -1), _x("b0", "b1", "b2", -1))
        ends = {"c": inv("a2"), "d": inv("b2")}
    elif k == 3:
        arcs = ("a0", "b0", "a1", "a2", "b1", "b2")
        xs = (_x("b0", "a0", "a1", 1), _x("a0", "a1", "a2", -1),
              _x("a0", "b0", "b1", 1), _x("b0", "b1", "b2", 1))
        ends = {"d": inv("a2"), "c": inv("b2")}
    else:
        raise InputError(f"no local model for k={k}")
    return TangleDiagram(arcs=arcs, crossings=xs, bottom=("a0", "b0"),
                         substitution={**base, **ends}, name=f"half-twist k={k}")


def verify_relation_table() -> dict[int, tuple[bool, bool]]:
    out = {}
    for k in sorted(HALF_TWIST_TABLE):
        pres = wirtinger(local_model(k))
        r1, r2 = half_twist_relations(k)
        out[k] = (verify_relation_trivial(r1, pres), verify_relation_trivial(r2, pres))
    return out


# -- monodromy ----------------------------------------------------------------

Perm = tuple[int, ...]  # one-line notation on 1..n


def perm_compose(first: Perm, then: Perm) -> Perm:
    """Apply ``first`` then ``then`` (left-to-right reading)."""
    return tuple(then[first[k] - 1] for k in range(len(first)))


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for k, v in enumerate(p):
        out[v - 1] = k + 1
    return tuple(out)


def is_transposition(p: Perm) -> bool:
    moved = [k for k, v in enumerate(p, start=1) if v != k]
    return len(moved) == 2


@dataclass(frozen=True)
class MonodromyAssignment:
    degree: int
    images: dict[str, Perm]

    def __post_init__(self) -> None:
        for g, p in self.images.items():
            if sorted(p) != list(range(1, self.degree + 1)):
                raise InputError(f"image of {g!r} is not a permutation of 1..{self.degree}")

    def evaluate(self, word: FreeWord, longitude: str | None = None,
                 longitude_image: Perm | None = None) -> Perm:
        ident = tuple(range(1, self.degree + 1))
        out = ident
        for g, s in word:
            if g in self.images:
                p = self.images[g]
            elif longitude is not None and g == longitude:
                p = longitude_image or ident
            else:
                raise InputError(f"generator {g!r} has no monodromy image")
            out = perm_compose(out, p if s == 1 else perm_inverse(p))
        return out


def check_monodromy(pres: TanglePresentation, phi: MonodromyAssignment) -> Verdict:
    ident = tuple(range(1, phi.degree + 1))
    for g in pres.generators:
        if g not in phi.images:
            return Verdict("error", reason=f"no image for generator {g}")
    for g in pres.generators:
        if not is_transposition(phi.images[g]):
            return Verdict("violated", witness={"check": "transposition", "generator": g,
                                                "image": phi.images[g]})
    for rel in pres.relations:
        img = phi.evaluate(rel)
        if img != ident:
            return Verdict("violated", witness={"check": "relator", "relator": str(rel),
                                                "image": img})
    # transitivity: orbit of sheet 1 under the image subgroup
    seen = {1}
    queue = deque([1])
    gens = [phi.images[g] for g in pres.generators]
    while queue:
        k = queue.popleft()
        for p in gens:
            if p[k - 1] not in seen:
                seen.add(p[k - 1])
                queue.append(p[k - 1])
    if len(seen) != phi.degree:
        return Verdict("violated", witness={"check": "transitivity", "orbit": sorted(seen)})
    return Verdict("holds", witness={"generators": len(gens)})


def lift_path(gamma: FreeWord, phi: MonodromyAssignment, start_sheet: int,
              longitude: str | None = None, longitude_image: Perm | None = None) -> int:
    if not 1 <= start_sheet <= phi.degree:
        raise InputError(f"sheet {start_sheet} outside 1..{phi.degree}")
    perm = phi.evaluate(gamma, longitude, longitude_image)
    return perm[start_sheet - 1]


def free_presentation(generators: Sequence[str], relations: Sequence[FreeWord] = ()) -> TanglePresentation:
    """A bare presentation (no diagram) for monodromy checks."""
    return TanglePresentation(tuple(generators), tuple(relations), {}, {g: 0 for g in generators})
