"""Bridge-trisection records and the homological bookkeeping formulas.

Sector indices run over 1, 2, 3 and wrap, so "the next sector" of 3 is 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace

from ..braids import BraidWord, transverse_self_linking
from ..homology.diagram import PlanarDiagram, linking_number, self_writhe
from ..verdict import InputError, Verdict
from .diagram import TorusDiagram

DIAGRAM = "diagram-computed"
USER = "user-supplied"
INTEGER_FIELDS = ("w", "lk_own", "lk_next")


class SelfLinkingMismatch(UserWarning):
    """The sector formula disagrees with the attached braid."""


@dataclass(frozen=True)
class SectorLink:
    """A sector link diagram with the roles of its components.

    ``roles`` = (K, own, next): component indices of the surface link and of
    the two spine links.  Either spine role may be None when that link is
    empty.
    """

    diagram: PlanarDiagram
    roles: tuple[int, int | None, int | None]

    def __post_init__(self) -> None:
        n = self.diagram.components
        for r in self.roles:
            if r is not None and not 0 <= r < n:
                raise InputError(f"component role {r} outside 0..{n - 1}")

    def writhe(self) -> int:
        return self_writhe(self.diagram, self.roles[0])

    def lk(self, which: int) -> int:
        other = self.roles[which]
        if other is None:
            return 0
        return linking_number(self.diagram, self.roles[0], other)


@dataclass(frozen=True)
class BridgeTrisectionRecord:
    b: int
    c: tuple[int, int, int]
    w: tuple[int, int, int] = (0, 0, 0)
    lk_own: tuple[int, int, int] = (0, 0, 0)
    lk_next: tuple[int, int, int] = (0, 0, 0)
    braids: tuple[BraidWord | None, BraidWord | None, BraidWord | None] = (None, None, None)
    links: tuple[SectorLink | None, SectorLink | None, SectorLink | None] = (None, None, None)
    spine_summands: tuple[int, int, int] = (0, 0, 0)
    diagram: TorusDiagram | None = None
    provenance: dict[str, str] = field(default_factory=dict)
    name: str = ""
    # file references a record was read from, kept for faithful re-emission
    sources: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key in ("c", "w", "lk_own", "lk_next", "spine_summands"):
            val = tuple(int(v) for v in getattr(self, key))
            if len(val) != 3:
                raise InputError(f"{key} needs exactly three entries")
            object.__setattr__(self, key, val)
        if self.b < 1:
            raise InputError(f"bridge index must be positive, got {self.b}")
        if min(self.c) < 1 or max(self.c) > self.b:
            raise InputError(f"need b >= max(c) >= min(c) >= 1, got b={self.b}, c={self.c}")
        if self.diagram is not None and self.diagram.bridge_index != self.b:
            raise InputError(f"diagram has {2 * self.diagram.bridge_index} bridge points, record says b={self.b}")
        prov = {k: USER for k in ("b", "c", *INTEGER_FIELDS)}
        prov.update(self.provenance)
        object.__setattr__(self, "provenance", prov)

    def with_value(self, key: str, sector: int | None, value: int) -> "BridgeTrisectionRecord":
        """Copy with one integer replaced (sector is 1-based for triples)."""
        if sector is None:
            return replace(self, **{key: value})
        vals = list(getattr(self, key))
        vals[sector - 1] = value
        return replace(self, **{key: tuple(vals)})

    def integers(self) -> list[tuple[str, int | None, int]]:
        out: list[tuple[str, int | None, int]] = [("b", None, self.b)]
        for key in ("c", *INTEGER_FIELDS):
            out.extend((key, k + 1, v) for k, v in enumerate(getattr(self, key)))
        return out


def _idx(lam: int) -> int:
    if lam not in (1, 2, 3):
        raise InputError(f"sector must be 1, 2 or 3, got {lam}")
    return lam - 1


def euler_characteristic(rec: BridgeTrisectionRecord) -> int:
    return sum(rec.c) - rec.b


def c1_pairing(rec: BridgeTrisectionRecord) -> int:
    return sum(o - n for o, n in zip(rec.lk_own, rec.lk_next))


def self_intersection(rec: BridgeTrisectionRecord) -> int:
    return sum(rec.w) + rec.b


def sector_formula(rec: BridgeTrisectionRecord, lam: int) -> int:
    k = _idx(lam)
    return rec.w[k] - rec.lk_own[k] + rec.lk_next[k]


def sector_self_linking(rec: BridgeTrisectionRecord, lam: int) -> int:
    """w - lk(K, own) + lk(K, next), cross-checked against an attached braid.

    The check only runs for sectors without S^1 x S^2 summands; a mismatch
    raises a :class:`SelfLinkingMismatch` warning.
    """
    k = _idx(lam)
    value = sector_formula(rec, lam)
    braid = rec.braids[k]
    if braid is not None and rec.spine_summands[k] == 0:
        other = transverse_self_linking(braid)
        if other != value:
            warnings.warn(f"sector {lam}: formula gives {value}, braid gives {other}",
                          SelfLinkingMismatch, stacklevel=2)
    return value


def measured_self_linking(rec: BridgeTrisectionRecord, lam: int) -> tuple[int, str]:
    """Self-linking of K_lambda from the braid when one is attached, else the formula."""
    k = _idx(lam)
    braid = rec.braids[k]
    if braid is not None and rec.spine_summands[k] == 0:
        return transverse_self_linking(braid), DIAGRAM
    return sector_formula(rec, lam), rec.provenance.get("w", USER)


def total_self_linking_identity(rec: BridgeTrisectionRecord) -> Verdict:
    """sl(K1) + sl(K2) + sl(K3) = K.K - <c1, K> - b.

    The left side uses attached braids where available, so it is an
    independent measurement rather than a restatement of the right side.
    """
    parts = [measured_self_linking(rec, lam) for lam in (1, 2, 3)]
    lhs = sum(v for v, _ in parts)
    rhs = self_intersection(rec) - c1_pairing(rec) - rec.b
    return Verdict.identity(lhs, rhs, witness={"sl": [v for v, _ in parts]},
                            provenance={f"sl{k + 1}": src for k, (_, src) in enumerate(parts)})


def adjunction_verdict(chi: int, c1k: int, k2: int, mode: str = "standard") -> Verdict:
    """chi <= <c1, K> - K.K, or chi <= -|<c1, K>| - K.K for zero-area surfaces."""
    if mode == "standard":
        bound = c1k - k2
    elif mode == "zero-area":
        bound = -abs(c1k) - k2
    else:
        raise InputError(f"mode must be standard or zero-area, got {mode!r}")
    return Verdict.inequality(chi, bound, witness={"mode": mode, "c1K": c1k, "K2": k2})


def record_adjunction(rec: BridgeTrisectionRecord, mode: str = "standard") -> Verdict:
    return adjunction_verdict(euler_characteristic(rec), c1_pairing(rec), self_intersection(rec), mode)


@dataclass(frozen=True)
class WhitneyBookkeeping:
    n: int
    sectors: tuple[int, ...] = ()
    contributions: tuple[int, int, int] = (0, 0, 0)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InputError("the number of Whitney arcs must be nonnegative")
        if self.sectors and len(self.sectors) != self.n:
            raise InputError("each Whitney arc needs exactly one sector tag")
        for s in self.sectors:
            _idx(s)


@dataclass(frozen=True)
class WhitneyResult:
    chi_f: int
    sl_l: int
    verdict: Verdict


def whitney_band_bookkeeping(rec: BridgeTrisectionRecord, n: int | WhitneyBookkeeping) -> WhitneyResult:
    """Euler characteristic of F and self-linking of L after 2n bands.

    The verdict is the slice-Bennequin check sl(L) <= -chi(F); its slack
    does not depend on n and equals the adjunction slack.
    """
    count = n.n if isinstance(n, WhitneyBookkeeping) else int(n)
    if count < 0:
        raise InputError("the number of Whitney arcs must be nonnegative")
    chi_f = sum(rec.c) - 2 * count
    sl_l = self_intersection(rec) - c1_pairing(rec) - rec.b + 2 * count
    return WhitneyResult(chi_f, sl_l, Verdict.inequality(sl_l, -chi_f, witness={"n": count}))


def from_sector_links(b: int, c: tuple[int, int, int], links: tuple[SectorLink, SectorLink, SectorLink],
                      braids=(None, None, None), diagram: TorusDiagram | None = None,
                      name: str = "") -> BridgeTrisectionRecord:
    """Record whose framings and linking numbers are all read off sector diagrams."""
    w = tuple(l.writhe() for l in links)
    own = tuple(l.lk(1) for l in links)
    nxt = tuple(l.lk(2) for l in links)
    prov = {k: DIAGRAM for k in INTEGER_FIELDS}
    return BridgeTrisectionRecord(b, c, w, own, nxt, braids=braids, links=links,
                                  diagram=diagram, provenance=prov, name=name)


def diagram_mismatches(rec: BridgeTrisectionRecord) -> list[str]:
    """Stated integers that disagree with attached sector diagrams."""
    out = []
    for k, link in enumerate(rec.links):
        if link is None:
            continue
        for key, val in (("w", link.writhe()), ("lk_own", link.lk(1)), ("lk_next", link.lk(2))):
            stated = getattr(rec, key)[k]
            if stated != val:
                out.append(f"{key}{k + 1}: stated {stated}, diagram gives {val}")
    return out
