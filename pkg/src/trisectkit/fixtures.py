"""Builders for the shipped corpus.

Every fixture is produced here from the engines rather than typed by hand;
the test suite rebuilds each one and compares it byte for byte with the
shipped file.  Run ``python3 -m trisectkit.fixtures DIR`` to regenerate.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .braids import BraidWord, FactorizationRecord
from .formats import FormSpec, LatticeInput, MonodromyFile, TangleFile, emit, parse_text
from .graft.examples import COLLAR
from .graft.forms import Axis, GridChart
from .grouplab import (MonodromyAssignment, free_presentation, half_twist_relations, local_model,
                       perm_compose, perm_inverse, wirtinger)
from .homology.diagram import PlanarDiagram, closure_pd, disjoint_union, mirror, unknot
from .trisect.diagram import line_diagram
from .trisect.lattice import hypersurface_class
from .trisect.records import SectorLink, from_sector_links

TWIST_NAMES = {1: "k1", 2: "k2", -2: "km2", 3: "k3"}


def _closure(n: int, letters: tuple[int, ...]) -> PlanarDiagram:
    return closure_pd(BraidWord(n, letters))


def diagrams() -> dict[str, PlanarDiagram]:
    trefoil = _closure(2, (1, 1, 1))
    return {
        "unknot.pd": unknot(1),
        "unknot_kink.pd": _closure(2, (1,)),
        "trefoil.pd": trefoil,
        "left_trefoil.pd": mirror(trefoil),
        "hopf.pd": _closure(2, (1, 1)),
        "figure8.pd": _closure(3, (1, -2, 1, -2)),
        "t25.pd": _closure(2, (1, 1, 1, 1, 1)),
        "line_sector.pd": disjoint_union(_closure(2, (1, 1)), unknot(1)),
    }


def braids() -> dict[str, BraidWord | FactorizationRecord]:
    g = BraidWord(3, (1, 2))
    e3 = BraidWord(3, ())
    return {
        "trefoil.braid": BraidWord(2, (1, 1, 1)),
        "figure8.braid": BraidWord(3, (1, -2, 1, -2)),
        "delta2.braid": FactorizationRecord(2, ((BraidWord(2, ()), 2),)),
        "delta3.braid": FactorizationRecord(3, ((e3, 1), (g, 1), (e3, 1), (g, 1), (e3, 1), (g, 1))),
    }


def tangles() -> dict[str, TangleFile]:
    return {f"half_twist_{name}.tangle": TangleFile(local_model(k), half_twist_relations(k))
            for k, name in TWIST_NAMES.items()}


def _propagate(diagram, images: dict[str, tuple[int, ...]]) -> dict[str, tuple[int, ...]]:
    """Images of every arc from the bottom arcs via the Wirtinger rules."""
    pres = wirtinger(diagram)
    out = dict(images)
    for arc in sorted(pres.rules, key=lambda a: pres.height[a]):
        x = next(c for c in diagram.crossings if c.outgoing == arc)
        o, i = out[x.over], out[x.incoming]
        out[arc] = (perm_compose(perm_compose(perm_inverse(o), i), o) if x.sign == 1
                    else perm_compose(perm_compose(o, i), perm_inverse(o)))
    return out


def monodromies() -> dict[str, MonodromyFile]:
    model = local_model(3)
    pres = wirtinger(model)
    images = _propagate(model, {"a0": (2, 1, 3), "b0": (1, 3, 2)})
    phi = MonodromyAssignment(3, {g: images[g] for g in pres.generators})
    return {"clasp3.monodromy": MonodromyFile(free_presentation(pres.generators, pres.relations), phi)}


def lattices() -> dict[str, LatticeInput]:
    k3_c1 = (0,) * 22
    h = [0] * 22
    h[16] = 1  # first basis vector of the first hyperbolic summand
    label, d, c1k = hypersurface_class(5)
    return {
        "cp2x3.lattice": LatticeInput(("+1", "+1", "+1"), 5, 3, ((1, 0, 0), (0, 1, 0), (0, 0, 1))),
        "k3.lattice": LatticeInput(("-E8", "-E8", "H", "H", "H"), 24, -16, (tuple(h),), c1=k3_c1),
        "v5.lattice": LatticeInput((), 55, -35, class_data=((label.replace(" ", "_"), d, c1k),)),
    }


def collar_grid(n: int = 64) -> GridChart:
    return GridChart((Axis("x", n, 0.0, 1.0, True), Axis("y", n, 0.0, 1.0, True),
                      Axis("t", n, -1.0 - COLLAR, 1.0 + COLLAR)))


def formfields() -> dict[str, FormSpec]:
    ch = collar_grid()
    return {
        "dxdy_beta1.formfield": FormSpec(1, ch, ((("x",), "1"),)),
        "dxdy_beta2.formfield": FormSpec(1, ch, ((("y",), "1"),)),
        "dxdy_mu1.formfield": FormSpec(1, ch, ((("y",), "-t"),)),
        "dxdy_mu2.formfield": FormSpec(1, ch, ((("x",), "t"),)),
    }


# integers agree with line_sector.pd, see line_record_oracle
LINE_TRIREC = """trirec
b = 1
c = 1 1 1
w = 0 0 0
lk_own = 1 1 1
lk_next = 0 0 0
diagram = line.torusdiagram
sector1.braid = 1 :
sector1.link = line_sector.pd
sector1.roles = 0 1 2
sector2.braid = 1 :
sector2.link = line_sector.pd
sector2.roles = 0 1 2
sector3.braid = 1 :
sector3.link = line_sector.pd
sector3.roles = 0 1 2
"""


def corpus() -> dict[str, str]:
    files: dict[str, str] = {}
    for name, d in diagrams().items():
        files[name] = emit(d, "pd")
    for name, b in braids().items():
        files[name] = emit(b, "braid")
    for name, t in tangles().items():
        files[name] = emit(t, "tangle")
    for name, m in monodromies().items():
        files[name] = emit(m, "monodromy")
    for name, x in lattices().items():
        files[name] = emit(x, "lattice")
    for name, f in formfields().items():
        files[name] = emit(f, "formfield")
    files["collar.grid"] = emit(collar_grid(), "grid")
    files["line.torusdiagram"] = emit(line_diagram(), "torusdiagram")
    files["line.trirec"] = LINE_TRIREC
    return files


def line_record_oracle():
    """The line record rebuilt from its sector links alone."""
    link = SectorLink(diagrams()["line_sector.pd"], (0, 1, 2))
    empty = BraidWord(1, ())
    return from_sector_links(1, (1, 1, 1), (link, link, link), braids=(empty, empty, empty),
                             diagram=line_diagram())


def write_corpus(target: Path) -> list[Path]:
    target.mkdir(parents=True, exist_ok=True)
    out = []
    for name, text in corpus().items():
        p = target / name
        p.write_text(text, encoding="utf-8")
        out.append(p)
    return out


if __name__ == "__main__":  # pragma: no cover
    for p in write_corpus(Path(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "corpus")):
        print(p)
