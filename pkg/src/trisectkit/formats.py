"""Line-oriented text formats.

Every file starts with its kind on the first line, followed by
``key = value`` lines.  ``#`` starts a comment; blank lines are ignored.
Rationals are written ``p/q``.  Only the keys listed as repeatable may occur
more than once.  ``emit(parse(text))`` reproduces canonical files byte for
byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .braids import BraidWord, FactorizationRecord
from .grouplab import (FreeWord, MonodromyAssignment, TangleCrossing, TangleDiagram, TanglePresentation,
                       free_presentation)
from .homology.diagram import PlanarDiagram
from .trisect.diagram import BridgePoint, TorusArc, TorusDiagram
from .trisect.records import DIAGRAM, BridgeTrisectionRecord, SectorLink
from .verdict import InputError

KINDS = ("braid", "pd", "tangle", "monodromy", "torusdiagram", "trirec", "lattice", "grid", "formfield")

KEYS: dict[str, tuple[tuple[str, ...], frozenset[str]]] = {
    "braid": (("strands", "word", "factor"), frozenset({"factor"})),
    "pd": (("components", "free_loops", "crossing"), frozenset({"crossing"})),
    "tangle": (("arcs", "bottom", "crossing", "kill", "longitude", "substitute", "relation"),
               frozenset({"crossing", "kill", "substitute", "relation"})),
    "monodromy": (("degree", "generators", "image", "relator"), frozenset({"image", "relator"})),
    "torusdiagram": (("point", "arc"), frozenset({"point", "arc"})),
    "trirec": (("b", "c", "w", "lk_own", "lk_next", "spine_summands", "diagram",
                *(f"sector{k}.{f}" for k in (1, 2, 3) for f in ("braid", "link", "roles"))), frozenset()),
    "lattice": (("form", "chi", "sigma", "class", "c1", "bound", "class_data"), frozenset({"class", "class_data"})),
    "grid": (("axis", "fixed"), frozenset({"axis", "fixed"})),
    "formfield": (("degree", "axis", "fixed", "component"), frozenset({"axis", "fixed", "component"})),
}


@dataclass
class Entry:
    key: str
    value: str
    line: int


@dataclass
class Document:
    kind: str
    entries: list[Entry]
    source: str = "<text>"

    def get(self, key: str, default: str | None = None, required: bool = False) -> str | None:
        for e in self.entries:
            if e.key == key:
                return e.value
        if required:
            raise InputError(f"{self.source}: missing required key {key!r}")
        return default

    def all(self, key: str) -> list[Entry]:
        return [e for e in self.entries if e.key == key]

    def line_of(self, key: str) -> int:
        for e in self.entries:
            if e.key == key:
                return e.line
        return 0

    def fail(self, entry: Entry | int, message: str) -> InputError:
        line = entry.line if isinstance(entry, Entry) else entry
        return InputError(f"{self.source}:{line}: {message}")


def tokenize(text: str, source: str = "<text>") -> Document:
    kind = None
    entries: list[Entry] = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if kind is None:
            kind = line
            if kind not in KINDS:
                raise InputError(f"{source}:{n}: unknown kind {kind!r}")
            continue
        if "=" not in line:
            raise InputError(f"{source}:{n}: expected 'key = value'")
        key, value = line.split("=", 1)
        entries.append(Entry(key.strip(), value.strip(), n))
    if kind is None:
        raise InputError(f"{source}: empty file")
    order, repeatable = KEYS[kind]
    seen: set[str] = set()
    for e in entries:
        if e.key not in order:
            raise InputError(f"{source}:{e.line}: unknown key {e.key!r} for kind {kind}")
        if e.key in seen and e.key not in repeatable:
            raise InputError(f"{source}:{e.line}: duplicate key {e.key!r}")
        seen.add(e.key)
    return Document(kind, entries, source)


def _int(doc: Document, entry: Entry, text: str | None = None) -> int:
    try:
        return int(entry.value if text is None else text)
    except ValueError:
        raise doc.fail(entry, f"expected an integer, got {(entry.value if text is None else text)!r}") from None


def _ints(doc: Document, entry: Entry, text: str | None = None) -> list[int]:
    return [_int(doc, entry, t) for t in (entry.value if text is None else text).split()]


def _frac(doc: Document, entry: Entry, text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise doc.fail(entry, f"expected a rational, got {text!r}") from None


def fmt_frac(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _sign(doc: Document, entry: Entry, text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise doc.fail(entry, f"expected a sign + or -, got {text!r}")


def _word(doc: Document, entry: Entry, text: str) -> FreeWord:
    try:
        return FreeWord.parse(text)
    except InputError as exc:
        raise doc.fail(entry, str(exc)) from None


def _join(values) -> str:
    return " ".join(str(v) for v in values)


def _line(key: str, value: str) -> str:
    return f"{key} = {value}".rstrip() if value else f"{key} ="


# -- braid -------------------------------------------------------------------

def _braid_letters(doc: Document, entry: Entry, n: int, text: str) -> tuple[int, ...]:
    letters = tuple(_ints(doc, entry, text))
    for e in letters:
        if e == 0 or abs(e) > n - 1:
            raise doc.fail(entry, f"generator index {e} is illegal on {n} strands")
    return letters


def parse_braid(doc: Document) -> BraidWord | FactorizationRecord:
    entry = doc.all("strands")
    if not entry:
        raise doc.fail(1, "missing 'strands'")
    n = _int(doc, entry[0])
    if n < 1:
        raise doc.fail(entry[0], "strand count must be positive")
    words = doc.all("word")
    factors = doc.all("factor")
    if words and factors:
        raise doc.fail(factors[0], "a braid file holds either a word or factors, not both")
    if factors:
        out = []
        for f in factors:
            if ":" not in f.value:
                raise doc.fail(f, "factor lines read 'exponent : conjugator letters'")
            exp, conj = f.value.split(":", 1)
            out.append((BraidWord(n, _braid_letters(doc, f, n, conj)), _int(doc, f, exp.strip())))
        return FactorizationRecord(n, tuple(out))
    if not words:
        raise doc.fail(1, "missing 'word' or 'factor' lines")
    return BraidWord(n, _braid_letters(doc, words[0], n, words[0].value))


def emit_braid(value: BraidWord | FactorizationRecord) -> list[str]:
    if isinstance(value, FactorizationRecord):
        lines = [_line("strands", str(value.degree))]
        for conj, exp in value.factors:
            lines.append(_line("factor", f"{exp} : {_join(conj.letters)}".rstrip()))
        return lines
    return [_line("strands", str(value.strands)), _line("word", _join(value.letters))]


# -- pd ------------------------------------------------------------------------

def parse_pd(doc: Document) -> PlanarDiagram:
    xs = []
    for e in doc.all("crossing"):
        parts = e.value.split()
        if len(parts) != 5:
            raise doc.fail(e, "crossing lines read 'i j k l sign'")
        xs.append((*_ints(doc, e, " ".join(parts[:4])), _sign(doc, e, parts[4])))
    free = doc.all("free_loops")
    try:
        d = PlanarDiagram(tuple(xs), _int(doc, free[0]) if free else 0)
    except InputError as exc:
        raise doc.fail(doc.line_of("crossing") or 1, str(exc)) from None
    comp = doc.all("components")
    if comp and _int(doc, comp[0]) != d.components:
        raise doc.fail(comp[0], f"stated {comp[0].value} components, diagram has {d.components}")
    return d


def emit_pd(d: PlanarDiagram) -> list[str]:
    lines = [_line("components", str(d.components)), _line("free_loops", str(d.free_loops))]
    for i, j, k, l, s in d.crossings:
        lines.append(_line("crossing", f"{i} {j} {k} {l} {'+' if s == 1 else '-'}"))
    return lines


# -- tangle ----------------------------------------------------------------------

@dataclass(frozen=True)
class TangleFile:
    diagram: TangleDiagram
    relations: tuple[FreeWord, ...] = ()


def parse_tangle(doc: Document) -> TangleFile:
    arcs = tuple(doc.get("arcs", "", required=True).split())
    bottom = tuple((doc.get("bottom") or "").split())
    xs = []
    for e in doc.all("crossing"):
        parts = e.value.split()
        if len(parts) != 4:
            raise doc.fail(e, "crossing lines read 'over incoming outgoing sign'")
        xs.append(TangleCrossing(parts[0], parts[1], parts[2], _sign(doc, e, parts[3])))
    kill = tuple(_word(doc, e, e.value) for e in doc.all("kill"))
    lon = doc.all("longitude")
    sub = {}
    for e in doc.all("substitute"):
        if ":" not in e.value:
            raise doc.fail(e, "substitute lines read 'name : word'")
        name, word = (s.strip() for s in e.value.split(":", 1))
        if name in sub:
            raise doc.fail(e, f"duplicate substitution for {name!r}")
        sub[name] = _word(doc, e, word)
    rels = tuple(_word(doc, e, e.value) for e in doc.all("relation"))
    diagram = TangleDiagram(arcs=arcs, crossings=tuple(xs), bottom=bottom, kill=kill,
                            longitude=_word(doc, lon[0], lon[0].value) if lon else None, substitution=sub)
    return TangleFile(diagram, rels)


def emit_tangle(t: TangleFile) -> list[str]:
    d = t.diagram
    lines = [_line("arcs", _join(d.arcs)), _line("bottom", _join(d.bottom))]
    lines += [_line("crossing", f"{x.over} {x.incoming} {x.outgoing} {'+' if x.sign == 1 else '-'}")
              for x in d.crossings]
    lines += [_line("kill", str(w)) for w in d.kill]
    if d.longitude is not None:
        lines.append(_line("longitude", str(d.longitude)))
    lines += [_line("substitute", f"{k} : {w}") for k, w in d.substitution.items()]
    lines += [_line("relation", str(w)) for w in t.relations]
    return lines


# -- monodromy ---------------------------------------------------------------------

@dataclass(frozen=True)
class MonodromyFile:
    presentation: TanglePresentation
    assignment: MonodromyAssignment


def parse_monodromy(doc: Document) -> MonodromyFile:
    deg_entry = doc.all("degree")
    if not deg_entry:
        raise doc.fail(1, "missing 'degree'")
    n = _int(doc, deg_entry[0])
    gens = (doc.get("generators", "", required=True)).split()
    images = {}
    for e in doc.all("image"):
        if ":" not in e.value:
            raise doc.fail(e, "image lines read 'generator : one-line permutation'")
        g, perm = (s.strip() for s in e.value.split(":", 1))
        images[g] = tuple(_ints(doc, e, perm))
    rels = [_word(doc, e, e.value) for e in doc.all("relator")]
    for r, e in zip(rels, doc.all("relator")):
        if not r.generators() <= set(gens):
            raise doc.fail(e, "relator uses undeclared generators")
    try:
        phi = MonodromyAssignment(n, images)
    except InputError as exc:
        raise doc.fail(doc.line_of("image"), str(exc)) from None
    return MonodromyFile(free_presentation(gens, rels), phi)


def emit_monodromy(m: MonodromyFile) -> list[str]:
    lines = [_line("degree", str(m.assignment.degree)), _line("generators", _join(m.presentation.generators))]
    lines += [_line("image", f"{g} : {_join(p)}") for g, p in m.assignment.images.items()]
    lines += [_line("relator", str(r)) for r in m.presentation.relations]
    return lines


# -- torus diagrams ------------------------------------------------------------------

def _pairs(doc: Document, entry: Entry, text: str) -> list[tuple[Fraction, Fraction]]:
    out = []
    for chunk in text.split(";"):
        xy = chunk.split(",")
        if len(xy) != 2:
            raise doc.fail(entry, f"expected 'x,y', got {chunk!r}")
        out.append((_frac(doc, entry, xy[0]), _frac(doc, entry, xy[1])))
    return out


def parse_torusdiagram(doc: Document) -> TorusDiagram:
    pts = []
    for e in doc.all("point"):
        parts = e.value.split()
        if len(parts) != 3:
            raise doc.fail(e, "point lines read 'x y sign'")
        pts.append(BridgePoint(_frac(doc, e, parts[0]), _frac(doc, e, parts[1]), _sign(doc, e, parts[2])))
    arcs = []
    for e in doc.all("arc"):
        parts = e.value.split()
        fields = dict(p.split("=", 1) for p in parts[1:] if "=" in p)
        if not parts or set(fields) != {"tail", "head", "path", "lift"}:
            raise doc.fail(e, "arc lines read 'F tail=.. head=.. path=x,y;.. lift=a,b;..'")
        try:
            lifts = [(int(a), int(b)) for a, b in _pairs(doc, e, fields["lift"])]
            arcs.append(TorusArc(parts[0], _int(doc, e, fields["tail"]) - 1, _int(doc, e, fields["head"]) - 1,
                                 tuple(_pairs(doc, e, fields["path"])), tuple(lifts)))
        except InputError as exc:
            raise doc.fail(e, str(exc)) from None
    try:
        return TorusDiagram(tuple(pts), tuple(arcs))
    except InputError as exc:
        raise doc.fail(doc.line_of("arc") or 1, str(exc)) from None


def emit_torusdiagram(d: TorusDiagram) -> list[str]:
    lines = [_line("point", f"{fmt_frac(p.x)} {fmt_frac(p.y)} {'+' if p.sign == 1 else '-'}") for p in d.points]
    for a in d.arcs:
        path = ";".join(f"{fmt_frac(x)},{fmt_frac(y)}" for x, y in a.path)
        lift = ";".join(f"{x},{y}" for x, y in a.lifts)
        lines.append(_line("arc", f"{a.family} tail={a.tail + 1} head={a.head + 1} path={path} lift={lift}"))
    return lines


# -- trisection records ------------------------------------------------------------------

def _triple(doc: Document, key: str, default=None) -> tuple[int, int, int]:
    e = doc.all(key)
    if not e:
        if default is None:
            raise doc.fail(1, f"missing {key!r}")
        return default
    vals = _ints(doc, e[0])
    if len(vals) != 3:
        raise doc.fail(e[0], f"{key} needs three integers")
    return tuple(vals)


def parse_trirec(doc: Document, base: Path | None = None) -> BridgeTrisectionRecord:
    b_entry = doc.all("b")
    if not b_entry:
        raise doc.fail(1, "missing 'b'")
    sources: dict[str, str] = {}
    braids: list[BraidWord | None] = [None, None, None]
    links: list[SectorLink | None] = [None, None, None]
    for k in (1, 2, 3):
        e = doc.all(f"sector{k}.braid")
        if e:
            if ":" not in e[0].value:
                raise doc.fail(e[0], "sector braids read 'strands : letters'")
            n, letters = e[0].value.split(":", 1)
            n = _int(doc, e[0], n.strip())
            braids[k - 1] = BraidWord(n, _braid_letters(doc, e[0], n, letters))
        le, re_ = doc.all(f"sector{k}.link"), doc.all(f"sector{k}.roles")
        if le:
            sources[f"sector{k}.link"] = le[0].value
            pd = parse_pd(read_document(_resolve(le[0].value, base), "pd"))
            if not re_:
                raise doc.fail(le[0], "a sector link needs roles")
            roles = tuple(None if r == "-" else _int(doc, re_[0], r) for r in re_[0].value.split())
            if len(roles) != 3 or roles[0] is None:
                raise doc.fail(re_[0], "roles read 'K own next' with '-' for an empty spine link")
            try:
                links[k - 1] = SectorLink(pd, roles)
            except InputError as exc:
                raise doc.fail(re_[0], str(exc)) from None
    diagram = None
    de = doc.all("diagram")
    if de:
        sources["diagram"] = de[0].value
        diagram = parse_torusdiagram(read_document(_resolve(de[0].value, base), "torusdiagram"))
    ints = {key: _triple(doc, key) for key in ("w", "lk_own", "lk_next")}
    # a field is diagram-computed when every sector link reproduces it
    readers = {"w": lambda s: s.writhe(), "lk_own": lambda s: s.lk(1), "lk_next": lambda s: s.lk(2)}
    provenance = {}
    for key, vals in ints.items():
        if all(links) and all(readers[key](s) == v for s, v in zip(links, vals)):
            provenance[key] = DIAGRAM
    try:
        return BridgeTrisectionRecord(
            b=_int(doc, b_entry[0]), c=_triple(doc, "c"), **ints,
            spine_summands=_triple(doc, "spine_summands", (0, 0, 0)),
            braids=tuple(braids), links=tuple(links), diagram=diagram, sources=sources,
            provenance=provenance, name=doc.source)
    except InputError as exc:
        raise doc.fail(1, str(exc)) from None


def emit_trirec(r: BridgeTrisectionRecord) -> list[str]:
    lines = [_line("b", str(r.b))]
    for key in ("c", "w", "lk_own", "lk_next"):
        lines.append(_line(key, _join(getattr(r, key))))
    if any(r.spine_summands):
        lines.append(_line("spine_summands", _join(r.spine_summands)))
    if "diagram" in r.sources:
        lines.append(_line("diagram", r.sources["diagram"]))
    for k in (1, 2, 3):
        br = r.braids[k - 1]
        if br is not None:
            lines.append(_line(f"sector{k}.braid", f"{br.strands} : {_join(br.letters)}".rstrip()))
        link = r.links[k - 1]
        if link is not None:
            lines.append(_line(f"sector{k}.link", r.sources.get(f"sector{k}.link", "")))
            lines.append(_line(f"sector{k}.roles", _join("-" if x is None else x for x in link.roles)))
    return lines


# -- lattice ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeInput:
    form: tuple[str, ...]
    chi: int
    sigma: int
    classes: tuple[tuple[int, ...], ...] = ()
    c1: tuple[int, ...] | None = None
    bound: int = 19
    class_data: tuple[tuple[str, int, int], ...] = ()


def parse_lattice(doc: Document) -> LatticeInput:
    chi, sigma = doc.all("chi"), doc.all("sigma")
    if not chi or not sigma:
        raise doc.fail(1, "lattice files need 'chi' and 'sigma'")
    data = []
    for e in doc.all("class_data"):
        if ":" not in e.value:
            raise doc.fail(e, "class_data lines read 'label : K.K <c1,K>'")
        label, nums = e.value.split(":", 1)
        vals = _ints(doc, e, nums)
        if len(vals) != 2:
            raise doc.fail(e, "class_data needs two integers")
        data.append((label.strip(), vals[0], vals[1]))
    c1 = doc.all("c1")
    bound = doc.all("bound")
    return LatticeInput(
        form=tuple((doc.get("form") or "").split()), chi=_int(doc, chi[0]), sigma=_int(doc, sigma[0]),
        classes=tuple(tuple(_ints(doc, e)) for e in doc.all("class")),
        c1=tuple(_ints(doc, c1[0])) if c1 else None, bound=_int(doc, bound[0]) if bound else 19,
        class_data=tuple(data))


def emit_lattice(x: LatticeInput) -> list[str]:
    lines = []
    if x.form:
        lines.append(_line("form", _join(x.form)))
    lines += [_line("chi", str(x.chi)), _line("sigma", str(x.sigma))]
    lines += [_line("class", _join(c)) for c in x.classes]
    if x.c1 is not None:
        lines.append(_line("c1", _join(x.c1)))
    if x.bound != 19:
        lines.append(_line("bound", str(x.bound)))
    lines += [_line("class_data", f"{lab} : {k2} {c1k}") for lab, k2, c1k in x.class_data]
    return lines


# -- grids and form fields ------------------------------------------------------------------

def _num(doc: Document, entry: Entry, text: str) -> float:
    import sympy
    try:
        return float(sympy.sympify(text, locals={"pi": sympy.pi}))
    except (sympy.SympifyError, TypeError, ValueError):
        raise doc.fail(entry, f"expected a number, got {text!r}") from None


def parse_grid(doc: Document):
    from .graft.forms import Axis, GridChart
    axes = []
    for e in doc.all("axis"):
        parts = e.value.split()
        if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] != "periodic"):
            raise doc.fail(e, "axis lines read 'name samples lo hi [periodic]'")
        try:
            axes.append(Axis(parts[0], _int(doc, e, parts[1]), _num(doc, e, parts[2]), _num(doc, e, parts[3]),
                             len(parts) == 5))
        except InputError as exc:
            raise doc.fail(e, str(exc)) from None
    fixed = {}
    for e in doc.all("fixed"):
        parts = e.value.split()
        if len(parts) != 2:
            raise doc.fail(e, "fixed lines read 'name value'")
        fixed[parts[0]] = _num(doc, e, parts[1])
    try:
        return GridChart(tuple(axes), fixed)
    except InputError as exc:
        raise doc.fail(doc.line_of("axis") or 1, str(exc)) from None


def _fmt_float(v: float) -> str:
    return repr(float(v)) if float(v) != int(v) else str(int(v))


def emit_grid(chart) -> list[str]:
    lines = [_line("axis", f"{a.name} {a.n} {_fmt_float(a.lo)} {_fmt_float(a.hi)}" + (" periodic" if a.periodic else ""))
             for a in chart.axes]
    lines += [_line("fixed", f"{k} {_fmt_float(v)}") for k, v in chart.fixed.items()]
    return lines


@dataclass(frozen=True)
class FormSpec:
    """A form given by coefficient expressions in the chart's coordinate names."""

    degree: int
    chart: object
    components: tuple[tuple[tuple[str, ...], str], ...] = field(default_factory=tuple)
    axis_text: tuple[str, ...] = ()

    def field(self, chart=None):
        import sympy
        from .graft.forms import FormField
        ch = chart or self.chart
        names = [a.name for a in ch.axes] + list(ch.fixed)
        syms = {n: sympy.Symbol(n) for n in names}
        parts = {}
        for idx, expr in self.components:
            fn = sympy.lambdify([syms[n] for n in names], sympy.sympify(expr, locals=syms), "numpy")
            parts[idx] = (lambda c, fn=fn: np.broadcast_to(fn(*[c[n] for n in names]), ch.shape))
        return FormField.from_functions(ch, self.degree, parts)


def parse_formfield(doc: Document) -> FormSpec:
    import sympy
    deg = doc.all("degree")
    if not deg:
        raise doc.fail(1, "missing 'degree'")
    chart = parse_grid(doc)
    names = {a.name for a in chart.axes} | set(chart.fixed)
    comps = []
    for e in doc.all("component"):
        if ":" not in e.value:
            raise doc.fail(e, "component lines read 'axis names : expression'")
        idx, expr = (s.strip() for s in e.value.split(":", 1))
        idx_t = tuple(idx.split()) if idx != "1" else ()
        if len(idx_t) != _int(doc, deg[0]) or not set(idx_t) <= {a.name for a in chart.axes}:
            raise doc.fail(e, f"component {idx!r} does not match the degree and axes")
        try:
            free = {str(s) for s in sympy.sympify(expr).free_symbols}
        except sympy.SympifyError:
            raise doc.fail(e, f"cannot parse expression {expr!r}") from None
        if not free <= names | {"pi"}:
            raise doc.fail(e, f"expression uses unknown names {sorted(free - names)}")
        comps.append((idx_t, expr))
    return FormSpec(_int(doc, deg[0]), chart, tuple(comps))


def emit_formfield(f: FormSpec) -> list[str]:
    lines = [_line("degree", str(f.degree))] + emit_grid(f.chart)
    lines += [_line("component", f"{' '.join(idx) if idx else '1'} : {expr}") for idx, expr in f.components]
    return lines


# -- entry points ------------------------------------------------------------------------------

PARSERS = {
    "braid": parse_braid, "pd": parse_pd, "tangle": parse_tangle, "monodromy": parse_monodromy,
    "torusdiagram": parse_torusdiagram, "lattice": parse_lattice, "grid": parse_grid,
    "formfield": parse_formfield,
}
EMITTERS = {
    "braid": emit_braid, "pd": emit_pd, "tangle": emit_tangle, "monodromy": emit_monodromy,
    "torusdiagram": emit_torusdiagram, "trirec": emit_trirec, "lattice": emit_lattice, "grid": emit_grid,
    "formfield": emit_formfield,
}
CORPUS_ENV = "TRISECTKIT_CORPUS"


def corpus_dir() -> Path:
    env = os.environ.get(CORPUS_ENV)
    return Path(env) if env else Path(__file__).parent / "corpus"


def _resolve(path: str | Path, base: Path | None = None) -> Path:
    p = Path(path)
    for cand in ([base / p] if base is not None and not p.is_absolute() else []) + [p, corpus_dir() / p]:
        if cand.is_file():
            return cand
    raise InputError(f"{path}: no such file (also looked in {corpus_dir()})")


def read_document(path: str | Path, kind: str | None = None) -> Document:
    p = _resolve(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{p}: not UTF-8 text") from None
    doc = tokenize(text, str(path))
    if kind is not None and doc.kind != kind:
        raise InputError(f"{path}:1: expected a {kind} file, found {doc.kind}")
    return doc


def parse_text(text: str, kind: str | None = None, source: str = "<text>", base: Path | None = None):
    doc = tokenize(text, source)
    if kind is not None and doc.kind != kind:
        raise InputError(f"{source}:1: expected a {kind} file, found {doc.kind}")
    if doc.kind == "trirec":
        return parse_trirec(doc, base)
    return PARSERS[doc.kind](doc)


def parse_input(path: str | Path, kind: str | None = None):
    p = _resolve(path)
    try:
        text = p.read_text(encoding="utf-8")
    except UnicodeDecodeError:
        raise InputError(f"{p}: not UTF-8 text") from None
    return parse_text(text, kind, str(path), p.parent)


def emit(value, kind: str) -> str:
    if kind not in EMITTERS:
        raise InputError(f"unknown kind {kind!r}")
    return "\n".join([kind, *EMITTERS[kind](value)]) + "\n"
