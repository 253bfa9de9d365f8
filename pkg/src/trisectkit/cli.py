"""Command-line front end.

Each command prints a human-readable summary followed by a ``[report]``
block of ``key=value`` lines.  Exit codes: 0 holds/consistent,
1 violated/refuted, 2 input error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .braids import DEFAULT_WORD_LIMIT, BraidWord, FactorizationRecord, transverse_self_linking, verify_factorization
from .formats import FormSpec, LatticeInput, TangleFile, corpus_dir, parse_input
from .verdict import BudgetExceeded, InputError, Verdict

EXIT = {"holds": 0, "consistent": 0, "violated": 1, "refuted": 1, "error": 2}

# documented option ranges
GRID_RANGE = (8, 512)
TOL_RANGE = (0.0, 1.0)
BUDGET_RANGE = (1, 10**9)


@dataclass(frozen=True)
class Manifest:
    """A validated command invocation."""

    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    grid: int | None = None
    tol: float | None = None
    budget: int | None = None
    sigma_coefficient: int = 3
    output: str | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        spec = COMMANDS[self.command]
        unknown = set(self.inputs) - set(spec.inputs)
        if unknown:
            raise InputError(f"{self.command}: unknown input keys {sorted(unknown)}")
        unknown = set(self.options) - set(spec.options)
        if unknown:
            raise InputError(f"{self.command}: unknown options {sorted(unknown)}")
        if self.grid is not None and not GRID_RANGE[0] <= self.grid <= GRID_RANGE[1]:
            raise InputError(f"--grid must lie in [{GRID_RANGE[0]}, {GRID_RANGE[1]}], got {self.grid}")
        if self.tol is not None and not (TOL_RANGE[0] < self.tol < TOL_RANGE[1]) or (
                self.tol is not None and math.isnan(self.tol)):
            raise InputError(f"--tol must lie in (0, 1), got {self.tol}")
        if self.budget is not None and not BUDGET_RANGE[0] <= self.budget <= BUDGET_RANGE[1]:
            raise InputError(f"--budget must be a positive integer, got {self.budget}")
        if self.sigma_coefficient not in (2, 3):
            raise InputError("--sigma-coefficient must be 2 or 3")


class Report:
    def __init__(self, command: str) -> None:
        self.command = command
        self.human: list[str] = []
        self.items: list[tuple[str, str]] = [("command", command)]
        self.status = "holds"
        self.code: int | None = None

    def say(self, line: str) -> None:
        self.human.append(line)

    def put(self, key: str, value: Any) -> None:
        self.items.append((key, _fmt(value)))

    def verdict(self, v: Verdict, prefix: str = "verdict") -> None:
        p = f"{prefix}."
        self.put(f"{p}status", v.status)
        for key in ("lhs", "rhs", "slack"):
            val = getattr(v, key)
            if val is not None:
                self.put(f"{p}{key}", val)
        for k, val in v.witness.items():
            self.put(f"{p}witness.{k}", val)
        for k, val in v.provenance.items():
            self.put(f"{p}provenance.{k}", val)
        if v.reason:
            self.put(f"{p}reason", v.reason)

    def set_status(self, status: str) -> None:
        self.status = status

    @property
    def exit_code(self) -> int:
        return EXIT[self.status] if self.code is None else self.code

    def block(self) -> str:
        lines = ["[report]", *(f"{k}={v}" for k, v in self.items), f"status={self.status}",
                 f"exit={self.exit_code}"]
        return "\n".join(lines) + "\n"

    def text(self) -> str:
        return "\n".join(self.human) + ("\n" if self.human else "") + self.block()


def _fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6e}"
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    if isinstance(value, dict):
        return ";".join(f"{k}:{_fmt(v)}" for k, v in value.items())
    return str(value).replace("\n", " ")


def _combine(statuses: list[str]) -> str:
    for s in ("error", "violated", "refuted"):
        if s in statuses:
            return s
    return "consistent" if "consistent" in statuses else "holds"


# -- commands ----------------------------------------------------------------------


def _need(m: Manifest, key: str) -> str:
    if key not in m.inputs or m.inputs[key] is None:
        raise InputError(f"{m.command}: missing input {key!r}")
    return m.inputs[key]


def _knot_diagram(path: str):
    from .homology.diagram import closure_pd
    value = parse_input(path)
    if isinstance(value, FactorizationRecord):
        raise InputError(f"{path}: expected a braid word or pd file")
    if isinstance(value, BraidWord):
        return closure_pd(value), value
    from .homology.diagram import PlanarDiagram
    if not isinstance(value, PlanarDiagram):
        raise InputError(f"{path}: expected a braid word or pd file")
    return value, None


def cmd_verify_factorization(m: Manifest, r: Report) -> None:
    rec = parse_input(_need(m, "input"), "braid")
    if not isinstance(rec, FactorizationRecord):
        raise InputError("verify-factorization needs a file with factor lines")
    v = verify_factorization(rec, m.budget or DEFAULT_WORD_LIMIT)
    r.say(f"degree {rec.degree}, {len(rec.factors)} factors: {v.status} (stage {v.witness.get('stage')})")
    r.put("degree", rec.degree)
    r.put("factors", len(rec.factors))
    r.verdict(v)
    r.set_status(v.status)


def cmd_s_invariant(m: Manifest, r: Report) -> None:
    from .homology.lee import LEE_BUDGET, lee_s_invariant
    d, _ = _knot_diagram(_need(m, "input"))
    summary = lee_s_invariant(d, m.budget or LEE_BUDGET)
    r.say(f"s = {summary.s}")
    r.put("crossings", len(d))
    r.put("s", summary.s)
    r.put("levels", summary.levels)


def cmd_sl(m: Manifest, r: Report) -> None:
    b = parse_input(_need(m, "braid"), "braid")
    if not isinstance(b, BraidWord):
        raise InputError("sl needs a braid word, not a factorization")
    sl = transverse_self_linking(b)
    r.say(str(sl))
    r.put("strands", b.strands)
    r.put("exponent_sum", b.exponent_sum)
    r.put("sl", sl)
    if m.options.get("bennequin"):
        from .homology.bennequin import slice_bennequin_verdict
        from .homology.lee import LEE_BUDGET
        v = slice_bennequin_verdict(b, m.options.get("summands") or 0, m.budget or LEE_BUDGET)
        r.say(f"sl <= s - 1: {v.status}")
        r.verdict(v, "bennequin")
        r.set_status(v.status)


def cmd_kh(m: Manifest, r: Report) -> None:
    from .homology.khovanov import KHOVANOV_BUDGET, kauffman_bracket, khovanov
    d, _ = _knot_diagram(_need(m, "input"))
    coeff = m.options.get("coeff") or "Q"
    ranks = khovanov(d, coeff, m.budget or KHOVANOV_BUDGET)
    r.say(f"Khovanov homology over {coeff}, {len(d)} crossings")
    for (i, j), n in ranks.ranks.items():
        r.say(f"  i={i:>3} j={j:>3} rank {n}")
    euler_ok = ranks.euler() == kauffman_bracket(d, max(len(d), m.budget or 0))
    r.put("coeff", coeff)
    r.put("crossings", len(d))
    r.put("ranks", {f"{i}:{j}": n for (i, j), n in ranks.ranks.items()})
    r.put("total", ranks.total())
    r.put("euler_matches_bracket", euler_ok)
    r.set_status("holds" if euler_ok else "violated")


def cmd_unlink_cert(m: Manifest, r: Report) -> None:
    from .homology.bennequin import unlink_certificate
    d, _ = _knot_diagram(_need(m, "input"))
    v = unlink_certificate(d, m.budget or 14)
    r.say(f"unlink certificate: {v.status}" + (" (necessary conditions only)" if v.ok else ""))
    r.verdict(v)
    r.set_status(v.status)


def _record(path: str):
    return parse_input(path, "trirec")


def cmd_trisect_check(m: Manifest, r: Report) -> None:
    from .trisect.diagram import beta_positive, symplectic_area
    from .trisect.records import (SelfLinkingMismatch, c1_pairing, diagram_mismatches, euler_characteristic,
                                  sector_self_linking, self_intersection, total_self_linking_identity)
    rec = _record(_need(m, "input"))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", SelfLinkingMismatch)
        sls = [sector_self_linking(rec, lam) for lam in (1, 2, 3)]
    chi, c1k, k2 = euler_characteristic(rec), c1_pairing(rec), self_intersection(rec)
    ident = total_self_linking_identity(rec)
    mism = diagram_mismatches(rec)
    r.say(f"chi = {chi}, <c1,K> = {c1k}, K.K = {k2}")
    r.say(f"sector self-linking {sls}; total identity {ident.lhs} = {ident.rhs}: {ident.status}")
    for w in caught:
        r.say(f"warning: {w.message}")
    for line in mism:
        r.say(f"mismatch: {line}")
    r.put("b", rec.b)
    r.put("c", rec.c)
    r.put("chi", chi)
    r.put("c1K", c1k)
    r.put("K2", k2)
    r.put("sector_sl", sls)
    for key, tag in rec.provenance.items():
        r.put(f"provenance.{key}", tag)
    r.verdict(ident, "total_sl")
    r.put("mismatches", len(mism))
    statuses = [ident.status, "violated" if mism else "holds"]
    if rec.diagram is not None:
        positive = all(beta_positive(a) for a in rec.diagram.arcs)
        clashes = rec.diagram.family_disjoint()
        area = symplectic_area(rec.diagram)
        r.say(f"diagram: beta-positive {positive}, family clashes {len(clashes)}, area {area}")
        r.put("diagram.beta_positive", positive)
        r.put("diagram.clashes", len(clashes))
        r.put("diagram.area", area)
        statuses.append("holds" if positive and not clashes else "violated")
    r.set_status(_combine(statuses))


def cmd_adjunction(m: Manifest, r: Report) -> None:
    from .trisect.records import adjunction_verdict, c1_pairing, euler_characteristic, self_intersection
    mode = m.options.get("mode") or "standard"
    if m.inputs.get("record"):
        if any(m.options.get(k) is not None for k in ("chi", "c1k", "k2")):
            raise InputError("give either --record or --chi/--c1k/--k2, not both")
        rec = _record(m.inputs["record"])
        chi, c1k, k2 = euler_characteristic(rec), c1_pairing(rec), self_intersection(rec)
        prov = "diagram-computed" if set(rec.provenance.values()) - {"user-supplied"} else "user-supplied"
    else:
        vals = [m.options.get(k) for k in ("chi", "c1k", "k2")]
        if any(v is None for v in vals):
            raise InputError("adjunction needs --record or all of --chi, --c1k, --k2")
        chi, c1k, k2 = vals
        prov = "user-supplied"
    v = adjunction_verdict(chi, c1k, k2, mode)
    r.say(f"chi = {chi} <= {v.rhs} ({mode} bound): {v.status}")
    r.put("chi", chi)
    r.put("mode", mode)
    r.put("provenance", prov)
    r.verdict(v)
    r.set_status(v.status)


def cmd_whitney(m: Manifest, r: Report) -> None:
    from .trisect.records import whitney_band_bookkeeping
    rec = _record(_need(m, "record"))
    n = m.options.get("n")
    if n is None:
        raise InputError("whitney needs --n")
    res = whitney_band_bookkeeping(rec, n)
    r.say(f"chi(F) = {res.chi_f}, sl(L) = {res.sl_l}; sl(L) <= -chi(F): {res.verdict.status}")
    r.put("n", n)
    r.put("chi_F", res.chi_f)
    r.put("sl_L", res.sl_l)
    r.verdict(res.verdict)
    r.set_status(res.verdict.status)


def cmd_lattice(m: Manifest, r: Report) -> None:
    from .trisect.lattice import lattice_obstructions
    x = parse_input(_need(m, "input"), "lattice")
    assert isinstance(x, LatticeInput)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = lattice_obstructions(list(x.form), x.chi, x.sigma, list(x.classes), c1=x.c1,
                                   bound=x.bound, sigma_coefficient=m.sigma_coefficient,
                                   class_data=list(x.class_data))
    for w in caught:
        r.say(f"warning: {w.message}")
    r.say(f"target c.c = {rep.target}; {len(rep.candidates)} characteristic candidates")
    r.put("target", rep.target)
    r.put("sigma_coefficient", m.sigma_coefficient)
    r.put("candidates", len(rep.candidates))
    if rep.note:
        r.say(rep.note)
        r.put("note", rep.note)
    for k, (c, rows) in enumerate(rep.rows.items()):
        r.say(f"  c1 = {c}: " + ", ".join(f"{row.label} bound {row.bound}" for row in rows))
        r.put(f"candidate.{k}", c)
        r.put(f"candidate.{k}.sphere_ruled_out", [row.sphere_ruled_out for row in rows])
    if rep.rows:
        r.put("sphere_obstructed_for_all", rep.sphere_obstructed_for_all())
    for row in rep.data_rows:
        r.say(f"  {row.label}: chi <= {row.bound}, genus >= {row.min_genus}")
        r.put(f"class.{row.label}.bound", row.bound)
        r.put(f"class.{row.label}.min_genus", row.min_genus)
    if x.form and not rep.candidates:
        r.set_status("refuted")


def _regrid(chart, n: int | None):
    from .graft.forms import GridChart
    if n is None:
        return chart
    return GridChart(tuple(replace(a, n=n) for a in chart.axes), dict(chart.fixed))


def _graft_inputs(m: Manifest):
    from .graft.examples import dxdy_inputs, saddle_inputs
    from .graft.graft import GraftInputs, SingularPoint
    example = m.options.get("example")
    if example:
        if any(m.inputs.get(k) for k in ("beta1", "beta2", "mu1", "mu2")):
            raise InputError("give either --example or form files, not both")
        if example == "dxdy":
            return dxdy_inputs(m.grid or 64)
        n = m.grid or 65
        return saddle_inputs(n + 1 - n % 2)
    fields = {}
    chart = None
    for key in ("beta1", "beta2", "mu1", "mu2"):
        path = m.inputs.get(key)
        if path is None:
            continue
        spec = parse_input(path, "formfield")
        assert isinstance(spec, FormSpec)
        ch = _regrid(spec.chart, m.grid)
        if chart is None:
            chart = ch
        elif ch != chart:
            raise InputError(f"{path}: chart differs from the other form files")
        fields[key] = spec.field(chart)
    if "beta1" not in fields or "beta2" not in fields:
        raise InputError("graft-verify needs --beta1 and --beta2 (or --example)")
    singular = []
    for text in m.options.get("singular") or ():
        parts = text.split()
        if len(parts) != 3 or parts[2] not in ("+", "-"):
            raise InputError(f"--singular takes 'x y sign', got {text!r}")
        singular.append(SingularPoint(float(parts[0]), float(parts[1]), 1 if parts[2] == "+" else -1))
    return GraftInputs(fields["beta1"], fields["beta2"], fields.get("mu1"), fields.get("mu2"), tuple(singular))


def cmd_graft_verify(m: Manifest, r: Report) -> None:
    from .graft.graft import GraftConfig, graft_margin, tune_graft
    inp = _graft_inputs(m)
    fixed = [m.options.get(k) for k in ("eps", "delta", "eps0")]
    if any(v is not None for v in fixed):
        if any(v is None for v in fixed):
            raise InputError("a fixed configuration needs all of --eps, --delta, --eps0")
        cfg = GraftConfig(*fixed)
        rep = graft_margin(inp, cfg)
        steps = 0
    else:
        res = tune_graft(inp, max_steps=m.budget or 40)
        cfg, steps = res.config, res.steps
        rep = graft_margin(inp, cfg, check=False)
    r.say(f"eps={cfg.eps:g} delta={cfg.delta:g} eps0={cfg.eps0:g}: margin {rep.margin:.3e}")
    r.put("grid", inp.chart.shape)
    r.put("eps", float(cfg.eps))
    r.put("delta", float(cfg.delta))
    r.put("eps0", float(cfg.eps0))
    r.put("tune_steps", steps)
    r.put("margin", rep.margin)
    r.put("argmin", {k: float(v) for k, v in rep.argmin.items()})
    r.set_status("holds" if rep.margin > 0 else "violated")


def cmd_fs_check(m: Manifest, r: Report) -> None:
    from .graft.fubini import verify_fs_identities
    tol = m.tol or 1e-8
    rep = verify_fs_identities(m.grid or 64)
    worst = rep.residuals["beta1"]
    r.say(f"beta_1 residual {worst:.3e} (tol {tol:g}); boundary contact margin {rep.margin:.3e}")
    r.put("grid", m.grid or 64)
    r.put("tol", float(tol))
    for k, v in rep.residuals.items():
        r.put(f"residual.{k}", float(v))
    r.put("margin", rep.margin)
    ok = worst < tol and rep.margin > 0
    r.set_status("holds" if ok else "violated")


def cmd_relations_table(m: Manifest, r: Report) -> None:
    from .fixtures import TWIST_NAMES
    from .grouplab import FreeWord, verify_relation_trivial, wirtinger
    depth = m.options.get("depth") or 0
    if not 0 <= depth <= 50:
        raise InputError("--depth must lie in [0, 50]")
    paths = m.options.get("files") or [f"half_twist_{name}.tangle" for name in TWIST_NAMES.values()]
    statuses = []
    for path in paths:
        tf = parse_input(path, "tangle")
        assert isinstance(tf, TangleFile)
        pres = wirtinger(tf.diagram)
        # the longitude stays a free letter: conjugates must cancel around it
        sub = {**pres.substitution, "l": FreeWord.gen("l")}
        words = []
        for rho in tf.relations:
            for j in range(-depth, depth + 1):
                lj = FreeWord.gen("l", j) if j else FreeWord()
                words.append(lj * rho * lj.inverse())
        ok = [verify_relation_trivial(w, pres, sub) for w in words]
        name = Path(path).stem
        r.say(f"{name}: {sum(ok)}/{len(ok)} relations reduce to 1 ({', '.join(str(w) for w in tf.relations)})")
        r.put(f"{name}.relations", len(words))
        r.put(f"{name}.trivial", all(ok))
        statuses.append("holds" if all(ok) else "violated")
    r.set_status(_combine(statuses))


@dataclass(frozen=True)
class CommandSpec:
    run: Callable[[Manifest, Report], None]
    help: str
    inputs: tuple[str, ...] = ()
    options: tuple[str, ...] = ()


COMMANDS: dict[str, CommandSpec] = {
    "verify-factorization": CommandSpec(cmd_verify_factorization, "check a full-twist factorization",
                                        ("input",)),
    "s-invariant": CommandSpec(cmd_s_invariant, "Rasmussen s-invariant of a knot (pd or braid file)", ("input",)),
    "sl": CommandSpec(cmd_sl, "self-linking number of a braid closure", ("braid",), ("bennequin", "summands")),
    "kh": CommandSpec(cmd_kh, "Khovanov homology ranks", ("input",), ("coeff",)),
    "unlink-cert": CommandSpec(cmd_unlink_cert, "necessary conditions for a diagram to be an unlink", ("input",)),
    "trisect-check": CommandSpec(cmd_trisect_check, "integer identities of a bridge-trisection record",
                                 ("input",)),
    "adjunction": CommandSpec(cmd_adjunction, "adjunction inequality", ("record",), ("chi", "c1k", "k2", "mode")),
    "whitney": CommandSpec(cmd_whitney, "Euler characteristic and self-linking after Whitney bands",
                           ("record",), ("n",)),
    "lattice": CommandSpec(cmd_lattice, "characteristic-vector adjunction bounds", ("input",)),
    "graft-verify": CommandSpec(cmd_graft_verify, "build a grafted contact form and check its margin",
                                ("beta1", "beta2", "mu1", "mu2"), ("example", "singular", "eps", "delta", "eps0")),
    "fs-check": CommandSpec(cmd_fs_check, "Fubini-Study Liouville identities and boundary contact margin"),
    "relations-table": CommandSpec(cmd_relations_table, "verify the half-twist relation table",
                                   options=("depth", "files")),
}


def run_command(m: Manifest) -> tuple[int, Report]:
    """Execute a manifest; never raises."""
    r = Report(m.command)
    try:
        COMMANDS[m.command].run(m, r)
    except InputError as exc:
        r.put("reason", exc)
        r.set_status("error")
        r.say(f"input error: {exc}")
        return 2, r
    except BudgetExceeded as exc:
        r.put("reason", exc)
        r.say(f"budget exceeded: {exc}")
        r.set_status("error")
        r.code = 3
        return 3, r
    except Exception as exc:  # noqa: BLE001 -- every path must map to an exit code
        r.put("reason", f"internal: {type(exc).__name__}: {exc}")
        r.set_status("error")
        r.say(f"error: {type(exc).__name__}: {exc}")
        return 2, r
    return EXIT[r.status], r


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="numerical tolerance, in (0, 1)")
    common.add_argument("--grid", type=int, help=f"grid samples per axis, in [{GRID_RANGE[0]}, {GRID_RANGE[1]}]")
    common.add_argument("--budget", type=int,
                        help="resource cap: crossings (homology), word letters (factorizations), "
                             "search steps (graft-verify)")
    common.add_argument("--output", help="also write the [report] block to this file")

    p = argparse.ArgumentParser(prog="trisectkit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=COMMANDS[name].help)

    for name in ("verify-factorization", "s-invariant", "kh", "unlink-cert", "trisect-check", "lattice"):
        sp = add(name)
        sp.add_argument("input")
        if name == "kh":
            sp.add_argument("--coeff", choices=("Q", "F2"), default="Q")
        if name == "lattice":
            sp.add_argument("--sigma-coefficient", type=int, choices=(2, 3), default=3)
    sp = add("sl")
    sp.add_argument("--braid", required=True)
    sp.add_argument("--bennequin", action="store_true", help="also check sl <= s - 1")
    sp.add_argument("--summands", type=int, default=0, help="number of S^1 x S^2 summands")
    sp = add("adjunction")
    sp.add_argument("--record")
    sp.add_argument("--chi", type=int)
    sp.add_argument("--c1k", type=int)
    sp.add_argument("--k2", type=int)
    sp.add_argument("--mode", choices=("standard", "zero-area"), default="standard")
    sp = add("whitney")
    sp.add_argument("--record", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp = add("graft-verify")
    sp.add_argument("--example", choices=("dxdy", "saddle"))
    for key in ("beta1", "beta2", "mu1", "mu2"):
        sp.add_argument(f"--{key}")
    sp.add_argument("--singular", action="append", help="'x y sign' of a shared zero")
    for key in ("eps", "delta", "eps0"):
        sp.add_argument(f"--{key}", type=float, help="fixed configuration (skips the search)")
    add("fs-check")
    sp = add("relations-table")
    sp.add_argument("--depth", type=int, default=0, help="also check conjugates by l^j, |j| <= depth")
    sp.add_argument("files", nargs="*", help=f"tangle files (default: the four shipped models in {corpus_dir()})")
    return p


def manifest_from_args(ns: argparse.Namespace) -> Manifest:
    spec = COMMANDS[ns.command]
    vals = vars(ns)
    inputs = {k: vals[k] for k in spec.inputs if vals.get(k) is not None}
    options = {k: vals[k] for k in spec.options
               if vals.get(k) is not None and vals[k] is not False and vals[k] != []}
    return Manifest(ns.command, inputs, grid=ns.grid, tol=ns.tol, budget=ns.budget,
                    sigma_coefficient=vals.get("sigma_coefficient") or 3, output=ns.output, options=options)


def main(argv: list[str] | None = None) -> int:
    ns = _parser().parse_args(argv)
    try:
        m = manifest_from_args(ns)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        r = Report(ns.command)
        r.put("reason", exc)
        r.set_status("error")
        sys.stdout.write(r.block())
        return 2
    code, report = run_command(m)
    sys.stdout.write(report.text())
    if m.output:
        try:
            Path(m.output).write_text(report.block(), encoding="utf-8")
        except OSError as exc:
            print(f"cannot write {m.output}: {exc}", file=sys.stderr)
            return 2
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
