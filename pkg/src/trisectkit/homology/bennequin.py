from __future__ import annotations

from ..braids import BraidWord, cyclic_reduce, transverse_self_linking
from ..verdict import InputError, Verdict
from .diagram import PlanarDiagram, closure_pd
from .khovanov import BINARY, kauffman_bracket, khovanov, unlink_ranks
from .lee import LEE_BUDGET, lee_s_invariant
from .polynomial import Q_PLUS_QINV


def braid_s_invariant(a: BraidWord, budget: int = LEE_BUDGET) -> int:
    # conjugation and free cancellation do not change the closure
    return lee_s_invariant(closure_pd(cyclic_reduce(a)), budget).s


def slice_bennequin_gap(a: BraidWord, summands: int = 0, budget: int = LEE_BUDGET) -> int:
    """``(s - 1) - sl`` for a braid whose closure is a knot in S^3.

    ``summands`` is the number k of S^1 x S^2 summands of the ambient
    manifold; the s-invariant bound is only available for k = 0.
    """
    if summands:
        raise InputError(f"no s-invariant bound is available in #_{summands} S^1 x S^2")
    if closure_pd(a).components != 1:
        raise InputError("closure is not a knot")
    return braid_s_invariant(a, budget) - 1 - transverse_self_linking(a)


def slice_bennequin_verdict(a: BraidWord, summands: int = 0, budget: int = LEE_BUDGET) -> Verdict:
    """sl <= s - 1 as a verdict; refuses (status error) when k > 0."""
    if summands:
        return Verdict("error", reason=f"bound not certified for k={summands} > 0",
                       witness={"summands": summands})
    sl = transverse_self_linking(a)
    s = braid_s_invariant(a, budget)
    return Verdict.inequality(sl, s - 1, witness={"s": s, "sl": sl})


def unlink_certificate(d: PlanarDiagram, budget: int = 14) -> Verdict:
    """Sanity filter only: "consistent" is not a proof that D is an unlink."""
    c = d.components
    bracket = kauffman_bracket(d)
    expected = Q_PLUS_QINV ** c
    if bracket != expected:
        return Verdict("refuted", lhs=str(bracket), rhs=str(expected),
                       witness={"stage": "bracket"})
    ranks = khovanov(d, BINARY, budget)
    if ranks.ranks != unlink_ranks(c).ranks:
        return Verdict("refuted", witness={"stage": "khovanov", "ranks": ranks.ranks})
    return Verdict("consistent", lhs=str(bracket), rhs=str(expected),
                   witness={"components": c})
