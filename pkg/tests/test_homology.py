from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisectkit import BudgetExceeded, InputError
from trisectkit.braids import BraidWord
from trisectkit.formats import parse_input
from trisectkit.homology.polynomial import Q_PLUS_QINV
from trisectkit.homology import (PlanarDiagram, closure_pd, kauffman_bracket, khovanov,
                                 lee_s_invariant, lee_total_rank, mirror, slice_bennequin_gap,
                                 slice_bennequin_verdict, unknot, unlink_certificate)
from trisectkit.homology.diagram import disjoint_union, linking_number, self_writhe
from trisectkit.homology.linalg import rank_binary, rank_rational
from trisectkit.homology.polynomial import LaurentPoly

TREFOIL = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}
CORPUS_PD = ["unknot.pd", "unknot_kink.pd", "trefoil.pd", "left_trefoil.pd", "hopf.pd", "figure8.pd",
             "t25.pd", "line_sector.pd"]


def test_pd_validation():
    with pytest.raises(InputError):
        PlanarDiagram(((1, 2, 3, 4, 1),))
    with pytest.raises(InputError):
        PlanarDiagram(((1, 2, 3, 3, 1),), free_loops=-1)


def test_components_and_linking():
    hopf = parse_input("hopf.pd")
    assert hopf.components == 2 and hopf.writhe() == 2
    assert linking_number(hopf, 0, 1) == 1
    assert linking_number(mirror(hopf), 0, 1) == -1
    t = parse_input("trefoil.pd")
    assert self_writhe(t, 0) == 3
    line = parse_input("line_sector.pd")
    assert line.components == 3 and linking_number(line, 0, 2) == 0


def test_polynomial_arithmetic():
    p = LaurentPoly({1: 1, -1: 1})
    assert p * p == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert p - p == LaurentPoly({})
    assert p ** 0 == LaurentPoly({0: 1})


def test_linear_algebra():
    assert rank_rational([{0: 1, 1: 2}, {0: 2, 1: 4}, {1: 1}]) == 2
    assert rank_binary([0b11, 0b01, 0b10]) == 2


def test_unknot_and_trefoil_ranks():
    assert khovanov(unknot()).ranks == {(0, 1): 1, (0, -1): 1}
    assert khovanov(parse_input("unknot_kink.pd")).ranks == {(0, 1): 1, (0, -1): 1}
    assert khovanov(parse_input("trefoil.pd")).ranks == TREFOIL
    left = khovanov(parse_input("left_trefoil.pd"))
    assert left.ranks == khovanov(parse_input("trefoil.pd")).mirrored().ranks


def test_hopf_and_figure_eight():
    assert khovanov(parse_input("hopf.pd")).ranks == {(0, 0): 1, (0, 2): 1, (2, 4): 1, (2, 6): 1}
    f8 = khovanov(parse_input("figure8.pd"))
    assert f8.total() == 6 and f8.ranks == f8.mirrored().ranks


def test_f2_ranks_of_trefoil_have_torsion_shadow():
    f2 = khovanov(parse_input("trefoil.pd"), "F2")
    # Z/2 torsion in degree (3, 7) shows up as two extra classes over F_2
    assert f2.total() == 6 and f2.ranks[(2, 7)] == 1 and f2.ranks[(3, 7)] == 1


@pytest.mark.parametrize("name", CORPUS_PD)
def test_euler_characteristic_is_bracket(name):
    d = parse_input(name)
    assert khovanov(d).euler() == kauffman_bracket(d)


def test_bracket_of_unlink():
    assert kauffman_bracket(unknot(3)) == Q_PLUS_QINV ** 3


@pytest.mark.parametrize("name, s", [("trefoil.pd", 2), ("left_trefoil.pd", -2), ("figure8.pd", 0),
                                     ("t25.pd", 4), ("unknot_kink.pd", 0)])
def test_s_invariant(name, s):
    assert lee_s_invariant(parse_input(name)).s == s


def test_s_invariant_t34():
    d = closure_pd(BraidWord(3, (1, 2) * 4))
    assert lee_s_invariant(d).s == 6


def test_lee_rank_is_two_to_components():
    for name in ("trefoil.pd", "hopf.pd", "figure8.pd", "line_sector.pd"):
        d = parse_input(name)
        assert lee_total_rank(d) == 2 ** d.components


def test_s_refuses_links_and_budget():
    with pytest.raises(InputError):
        lee_s_invariant(parse_input("hopf.pd"))
    with pytest.raises(BudgetExceeded):
        lee_s_invariant(parse_input("t25.pd"), budget=4)
    with pytest.raises(BudgetExceeded):
        khovanov(parse_input("t25.pd"), budget=3)


def _random_knot(rng: random.Random) -> BraidWord:
    while True:
        n = rng.randint(2, 4)
        b = BraidWord(n, tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(rng.randint(1, 10))))
        if closure_pd(b).components == 1:
            return b


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_s_is_odd_under_mirror(seed):
    b = _random_knot(random.Random(seed))
    d = closure_pd(b)
    assert lee_s_invariant(mirror(d)).s == -lee_s_invariant(d).s


def test_bennequin_gap_on_positive_braids():
    assert slice_bennequin_gap(BraidWord(2, (1, 1, 1))) == 0
    assert slice_bennequin_gap(BraidWord(3, (1, 2, 1, 2))) == 0
    assert slice_bennequin_gap(BraidWord(3, (1, -2, 1, -2))) == 2


def test_bennequin_refuses_summands():
    with pytest.raises(InputError):
        slice_bennequin_gap(BraidWord(2, (1, 1, 1)), summands=1)
    assert slice_bennequin_verdict(BraidWord(2, (1, 1, 1)), summands=2).status == "error"
    with pytest.raises(InputError):
        slice_bennequin_gap(BraidWord(2, (1, 1)))


def test_unlink_certificate():
    assert unlink_certificate(unknot(2)).status == "consistent"
    assert unlink_certificate(parse_input("unknot_kink.pd")).status == "consistent"
    v = unlink_certificate(parse_input("hopf.pd"))
    assert v.status == "refuted" and v.witness["stage"] == "bracket"
    assert unlink_certificate(disjoint_union(parse_input("trefoil.pd"), unknot(1))).status == "refuted"
