from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisectkit import InputError
from trisectkit.grouplab import FreeWord
from trisectkit.trisect import (FactorSpec, HArc, SurfaceHomotopyRecord, concentrate_longitudes,
                                flatten_and_count, line_diagram, point_push, symplectic_area,
                                transfer_longitude)
from trisectkit.trisect.homotopy import line_record, random_record, synthetic_diagram


def test_line_record():
    shr = line_record()
    assert shr.b == 1 and shr.c == (1, 1, 1) and shr.chi == 2
    assert shr.longitude_count() == 1
    out, count, positive = flatten_and_count(shr)
    assert count == 1 and positive
    assert symplectic_area(line_diagram()) == count


def test_point_push_sides():
    shr = SurfaceHomotopyRecord((-1, 1), ((HArc(0, 1),), (HArc(0, 1),), (HArc(0, 1),)),
                                {"z": FactorSpec("M0")})
    z = FreeWord.gen("z")
    pushed = point_push(shr, 1, z)
    assert all(s[0].word == z for s in pushed.arcs)
    pushed = point_push(shr, 0, z)
    assert all(s[0].word == z.inverse() for s in pushed.arcs)
    with pytest.raises(InputError):
        point_push(shr, 0, FreeWord.gen("unknown"))


def test_transfer_moves_longitudes():
    # two tau_1 arcs joined by a tau_2 arc from point 0 to point 3
    shr = SurfaceHomotopyRecord((-1, -1, 1, 1),
                                ((HArc(0, 2, FreeWord.gen("l", 2)), HArc(1, 3)),
                                 (HArc(0, 3), HArc(1, 2)),
                                 (HArc(0, 2), HArc(1, 3))))
    out = transfer_longitude(shr, 2, 0, 1)
    assert out.exponents(1) == [1, 1]
    assert out.longitude_count() == shr.longitude_count()
    back = transfer_longitude(out, 3, 0, -1)
    assert back.longitude_count() == shr.longitude_count()
    with pytest.raises(InputError):
        transfer_longitude(shr, 1, 0)


def test_transfer_refuses_non_flat_arc():
    alphabet = {"r": FactorSpec("R", "q")}
    shr = SurfaceHomotopyRecord((-1, 1), ((HArc(0, 1),), (HArc(0, 1, FreeWord.gen("r")),), (HArc(0, 1),)),
                                alphabet)
    with pytest.raises(InputError):
        transfer_longitude(shr, 2, 0)


def test_concentrate_and_flatten():
    shr = SurfaceHomotopyRecord((-1, -1, 1, 1),
                                ((HArc(0, 2, FreeWord.parse("l z")), HArc(1, 3, FreeWord.parse("l r"))),
                                 (HArc(0, 3), HArc(1, 2)),
                                 (HArc(0, 2), HArc(1, 3))),
                                {"z": FactorSpec("M0"), "r": FactorSpec("R", "q")})
    conc = concentrate_longitudes(shr)
    assert conc.exponents(1)[1:] == [0] and conc.longitude_count() == 2
    flat, count, positive = flatten_and_count(conc)
    assert count == 2 and positive and flat.chi == shr.chi
    assert flat.b > shr.b
    for i, arc in enumerate(flat.arcs[0]):
        p, _, rest = flat.label(1, i)
        assert abs(p) + len(rest) <= 1
    # the R factor left the tau_1 arcs and reappears as a flat tau_2 class
    assert not any("r" in a.word.generators() for a in flat.arcs[0])
    assert any("q" in a.word.generators() for a in flat.arcs[1])
    for lam in (2, 3):
        assert all(flat.label(lam, i)[1] for i in range(len(flat.arcs[lam - 1])))


def test_disconnected_record_refused():
    shr = SurfaceHomotopyRecord((-1, -1, 1, 1),
                                ((HArc(0, 2), HArc(1, 3)), (HArc(0, 2), HArc(1, 3)), (HArc(0, 2), HArc(1, 3))))
    with pytest.raises(InputError):
        flatten_and_count(shr)


def test_reserved_longitude_symbol():
    with pytest.raises(InputError):
        SurfaceHomotopyRecord((-1, 1), ((HArc(0, 1),),) * 3, {"l": FactorSpec("M0")})


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_normalization_invariants(seed):
    rng = random.Random(seed)
    shr = random_record(rng)
    assert shr.connected()
    conc = concentrate_longitudes(shr)
    assert conc.chi == shr.chi and conc.longitude_count() == shr.longitude_count()
    flat, count, positive = flatten_and_count(conc)
    assert flat.chi == shr.chi and count == shr.longitude_count()
    area = symplectic_area(synthetic_diagram(shr, rng))
    assert (area > 0) == positive and area == count
