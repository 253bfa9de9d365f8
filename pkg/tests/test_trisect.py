from __future__ import annotations

import warnings
from fractions import Fraction

import numpy as np
import pytest

from trisectkit import InputError
from trisectkit.braids import BraidWord
from trisectkit.fixtures import line_record_oracle
from trisectkit.formats import parse_input
from trisectkit.trisect import (BridgePoint, BridgeTrisectionRecord, TorusArc, TorusDiagram, adjunction_verdict,
                                beta_positive, c1_pairing, euler_characteristic, hypersurface_class,
                                lattice_obstructions, line_diagram, sector_self_linking, self_intersection,
                                symplectic_area, total_self_linking_identity, whitney_band_bookkeeping)
from trisectkit.trisect.lattice import E8, characteristic_vectors, intersection_form, signature
from trisectkit.trisect.records import SelfLinkingMismatch, diagram_mismatches, record_adjunction


@pytest.fixture
def line() -> BridgeTrisectionRecord:
    return parse_input("line.trirec")


def test_line_record_matches_its_links(line):
    oracle = line_record_oracle()
    for key in ("b", "c", "w", "lk_own", "lk_next"):
        assert getattr(line, key) == getattr(oracle, key)
    assert diagram_mismatches(line) == []
    assert line.provenance["w"] == "diagram-computed"


def test_line_integers(line):
    assert euler_characteristic(line) == 2
    assert c1_pairing(line) == 3
    assert self_intersection(line) == 1
    v = total_self_linking_identity(line)
    assert v.ok and v.lhs == v.rhs == -3
    r = record_adjunction(line)
    assert r.ok and r.slack == 0 and (r.lhs, r.rhs) == (2, 2)


def test_minimal_sphere_record():
    rec = BridgeTrisectionRecord(1, (1, 1, 1))
    assert euler_characteristic(rec) == 2 and c1_pairing(rec) == 0 and self_intersection(rec) == 1


def test_record_validation():
    with pytest.raises(InputError):
        BridgeTrisectionRecord(0, (1, 1, 1))
    with pytest.raises(InputError):
        BridgeTrisectionRecord(1, (2, 1, 1))
    with pytest.raises(InputError):
        BridgeTrisectionRecord(2, (1, 1, 1), diagram=line_diagram())


def test_sector_braid_mismatch_warns(line):
    bad = line.with_value("w", 2, 5)
    with pytest.warns(SelfLinkingMismatch):
        sector_self_linking(bad, 2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        sector_self_linking(line, 2)


@pytest.mark.parametrize("key", ["w", "lk_own", "lk_next"])
@pytest.mark.parametrize("sector", [1, 2, 3])
def test_single_corruptions_break_total_sl(line, key, sector):
    value = getattr(line, key)[sector - 1]
    for delta in (-1, 1, 2):
        bad = line.with_value(key, sector, value + delta)
        assert total_self_linking_identity(bad).status == "violated"


def test_without_braids_the_identity_is_bookkeeping():
    rec = BridgeTrisectionRecord(2, (1, 2, 1), w=(1, -1, 0), lk_own=(2, 0, 1), lk_next=(0, 1, 0))
    assert total_self_linking_identity(rec).ok
    assert total_self_linking_identity(rec).provenance["sl1"] == "user-supplied"


def test_whitney_bookkeeping(line):
    res = whitney_band_bookkeeping(line, 0)
    assert (res.chi_f, res.sl_l) == (3, -3) and res.verdict.slack == 0
    for n in range(1, 5):
        r = whitney_band_bookkeeping(line, n)
        assert r.verdict.slack == record_adjunction(line).slack
    with pytest.raises(InputError):
        whitney_band_bookkeeping(line, -1)


def test_adjunction_modes():
    assert adjunction_verdict(2, 0, 0).status == "violated"  # K3 sphere
    assert adjunction_verdict(2, 3, 1).ok
    v = adjunction_verdict(0, 4, 0, "zero-area")
    assert v.rhs == -4 and not v.ok
    with pytest.raises(InputError):
        adjunction_verdict(0, 0, 0, "bogus")


def test_line_diagram_geometry():
    d = line_diagram()
    assert d.bridge_index == 1
    assert all(beta_positive(a) for a in d.arcs)
    assert d.family_disjoint() == []
    assert symplectic_area(d) == 1


def test_torus_diagram_validation():
    q = Fraction
    pts = (BridgePoint(q(0), q(0), -1), BridgePoint(q(1, 2), q(1, 2), 1))
    arc = TorusArc("A", 0, 1, ((q(0), q(0)), (q(1, 2), q(1, 2))), ((0, 0),))
    with pytest.raises(InputError):
        TorusDiagram(pts, (arc,))  # families B and C missing
    with pytest.raises(InputError):
        TorusArc("A", 0, 1, ((q(0), q(0)), (q(1, 2), q(1, 2))), ((0, 0), (0, 0)))


def test_forms_and_signatures():
    assert signature(E8) == 8
    q = intersection_form(["-E8", "-E8", "H", "H", "H"])
    assert q.shape == (22, 22) and signature(q) == -16
    with pytest.raises(InputError):
        intersection_form(["E7"])


def test_cp2x3_candidates():
    rep = lattice_obstructions(["+1", "+1", "+1"], 5, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert rep.target == 19
    assert len(rep.candidates) == 24
    assert {tuple(sorted(abs(v) for v in c)) for c in rep.candidates} == {(1, 3, 3)}
    assert rep.sphere_obstructed_for_all()


def test_characteristic_enumeration_is_exhaustive():
    q = intersection_form(["+1", "-1"])
    found = set(characteristic_vectors(q, 2 * 4 + 3 * 0, 9))
    brute = {(a, b) for a in range(-9, 10) for b in range(-9, 10) if a % 2 and b % 2 and a * a - b * b == 8}
    assert found == brute


def test_k3_rules_out_square_zero_spheres():
    h = np.zeros(22, dtype=int)
    h[16] = 1
    rep = lattice_obstructions(["-E8", "-E8", "H", "H", "H"], 24, -16, [tuple(h)], c1=(0,) * 22)
    (rows,) = rep.rows.values()
    assert rows[0].k2 == 0 and rows[0].bound == 0 and rows[0].sphere_ruled_out


def test_v5_genus_bound():
    label, d, c1k = hypersurface_class(5)
    rep = lattice_obstructions([], 55, -35, class_data=[(label, d, c1k)])
    (row,) = rep.data_rows
    assert row.bound == -10 and row.min_genus == 6
    assert hypersurface_class(1)[1:] == (1, 3)


def test_sigma_coefficient_two_warns():
    with pytest.warns(UserWarning):
        lattice_obstructions(["+1"], 3, 1, sigma_coefficient=2)
    with pytest.raises(InputError):
        lattice_obstructions(["+1"], 3, 1, sigma_coefficient=4)


def test_supplied_c1_must_be_characteristic():
    with pytest.raises(InputError):
        lattice_obstructions(["+1"], 3, 1, c1=(2,))
    with pytest.raises(InputError):
        lattice_obstructions(["+1"], 3, -1)
