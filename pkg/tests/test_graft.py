from __future__ import annotations

import networkx as nx
import numpy as np
import pytest

from trisectkit import InputError
from trisectkit.graft import (Axis, FormField, GraftConfig, GridChart, SingularPoint, calabi_positive_path,
                              compatibility_check, contact_margin, exterior_derivative, grafted_form, tune_graft,
                              wedge)
from trisectkit.graft.forms import fd_weights
from trisectkit.graft.graft import graft_margin, positive_path_graph
from trisectkit.graft.examples import dxdy_inputs, saddle_inputs, standard_contact
from trisectkit.graft.fubini import boundary_contact_margin, convergence_ratio, fs_residuals


def box(n: int = 32, periodic: bool = True) -> GridChart:
    return GridChart((Axis("x", n, 0.0, 2 * np.pi, periodic), Axis("y", n, 0.0, 2 * np.pi, periodic),
                      Axis("z", n, 0.0, 2 * np.pi, periodic)))


def test_fd_weights_are_exact_on_polynomials():
    w = fd_weights((-1, 0, 1))
    assert np.allclose(w, [-0.5, 0.0, 0.5])
    offsets = (0, 1, 2, 3, 4)
    w = fd_weights(offsets)
    assert np.isclose(sum(wi * o ** 3 for wi, o in zip(w, offsets)), 0.0)


def test_derivative_of_sine():
    ch = box(64)
    f = FormField.from_functions(ch, 0, {(): lambda c: np.sin(c["x"])})
    df = exterior_derivative(f)
    assert np.abs(df.component((0,)) - np.cos(ch.coords()["x"])).max() < 1e-6


def test_dd_is_zero():
    ch = box(32)
    a = FormField.from_functions(ch, 1, {"x": lambda c: np.sin(c["y"]) * np.cos(c["z"]),
                                         "z": lambda c: np.cos(c["x"] + c["y"])})
    assert exterior_derivative(exterior_derivative(a)).max_abs() < 1e-9


def test_wedge_antisymmetry():
    ch = box(8)
    a = FormField.from_functions(ch, 1, {"x": 1.0})
    b = FormField.from_functions(ch, 1, {"y": 1.0})
    assert (wedge(a, b) + wedge(b, a)).max_abs() == 0


def test_foliation_forms_have_zero_margin():
    ch = box(8)
    assert contact_margin(FormField.from_functions(ch, 1, {"x": 1.0})).margin == 0
    assert contact_margin(FormField.from_functions(ch, 1, {"z": 1.0})).margin == 0


def test_degenerate_graft_is_alpha0():
    # alpha_0 ^ d alpha_0 = phi' >= 0 exactly; on the grid only the stencils
    # straddling the C^2 kinks of phi at t = +-1 dip below zero, at O(h^3)
    cfg = GraftConfig(0.0, 0.0, 0.2)
    m32 = graft_margin(dxdy_inputs(32), cfg).margin
    m64 = graft_margin(dxdy_inputs(64), cfg)
    assert -1e-3 < m64.margin <= 0 and abs(m32) / abs(m64.margin) > 6
    assert abs(abs(m64.argmin["t"]) - 1) < 0.05


def test_standard_contact_margin():
    ch = GridChart((Axis("x", 16, -1, 1), Axis("y", 16, -1, 1), Axis("t", 16, -1, 1)))
    rep = contact_margin(standard_contact(ch))
    assert abs(rep.margin - 2.0) < 1e-9


def test_fs_identities():
    res = fs_residuals(64)
    assert res["beta1"] < 1e-8
    assert res["dalpha1"] < 1e-8
    assert boundary_contact_margin(64).margin > 0


def test_fs_stencil_converges():
    assert convergence_ratio(32, 4) >= 8


def test_compatibility():
    ch = GridChart((Axis("x", 33, -1, 1), Axis("y", 33, -1, 1)))
    b1 = FormField.from_functions(ch, 1, {"x": lambda c: 2 * c["x"], "y": lambda c: -2 * c["y"]})
    b2 = FormField.from_functions(ch, 1, {"x": lambda c: 2 * c["y"], "y": lambda c: 2 * c["x"]})
    v = compatibility_check(b1, b2, [SingularPoint(0.0, 0.0)])
    assert v.ok and v.witness["strict_positive"]
    # a form against itself is weakly compatible, never strictly
    same = compatibility_check(b1, b1, [SingularPoint(0.0, 0.0)])
    assert same.ok and not same.witness["strict_positive"]
    assert not compatibility_check(b1, b2, [SingularPoint(0.0, 0.0, 1, 1, -1)]).ok
    dx = FormField.from_functions(ch, 1, {"x": 1.0})
    dy = FormField.from_functions(ch, 1, {"y": 1.0})
    assert compatibility_check(dx, dy).ok
    assert not compatibility_check(dx, -dy).ok


def test_dxdy_graft_and_refinement():
    coarse = tune_graft(dxdy_inputs(32))
    assert coarse.margin > 0
    fine = graft_margin(dxdy_inputs(64), coarse.config)
    assert fine.margin > 0
    assert abs(fine.margin - coarse.margin) / fine.margin < 0.1
    smaller = graft_margin(dxdy_inputs(32), GraftConfig(coarse.config.eps / 2, 0.0, coarse.config.eps0))
    assert smaller.margin > 0


def test_saddle_needs_the_patch():
    inp = saddle_inputs(33)
    flat = graft_margin(inp, GraftConfig(0.003125, 0.0, 0.390625))
    assert flat.margin <= 0
    tuned = tune_graft(inp)
    assert tuned.margin > 0 and tuned.config.delta > 0


def test_graft_rejects_bad_charts():
    inp = dxdy_inputs(16)
    ch = GridChart((Axis("x", 16, 0, 1, True), Axis("y", 16, 0, 1, True), Axis("t", 16, -0.5, 0.5)))
    beta = FormField.from_functions(ch, 1, {"x": 1.0})
    with pytest.raises(InputError):
        grafted_form(type(inp)(beta, beta), GraftConfig(0.05, 0.0, 0.2))
    with pytest.raises(InputError):
        GraftConfig(0.05, 0.0, 0.6)


def test_positive_paths():
    ch = GridChart((Axis("x", 12, 0, 1, True), Axis("y", 12, 0, 1, True)))
    beta = FormField.from_functions(ch, 1, {"x": 1.0})
    assert calabi_positive_path(beta, (0, 0), (5, 0)).ok
    assert calabi_positive_path(beta, (5, 0), (2, 0)).ok  # by wrapping around
    assert not calabi_positive_path(beta, (0, 0), (0, 5)).ok  # y steps are not positive
    bounded = GridChart((Axis("x", 12, 0, 1), Axis("y", 12, 0, 1)))
    beta = FormField.from_functions(bounded, 1, {"x": 1.0})
    assert not calabi_positive_path(beta, (5, 0), (2, 0)).ok


def test_positive_paths_agree_with_graph_oracle():
    ch = GridChart((Axis("x", 10, 0, 2 * np.pi, True), Axis("y", 10, 0, 2 * np.pi)))
    beta = FormField.from_functions(ch, 1, {"x": lambda c: np.cos(c["y"]) + 0.3, "y": lambda c: np.sin(c["x"])})
    g = nx.DiGraph(positive_path_graph(beta))
    rng = np.random.default_rng(5)
    for _ in range(40):
        p = tuple(int(v) for v in rng.integers(0, 10, 2))
        q = tuple(int(v) for v in rng.integers(0, 10, 2))
        try:
            got = calabi_positive_path(beta, p, q).ok
        except InputError:
            continue
        assert got == nx.has_path(g, p, q)
