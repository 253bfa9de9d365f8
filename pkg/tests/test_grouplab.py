from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisectkit import InputError
from trisectkit.grouplab import (HALF_TWIST_TABLE, FreeWord, MonodromyAssignment, check_monodromy,
                                 conjugated_relations, expand_conjugates, free_presentation, free_rank,
                                 half_twist_relations, lift_path, local_model, longitude_normal_form,
                                 perm_compose, perm_inverse, reduce_word, substitute, verify_relation_table,
                                 verify_relation_trivial, wirtinger, word_ops)

letters = st.tuples(st.sampled_from("abl"), st.sampled_from([1, -1]))


def test_parse_and_print():
    w = FreeWord.parse("a b^-1 l^2")
    assert list(w) == [("a", 1), ("b", -1), ("l", 1), ("l", 1)]
    assert str(w) == "a b^-1 l^2"
    assert FreeWord.parse("1") == FreeWord()
    with pytest.raises(InputError):
        FreeWord.parse("a^x")


def test_reduction_and_ops():
    assert reduce_word([("a", 1), ("a", -1), ("b", 1)]) == FreeWord.parse("b")
    u, v = FreeWord.parse("a b"), FreeWord.parse("b^-1 a")
    assert word_ops(u, v, "multiply") == FreeWord.parse("a^2")
    assert word_ops(u, mode="invert") == FreeWord.parse("b^-1 a^-1")


def test_substitute():
    w = substitute(FreeWord.parse("a b^-1"), {"a": FreeWord.parse("x y"), "b": FreeWord.parse("y")})
    assert w == FreeWord.parse("x")


@settings(max_examples=200, deadline=None)
@given(st.lists(letters, max_size=30))
def test_longitude_normal_form_roundtrip(ls):
    w = FreeWord(ls).reduced()
    p, g0 = longitude_normal_form(w, "l")
    assert p == w.exponent("l")
    assert (FreeWord.gen("l", p) * expand_conjugates(g0, "l")).reduced() == w


def test_relation_table_against_local_models():
    table = verify_relation_table()
    assert set(table) == set(HALF_TWIST_TABLE)
    assert all(a and b for a, b in table.values())
    for k in HALF_TWIST_TABLE:
        assert free_rank(wirtinger(local_model(k))) == 2


def test_relations_fail_under_a_wrong_model():
    pres = wirtinger(local_model(2))
    r1, _ = half_twist_relations(3)
    assert not verify_relation_trivial(r1, pres)


def test_conjugated_relations_trivial():
    pres = wirtinger(local_model(-2))
    sub = {**pres.substitution, "l": FreeWord.gen("l")}
    for rho in conjugated_relations(-2, "l", depth=3):
        assert verify_relation_trivial(rho, pres, sub)
    with pytest.raises(InputError):
        conjugated_relations(-2, depth=-1)


def test_unknown_twist():
    with pytest.raises(InputError):
        half_twist_relations(4)
    with pytest.raises(InputError):
        local_model(5)


def test_cyclic_labels_rejected():
    from trisectkit.grouplab import TangleCrossing, TangleDiagram
    d = TangleDiagram(arcs=("a", "b"), crossings=(TangleCrossing("a", "b", "a", 1), TangleCrossing("b", "a", "b", 1)))
    with pytest.raises(InputError):
        wirtinger(d)


def test_monodromy_checks():
    pres = free_presentation(["x", "y"], [FreeWord.parse("x y x y^-1 x^-1 y^-1")])
    good = MonodromyAssignment(3, {"x": (2, 1, 3), "y": (1, 3, 2)})
    assert check_monodromy(pres, good).ok
    not_transp = MonodromyAssignment(3, {"x": (2, 3, 1), "y": (1, 3, 2)})
    assert check_monodromy(pres, not_transp).witness["check"] == "transposition"
    commuting = free_presentation(["x", "y"], [FreeWord.parse("x y x^-1 y^-1")])
    assert check_monodromy(commuting, good).witness["check"] == "relator"
    intransitive = MonodromyAssignment(4, {"x": (2, 1, 3, 4), "y": (2, 1, 3, 4)})
    assert check_monodromy(free_presentation(["x", "y"]), intransitive).witness["check"] == "transitivity"
    with pytest.raises(InputError):
        MonodromyAssignment(3, {"x": (1, 1, 2)})


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10_000))
def test_transitivity_agrees_with_graph_oracle(n, seed):
    rng = random.Random(seed)
    images = {}
    for g in "xyz":
        i, j = rng.sample(range(n), 2)
        p = list(range(1, n + 1))
        p[i], p[j] = p[j], p[i]
        images[g] = tuple(p)
    phi = MonodromyAssignment(n, images)
    graph = nx.Graph()
    graph.add_nodes_from(range(1, n + 1))
    for p in images.values():
        graph.add_edges_from((k, v) for k, v in enumerate(p, start=1) if v != k)
    v = check_monodromy(free_presentation(list(images)), phi)
    assert v.ok == nx.is_connected(graph)


def test_lift_path():
    phi = MonodromyAssignment(3, {"x": (2, 1, 3), "y": (1, 3, 2)})
    assert lift_path(FreeWord.parse("x y"), phi, 1) == 3
    assert lift_path(FreeWord.parse("x x"), phi, 2) == 2
    assert lift_path(FreeWord.parse("l"), phi, 1, longitude="l", longitude_image=(3, 1, 2)) == 3
    with pytest.raises(InputError):
        lift_path(FreeWord.parse("x"), phi, 4)


def test_perm_helpers():
    p, q = (2, 3, 1), (1, 3, 2)
    assert perm_compose(p, perm_inverse(p)) == (1, 2, 3)
    assert perm_compose(p, q) == tuple(q[p[k] - 1] for k in range(3))
