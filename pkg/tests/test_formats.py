from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisectkit import InputError
from trisectkit.braids import BraidWord
from trisectkit.fixtures import corpus
from trisectkit.formats import KINDS, corpus_dir, emit, parse_input, parse_text

SHIPPED = sorted(p.name for p in corpus_dir().iterdir())


def test_corpus_is_complete():
    assert set(SHIPPED) == set(corpus())
    kinds = {(corpus_dir() / n).read_text().split("\n", 1)[0] for n in SHIPPED}
    assert kinds == set(KINDS)


@pytest.mark.parametrize("name", SHIPPED)
def test_round_trip(name):
    text = (corpus_dir() / name).read_text(encoding="utf-8")
    assert emit(parse_input(name), text.split("\n", 1)[0]) == text


@pytest.mark.parametrize("name", SHIPPED)
def test_fixtures_match_their_builders(name):
    assert (corpus_dir() / name).read_text(encoding="utf-8") == corpus()[name]


def test_braid_example():
    b = parse_text("braid\nstrands = 2\nword = 1 1 1")
    assert b == BraidWord(2, (1, 1, 1))


def test_minimal_sphere_trirec():
    rec = parse_text("trirec\nb = 1\nc = 1 1 1\nw = 0 0 0\nlk_own = 0 0 0\nlk_next = 0 0 0\n")
    assert rec.b == 1 and rec.c == (1, 1, 1) and rec.provenance["w"] == "user-supplied"


def test_comments_and_blank_lines():
    b = parse_text("# leading comment\n\nbraid  # kind\nstrands = 3   # three\n\nword = 1 -2\n")
    assert b == BraidWord(3, (1, -2))


@pytest.mark.parametrize("text, line, fragment", [
    ("braid\nstrands = 2\nword = 0\n", 3, "index 0"),
    ("braid\nstrands = 2\nstrands = 3\nword = 1\n", 3, "duplicate"),
    ("braid\nstrands = two\nword = 1\n", 2, "integer"),
    ("braid\nstrands = 2\nwords = 1\n", 3, "unknown key"),
    ("pd\ncrossing = 1 2 3 4 x\n", 2, "sign"),
    ("torusdiagram\npoint = 1/0 0 +\n", 2, "rational"),
    ("lattice\nchi = 3\nsigma = 1\nclass_data = K 1\n", 4, "class_data"),
    ("braid\nstrands 2\n", 2, "key = value"),
])
def test_position_annotated_errors(text, line, fragment):
    with pytest.raises(InputError) as exc:
        parse_text(text, source="f")
    assert f"f:{line}:" in str(exc.value) and fragment in str(exc.value)


def test_unknown_kind_and_empty():
    with pytest.raises(InputError):
        parse_text("spline\n")
    with pytest.raises(InputError):
        parse_text("# nothing\n")
    with pytest.raises(InputError):
        parse_text("pd\n", kind="braid")


def test_missing_file_and_bad_encoding(tmp_path: Path):
    with pytest.raises(InputError):
        parse_input(tmp_path / "absent.pd")
    p = tmp_path / "bad.pd"
    p.write_bytes(b"pd\n\xff\xfe\n")
    with pytest.raises(InputError):
        parse_input(p)


def test_pd_component_count_checked():
    with pytest.raises(InputError):
        parse_text("pd\ncomponents = 2\ncrossing = 1 1 2 2 +\n")


def test_corpus_env_override(tmp_path: Path, monkeypatch):
    (tmp_path / "mine.braid").write_text("braid\nstrands = 2\nword = 1\n")
    monkeypatch.setenv("TRISECTKIT_CORPUS", str(tmp_path))
    assert parse_input("mine.braid") == BraidWord(2, (1,))


def test_formfield_evaluates_expressions():
    spec = parse_input("dxdy_mu1.formfield")
    f = spec.field()
    t = f.chart.coords()["t"]
    assert abs(f.component((1,)) + t).max() == 0


def test_formfield_rejects_unknown_names():
    text = "formfield\ndegree = 1\naxis = x 8 0 1\ncomponent = x : q + 1\n"
    with pytest.raises(InputError):
        parse_text(text)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(
    st.integers(1, n - 1).flatmap(lambda i: st.sampled_from([i, -i])), max_size=30))))
def test_braid_round_trip_property(data):
    n, letters = data
    b = BraidWord(n, tuple(letters))
    text = emit(b, "braid")
    assert parse_text(text) == b and emit(parse_text(text), "braid") == text
