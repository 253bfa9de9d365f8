"""Acceptance criteria 1-7.

Each test prints one line ``ACCEPTANCE <n> PASS|FAIL ...`` (run with ``-s`` or
read it in the captured output) and then asserts the same outcome.
"""

from __future__ import annotations

import itertools
import random
import subprocess
import sys
import time
from dataclasses import replace
from pathlib import Path

import pytest

from trisectkit.braids import BraidWord, FactorizationRecord, artin_equal, full_twist, verify_factorization
from trisectkit.fixtures import diagrams
from trisectkit.formats import corpus_dir, parse_input
from trisectkit.graft.examples import dxdy_inputs, saddle_inputs
from trisectkit.graft.fubini import verify_fs_identities
from trisectkit.graft.graft import graft_margin, tune_graft
from trisectkit.grouplab import (FreeWord, expand_conjugates, half_twist_relations, local_model,
                                 longitude_normal_form, verify_relation_trivial, wirtinger)
from trisectkit.homology import (closure_pd, kauffman_bracket, khovanov, lee_s_invariant, lee_total_rank,
                                 slice_bennequin_gap, unknot)
from trisectkit.trisect import (c1_pairing, concentrate_longitudes, euler_characteristic, flatten_and_count,
                                hypersurface_class, lattice_obstructions, symplectic_area,
                                total_self_linking_identity, transfer_longitude, whitney_band_bookkeeping)
from trisectkit.trisect.homotopy import line_record, random_record, synthetic_diagram
from trisectkit.trisect.records import record_adjunction

pytestmark = pytest.mark.slow


def verdict(capsys, n: int, checks: dict[str, bool], elapsed: float, limit: float) -> None:
    checks = {**checks, f"runtime {elapsed:.1f}s < {limit:g}s": elapsed < limit}
    failed = [k for k, ok in checks.items() if not ok]
    line = f"ACCEPTANCE {n} {'PASS' if not failed else 'FAIL'} ({len(checks) - len(failed)}/{len(checks)} checks)"
    if failed:
        line += " failed: " + "; ".join(failed)
    with capsys.disabled():
        print(f"\n{line}")
    assert not failed, line


def _random_letters(rng: random.Random, n: int, length: int) -> tuple[int, ...]:
    return tuple(rng.choice([1, -1]) * rng.randint(1, n - 1) for _ in range(length))


def test_criterion_1_braid_kernel(capsys):
    t0 = time.perf_counter()
    rng = random.Random(1)
    relation_ok = negative_ok = True
    for _ in range(500):
        n = rng.randint(3, 6)
        budget = 40 - 6
        u = _random_letters(rng, n, rng.randint(0, budget // 2))
        v = _random_letters(rng, n, rng.randint(0, budget - len(u)))
        i = rng.randint(1, n - 2)
        s = rng.choice([1, -1])
        far = [j for j in range(1, n) if abs(j - i) >= 2]
        if far and rng.random() < 0.5:
            j = rng.choice(far)
            lhs, rhs = (s * i, s * j), (s * j, s * i)
        else:
            lhs, rhs = (s * i, s * (i + 1), s * i), (s * (i + 1), s * i, s * (i + 1))
        a, b = BraidWord(n, u + lhs + v), BraidWord(n, u + rhs + v)
        relation_ok &= artin_equal(a, b)
        # control: dropping one letter must be detected
        negative_ok &= not artin_equal(a, BraidWord(n, u + lhs[1:] + v))
    ident = BraidWord(2, ())
    e3, s2 = BraidWord(3, ()), BraidWord(3, (2,))
    corrupted = {
        "empty": FactorizationRecord(2, ()),
        "exponents": FactorizationRecord(2, ((ident, 4),)),
        "exponent-sum": FactorizationRecord(2, ((ident, 1),)),
        "permutation": FactorizationRecord(3, ((e3, 3), (s2, 3))),
        "artin": FactorizationRecord(3, ((e3, 2), (e3, 2), (e3, 2))),
    }
    stages = {k: verify_factorization(rec).witness.get("stage") for k, rec in corrupted.items()}
    central = True
    for _ in range(100):
        n = rng.randint(2, 6)
        w = BraidWord(n, _random_letters(rng, n, rng.randint(0, 20)))
        d = full_twist(n)
        central &= artin_equal(d * w, w * d)
    checks = {
        "500 randomized relation instances hold": relation_ok,
        "500 dropped-letter controls detected": negative_ok,
        "(d=2, [(id,2)]) accepted": verify_factorization(FactorizationRecord(2, ((ident, 2),))).ok,
        "shipped delta2 fixture accepted": verify_factorization(parse_input("delta2.braid")).ok,
        "each single-stage corruption rejected at its stage": all(k == v for k, v in stages.items()),
        "full twist central on 100 random words": central,
    }
    verdict(capsys, 1, checks, time.perf_counter() - t0, 10)


def _positive_knots(max_strands: int = 5, max_len: int = 10):
    for n in range(2, max_strands + 1):
        gens = set(range(1, n))
        for length in range(n - 1, max_len + 1):
            seen = set()
            for w in itertools.product(range(1, n), repeat=length):
                if set(w) != gens:
                    continue
                canon = min(w[i:] + w[:i] for i in range(length))
                if canon in seen:
                    continue
                seen.add(canon)
                b = BraidWord(n, canon)
                if closure_pd(b).components == 1:
                    yield b


def test_criterion_2_homology_engine(capsys):
    t0 = time.perf_counter()
    trefoil = {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}
    corpus_pd = diagrams()
    euler_ok = all(khovanov(d).euler() == kauffman_bracket(d) for d in corpus_pd.values() if len(d) <= 10)
    lee_ok = all(lee_total_rank(d) == 2 ** d.components for d in corpus_pd.values())
    s_vals = {name: lee_s_invariant(corpus_pd[name]).s for name in ("trefoil.pd", "t25.pd", "figure8.pd")}
    positive = list(_positive_knots())
    positive_ok = all(slice_bennequin_gap(b) == 0 for b in positive)
    rng = random.Random(2)
    gaps = []
    while len(gaps) < 200:
        n = rng.randint(2, 4)
        b = BraidWord(n, _random_letters(rng, n, rng.randint(1, 10)))
        if closure_pd(b).components == 1:
            gaps.append(slice_bennequin_gap(b))
    checks = {
        "Kh(unknot) over Q": khovanov(unknot()).ranks == {(0, -1): 1, (0, 1): 1},
        "Kh(right trefoil) over Q": khovanov(corpus_pd["trefoil.pd"]).ranks == trefoil,
        "graded Euler characteristic = bracket on every corpus diagram": euler_ok,
        "Lee rank = 2^components": lee_ok,
        "s(trefoil)=2, s(T(2,5))=4, s(figure-eight)=0": s_vals == {"trefoil.pd": 2, "t25.pd": 4, "figure8.pd": 0},
        f"gap = 0 on all {len(positive)} positive braid knots (<= 5 strands, <= 10 crossings)": positive_ok,
        "gap >= 0 on 200 random knots": min(gaps) >= 0,
    }
    verdict(capsys, 2, checks, time.perf_counter() - t0, 300)


def test_criterion_3_relation_table(capsys):
    t0 = time.perf_counter()
    rows = {}
    for k in (1, 2, -2, 3):
        pres = wirtinger(local_model(k))
        rows[k] = [verify_relation_trivial(rho, pres) for rho in half_twist_relations(k)]
    rng = random.Random(3)
    roundtrip = True
    for _ in range(1000):
        w = FreeWord((rng.choice("abcl"), rng.choice([1, -1])) for _ in range(rng.randint(0, 30))).reduced()
        p, g0 = longitude_normal_form(w, "l")
        roundtrip &= (FreeWord.gen("l", p) * expand_conjugates(g0, "l")).reduced() == w
    checks = {
        "all eight table words reduce to 1": sum(sum(r) for r in rows.values()) == 8,
        "normal form re-expansion on 1000 random words": roundtrip,
    }
    verdict(capsys, 3, checks, time.perf_counter() - t0, 30)


def test_criterion_4_trisection_formulas(capsys):
    t0 = time.perf_counter()
    line = parse_input("line.trirec")
    sl = total_self_linking_identity(line)
    wb = whitney_band_bookkeeping(line, 0).verdict
    adj = record_adjunction(line)
    cp2 = lattice_obstructions(["+1", "+1", "+1"], 5, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    expected = {tuple(sorted(p)) for p in itertools.permutations((3, 3, 1))}
    shapes = {tuple(sorted(abs(v) for v in c)) for c in cp2.candidates}
    e3_ruled_out = all(rows[2].sphere_ruled_out for c, rows in cp2.rows.items() if abs(c[2]) == 1)
    k3 = lattice_obstructions(["-E8", "-E8", "H", "H", "H"], 24, -16,
                              [tuple(1 if i == 16 else 0 for i in range(22))], c1=(0,) * 22)
    label, d, c1k = hypersurface_class(5)
    v5 = lattice_obstructions([], 55, -35, class_data=[(label, d, c1k)])
    checks = {
        "chi = 2": euler_characteristic(line) == 2,
        "c1 pairing = 3": c1_pairing(line) == 3,
        "total sl both sides -3": (sl.lhs, sl.rhs) == (-3, -3),
        "whitney n=0: -3 <= -3": wb.ok and (wb.lhs, wb.rhs) == (-3, -3),
        "adjunction holds with slack 0": adj.ok and adj.slack == 0,
        "3CP2 candidates are (+-3,+-3,+-1) up to permutation": len(cp2.candidates) == 24 and shapes == expected,
        "(0,0,1) sphere ruled out where c1 pairs to +-1": e3_ruled_out and cp2.sphere_obstructed_for_all(),
        "K3: square-zero sphere ruled out": all(r.sphere_ruled_out and r.k2 == 0 for rows in k3.rows.values()
                                                for r in rows),
        "V5 hyperplane genus >= 6": v5.data_rows[0].min_genus == 6,
    }
    verdict(capsys, 4, checks, time.perf_counter() - t0, 5)


def test_criterion_5_homotopy_normalization(capsys):
    t0 = time.perf_counter()
    rng = random.Random(5)
    preserved = agree = transfers = True
    for _ in range(200):
        shr = random_record(rng)
        chi, count = shr.chi, shr.longitude_count()
        for j in range(len(shr.arcs[1])):
            if shr.label(2, j)[1]:
                moved = transfer_longitude(shr, 2, j, rng.randint(-2, 2))
                transfers &= moved.chi == chi and moved.longitude_count() == count
        conc = concentrate_longitudes(shr)
        flat, n, positive = flatten_and_count(conc)
        preserved &= conc.chi == flat.chi == chi and conc.longitude_count() == n == count
        area = symplectic_area(synthetic_diagram(shr, rng))
        agree &= (area > 0) == positive
    _, n_line, pos_line = flatten_and_count(line_record())
    agree &= pos_line == (symplectic_area(parse_input("line.torusdiagram")) > 0)
    checks = {
        "single transfers preserve chi and longitude count": transfers,
        "concentrate + flatten preserve chi and longitude count on 200 records": preserved,
        "area_positive agrees with symplectic area sign": agree,
    }
    verdict(capsys, 5, checks, time.perf_counter() - t0, 30)


def test_criterion_6_graft_lab(capsys):
    t0 = time.perf_counter()
    fs = verify_fs_identities(64)
    dxdy = tune_graft(dxdy_inputs(64), max_steps=40)
    dxdy_fine = graft_margin(dxdy_inputs(128), dxdy.config, check=False).margin
    saddle = tune_graft(saddle_inputs(65), max_steps=40)
    saddle_fine = graft_margin(saddle_inputs(129), saddle.config, check=False).margin
    flat = graft_margin(saddle_inputs(65), replace(saddle.config, delta=0.0))
    on_arc = flat.argmin["x"] == 0.0 and flat.argmin["y"] == 0.0
    checks = {
        f"FS residual {fs.residuals['beta1']:.1e} < 1e-8 at 64": fs.residuals["beta1"] < 1e-8,
        f"smoothed boundary margin {fs.margin:.3f} > 0": fs.margin > 0,
        f"dx/dy graft margin {dxdy.margin:.4f} > 0 in {dxdy.steps} steps": dxdy.margin > 0,
        "delta = 0 saddle margin <= 0 on the singular arc": flat.margin <= 0 and on_arc,
        "saddle graft margin > 0 with the patch": saddle.margin > 0,
        "margins within 10% under grid doubling": abs(dxdy_fine - dxdy.margin) < 0.1 * dxdy.margin
        and abs(saddle_fine - saddle.margin) < 0.1 * saddle.margin,
    }
    verdict(capsys, 6, checks, time.perf_counter() - t0, 120)


def _cli(*args: str, cwd: Path | None = None) -> tuple[int, dict[str, str]]:
    proc = subprocess.run([sys.executable, "-m", "trisectkit", *args], capture_output=True, text=True, cwd=cwd)
    block = proc.stdout.split("[report]\n", 1)[1]
    return proc.returncode, dict(line.split("=", 1) for line in block.splitlines())


def test_criterion_7_end_to_end(capsys, tmp_path: Path):
    t0 = time.perf_counter()
    code_check, _ = _cli("trisect-check", "line.trirec")
    code_adj, _ = _cli("adjunction", "--record", "line.trirec")
    text = (corpus_dir() / "line.trirec").read_text()
    detected = 0
    for key in ("w", "lk_own", "lk_next"):
        for sector in range(3):
            lines = text.splitlines()
            k = next(i for i, ln in enumerate(lines) if ln.startswith(f"{key} ="))
            vals = lines[k].split("=", 1)[1].split()
            vals[sector] = str(int(vals[sector]) + 1)
            lines[k] = f"{key} = {' '.join(vals)}"
            path = tmp_path / f"{key}{sector}.trirec"
            path.write_text("\n".join(lines) + "\n")
            code, rep = _cli("trisect-check", str(path))
            detected += code == 1 and rep["total_sl.status"] == "violated"
    checks = {
        "trisect-check on the line fixture exits 0": code_check == 0,
        "adjunction on the line fixture exits 0": code_adj == 0,
        f"mutations detected {detected}/9": detected == 9,
    }
    verdict(capsys, 7, checks, time.perf_counter() - t0, 60)
