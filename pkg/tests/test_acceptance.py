"""Acceptance criteria 1-9.

Each test records a one-line verdict; the lines are printed at the end of
the pytest run (see conftest.py) and when this file is executed directly.
"""

import random
import time


from shiftyang import toda
from shiftyang.classical import (conjecture_matrix, hbar_divisibility_check, hilbert_oracle, jacobi_leibniz_check,
                                 poisson_generation_closure, verify_delta1_eq_delta2)
from shiftyang.cli import emit_report, run_suite
from shiftyang.coproduct import coassoc_check, verify_delta_homomorphism
from shiftyang.diffops import betas_sign_check, quantu_diagram_check
from shiftyang.ncalg import NCPoly
from shiftyang.pbw import (engine_for, enumerate_pbw, random_degree_word, random_word, verify_presentation,
                          verify_ytilde)

VERDICTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str):
    VERDICTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(VERDICTS[n])
    return ok


def failures(checks):
    return [f"{c['name']}: {str(c['witness'])[:160]}" for c in checks if c["status"] != "pass"]


def test_criterion_1_presentation_soundness():
    start = time.perf_counter()
    bad = []
    for m in range(-3, 4):
        bad += [f"m={m} {f}" for f in failures(verify_presentation(m, bound=8))]
    _, counts = enumerate_pbw(0, 0, 0, 3)
    oracle = hilbert_oracle(1, 3)
    if not counts == oracle == [1, 3, 9, 22]:
        bad.append(f"hilbert counts {counts} vs oracle {oracle}")
    elapsed = time.perf_counter() - start
    if elapsed >= 60:
        bad.append(f"runtime {elapsed:.1f}s")
    assert record(1, not bad, f"m in -3..3, bound 8, counts {counts}, {elapsed:.1f}s" + (f"; {bad[0]}" if bad else "")), bad


def test_criterion_2_ytilde_embedding():
    bad = failures(verify_ytilde(6))
    assert record(2, not bad, "indices <= 6" + (f"; {bad[0]}" if bad else "")), bad


def test_criterion_3_coproduct_homomorphism():
    bad = []
    for k, l in [(0, 0), (-1, 0), (-1, -1), (-2, -1)]:
        bad += [f"({k},{l}) {f}" for f in failures(verify_delta_homomorphism(k, l, 6))]
    assert record(3, not bad, "four shift pairs, indices <= 6, Molev vs table" + (f"; {bad[0]}" if bad else "")), bad


def test_criterion_4_coassociativity():
    bad = []
    for triple in [(-1, -1, -1), (0, -2, 0)]:
        bad += [f"{triple} {f}" for f in failures(coassoc_check(*triple))]
    witnesses = [c for c in coassoc_check(0, 2, 0) if c["status"] == "fail" and c["witness"]]
    if not witnesses:
        bad.append("(0,2,0) produced no counterexample")
    detail = f"equal for antidominant middle; (0,2,0) witness {witnesses[0]['name']}" if witnesses else ""
    assert record(4, not bad, detail + (f"; {bad[0]}" if bad else "")), bad


def test_criterion_5_classical_limit():
    bad = []
    pairs = 0
    for m in range(-2, 3):
        res = hbar_divisibility_check(m, 5)
        pairs += res.get("pairs", 0)
        bad += failures([res])
    bad += failures(jacobi_leibniz_check(200, seed=0))
    for k, l in [(-1, -1), (-2, -1)]:
        bad += failures(verify_delta1_eq_delta2(k, l, 4))
    for m in (0, -1, -2):
        bad += failures([poisson_generation_closure(m, 4)["check"]])
    assert record(5, not bad, f"{pairs} commutator pairs, 200 triples, Delta1=Delta2 to level 4, closure level 4"
                  + (f"; {bad[0]}" if bad else "")), bad


def test_criterion_6_conjecture_evidence():
    matrix = conjecture_matrix(range(-2, 3), 3)
    cells = " ".join(f"{a},{b}:{'P' if v['status'] == 'pass' else 'F'}" for (a, b), v in sorted(matrix.items()))
    ok = matrix[(0, 0)]["status"] == "pass" and len(matrix) == 25
    assert record(6, ok, f"order 3 matrix [{cells}]"), cells


def test_criterion_7_toda():
    start = time.perf_counter()
    checks = []
    for n in range(1, 5):
        checks += toda.involutivity_check(n, "GL")
    for n in (1, 2):
        checks += toda.involutivity_check(n, "Sp")
    checks += toda.zastava_checks(100, seed=0)
    for n in (1, 2, 3):
        checks += toda.rmatrix_bracket_check(n)
    sign = {}
    for n in (2, 3):
        res = toda.canonical_vs_rmatrix(n)
        sign[n] = res["sign"]
        checks.append(res)
    for n in (1, 2):
        checks += toda.series_recursion_check(n, 3)
    for k, l in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        checks += toda.classi_check(k, l)
    elapsed = time.perf_counter() - start
    bad = failures(checks)
    if elapsed >= 300:
        bad.append(f"runtime {elapsed:.1f}s")
    assert record(7, not bad, f"{len(checks)} checks, canonical = {sign} x R-matrix, {elapsed:.1f}s"
                  + (f"; {bad[0]}" if bad else "")), bad


def test_criterion_8_quantum_toda_bridge():
    bad = []
    for k, l in [(1, 1), (1, 2)]:
        bad += [f"({k},{l}) {f}" for f in failures(quantu_diagram_check(k, l)["checks"])]
    bad += failures(betas_sign_check(4))
    assert record(8, not bad, "square on four generators, stated images, GrMinus sign n <= 4"
                  + (f"; {len(bad)} failing: {bad[0]}" if bad else "")), bad


def test_criterion_9_determinism_and_speed():
    bad = []
    for suite, params in [("toda", {"n": 2}), ("zastava", {"samples": 20}), ("coassoc", {"shifts": "0,2,0"}),
                          ("hilbert", {"shift": 1})]:
        a = emit_report(run_suite(suite, params, seed=11))
        b = emit_report(run_suite(suite, params, seed=11))
        if a != b:
            bad.append(f"{suite} reports differ")
    rng = random.Random(2024)
    worst = 0.0
    for m in range(-3, 4):
        eng = engine_for(m)
        word = random_degree_word(rng, m, 10)
        start = time.perf_counter()
        eng.normal_form(NCPoly.word(eng.ring, word))
        worst = max(worst, time.perf_counter() - start)
    if worst >= 1.0:
        bad.append(f"degree-10 normal form took {worst:.2f}s")
    # ten letters with levels <= 2 as a second, word-length reading
    eng = engine_for(0)
    word = random_word(rng, 0, 10, 2)
    start = time.perf_counter()
    eng.normal_form(NCPoly.word(eng.ring, word))
    letters10 = time.perf_counter() - start
    if letters10 >= 1.0:
        bad.append(f"ten-letter normal form took {letters10:.2f}s")
    assert record(9, not bad, f"byte-identical reports, slowest degree-10 nf {worst * 1000:.0f} ms, "
                  f"ten-letter word {letters10 * 1000:.0f} ms"
                  + (f"; {bad[0]}" if bad else "")), bad


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
