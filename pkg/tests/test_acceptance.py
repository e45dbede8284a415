"""
Acceptance criteria A1-A12, one test each.

Every test reports a single PASS/FAIL line; the terminal summary repeats
them in order.  Runtime limits are asserted where a criterion states one.
"""

import os
import random
import subprocess
import sys
import time
from itertools import product

from affinetrace.affine_weyl import AffinePermutation, ConvexPath, GeneratorWord, staircase
from affinetrace.cocenter import CocenterVector, class_of, e_class
from affinetrace.hecke import QDIFF, BraidWord, EWord, HeckeElement, evaluate_word, mul
from affinetrace.ring import IntLaurent1, IntPoly2, RatFun2
from affinetrace.shuffle import SymLaurent, partial_k, r_element, wheel_check
from affinetrace.tilde_a import FormalElement, eval_shuffle, reduce_single_rows, verify_suite


def ev(text, n):
    return evaluate_word(BraidWord.parse(text, n))


def timed(fn):
    t = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - t


def test_a1_rank_two_cocenter_identity(criterion):
    def check():
        y1, y2, om = (class_of(ev(w, 2)) for w in ("Y1", "Y2", "Omega"))
        return y1 - y2 == om.scale(QDIFF)

    ok, dt = timed(check)
    criterion(ok and dt < 1.0, f"[Y1] - [Y2] = (q - q^-1)[Omega] in Tr(AH_2): {ok}, {dt:.3f}s (< 1s)")


def test_a2_rel_a1_cocenter(criterion):
    report, dt = timed(lambda: verify_suite("rel-a1", "cocenter", n_max=4, d_max=2))
    criterion(report.ok, f"rel a 1 in the cocenter, n <= 4, |d_i| <= 2: "
                         f"{report.instances} instances, {len(report.failures)} failures, {dt:.1f}s")


def test_a3_rel_a2_cocenter(criterion):
    report, dt = timed(lambda: verify_suite("rel-a2", "cocenter", n_max=3, d_max=2, k_max=2))
    criterion(report.ok, f"rel a 2 in the cocenter, n <= 3, |k| <= 2, |d_i| <= 2: "
                         f"{report.instances} instances, {len(report.failures)} failures, {dt:.1f}s")


def _random_word(rng, n, max_len=6):
    letters = []
    for _ in range(rng.randint(0, max_len)):
        kind = rng.choice(["T", "Omega", "Y"] if n >= 2 else ["Omega", "Y"])
        if kind == "T":
            letters.append(("T", rng.randint(1, n - 1), rng.choice([-1, 1])))
        elif kind == "Omega":
            letters.append(("Omega", rng.choice([-1, 1])))
        else:
            letters.append(("Y", rng.randint(1, n), rng.choice([-1, 1])))
    return BraidWord(n, tuple(letters))


def test_a4_trace_property(criterion):
    def check():
        rng = random.Random(4)
        bad = 0
        for _ in range(250):
            n = rng.randint(1, 3)
            x, y = evaluate_word(_random_word(rng, n)), evaluate_word(_random_word(rng, n))
            bad += class_of(mul(x, y)) != class_of(mul(y, x))
        return bad

    bad, dt = timed(check)
    criterion(bad == 0 and dt < 60, f"class_of(xy) = class_of(yx), 250 seeded pairs, n <= 3, "
                                     f"word length <= 6: {bad} failures, {dt:.1f}s (< 60s)")


def _convex_paths(n, mmax):
    out = set()

    def rec(rem, acc):
        if rem == 0:
            out.add(ConvexPath(tuple(acc)))
            return
        for ell in range(1, rem + 1):
            for m in range(-mmax, mmax + 1):
                rec(rem - ell, acc + [(ell, m)])

    rec(n, [])
    return sorted(out)


def test_a5_convex_path_basis(criterion):
    def check():
        bad, total = [], 0
        for n in range(1, 4):
            for path in _convex_paths(n, 2):
                # factors multiplied from the steepest slope down
                word = EWord(tuple(staircase(m, ell) for ell, m in reversed(path.steps)))
                total += 1
                if e_class(word) != CocenterVector(n, {path: 1}):
                    bad.append(str(path))
        return total, bad

    (total, bad), dt = timed(check)
    criterion(not bad and dt < 60, f"P-word products are unit vectors for {total} convex paths "
                                   f"(<= 3 strands, |m_i| <= 2): {len(bad)} failures, {dt:.1f}s (< 60s)")


def test_a6_rel_shuf(criterion):
    report, dt = timed(lambda: verify_suite("rel-shuf", "shuffle", n_max=3, d_max=1))
    criterion(report.ok, f"R_d - q1q2 R_(d-α_i) = (1-q1) R_(d') * R_(d''), n <= 3, |d_i| <= 1: "
                         f"{report.instances} instances, {len(report.failures)} failures, {dt:.1f}s")


def test_a7_wheel_conditions(criterion):
    def check():
        return [d for d in product(range(-1, 2), repeat=3) if not wheel_check(r_element(d))]

    bad, dt = timed(check)
    criterion(not bad and dt < 60, f"wheel_check(R_d) for d in [-1,1]^3: {len(bad)} failures, {dt:.1f}s (< 60s)")


def test_a8_toroidal_relations(criterion):
    def check():
        return (verify_suite("tor1", "shuffle", d_max=2), verify_suite("tor2", "shuffle", d_max=1))

    (t1, t2), dt = timed(check)
    criterion(t1.ok and t2.ok, f"cubic relation for a, b in [-2,2] ({t1.instances} instances, "
                               f"{len(t1.failures)} failures) and [[E_(m+1),E_(m-1)],E_m] = 0 for |m| <= 1 "
                               f"({t2.instances} instances, {len(t2.failures)} failures), {dt:.1f}s")


def test_a9_derivation_law(criterion):
    def check():
        pool = [r_element((a,)) for a in (-1, 0, 1)] + [r_element((0, 0))]
        bad = 0
        for k in (1, 2):
            for F in pool:
                for G in pool:
                    bad += partial_k(F * G, k) != partial_k(F, k) * G + F * partial_k(G, k)
        return bad

    bad, dt = timed(check)
    criterion(bad == 0 and dt < 60, f"∂_k(F*G) = ∂_k(F)*G + F*∂_k(G), k in {{1,2}}, 32 pairs: "
                                    f"{bad} failures, {dt:.1f}s (< 60s)")


def test_a10_one_row_reduction(criterion):
    def check():
        bad = []
        for n in range(1, 4):
            for m in (-1, 0, 1):
                X = reduce_single_rows(n, m)
                single = all(len(f) == 1 for w in X.terms for f in w.factors)
                if not single or eval_shuffle(X)[n] != r_element((0,) * (n - 1) + (m,)):
                    bad.append((n, m))
        return bad

    bad, dt = timed(check)
    criterion(not bad, f"reduce_single_rows(n, m) matches R_(0,...,0,m) for n <= 3, |m| <= 1 "
                       f"(9 cases): {len(bad)} failures, {dt:.1f}s")


def test_a11_dominant_translation(criterion):
    def check():
        bad = []
        for n in range(1, 5):
            for k in range(1, n + 1):
                ys = "*".join(f"Y{i}" for i in range(1, k + 1))
                block = ["Omega"] + [f"T{j}" for j in range(n - 1, k - 1, -1)]
                if ev(ys, n) != ev("*".join(block * k), n):
                    bad.append((n, k))
        return bad

    bad, dt = timed(check)
    criterion(not bad and dt < 60, f"Y1...Yk = (Omega T_(n-1)...T_k)^k for n <= 4: "
                                   f"{len(bad)} failures, {dt:.1f}s (< 60s)")


CLI_RUNS = [
    ["classify", "-n", "3", "s1*pi^2*y3^-1"],
    ["cocenter", "-n", "3", "Y1*T2^-1*Omega*T1"],
    ["cocenter", "E(1,0)*E(-1)", "--format", "machine"],
    ["shuffle", "R(1,0)*R(-1)", "--wheel"],
    ["verify", "rel-a1", "--target", "cocenter", "--n-max", "3", "--format", "machine"],
    ["reduce", "-n", "2", "-m", "0"],
]


def _round_trips():
    rng = random.Random(12)
    values = [
        (IntLaurent1.parse, IntLaurent1({-2: 3, 0: -1, 5: 1})),
        (RatFun2.parse, RatFun2(IntPoly2({(1, 0): 2, (0, -1): -1}), IntPoly2({(0, 0): 1, (1, 1): -1}))),
        (AffinePermutation.parse, AffinePermutation((4, -1, 3))),
        (ConvexPath.parse, ConvexPath(((2, 1), (1, -2)))),
        (lambda s: GeneratorWord.parse(s, 3), GeneratorWord.parse("s0*pi^-1*y2^2", 3)),
        (EWord.parse, EWord(((1, -1), (2,)))),
    ]
    for _ in range(10):
        n = rng.randint(1, 3)
        w = _random_word(rng, n)
        values.append((lambda s, n=n: BraidWord.parse(s, n), w))
        values.append((lambda s, n=n: HeckeElement.parse(s, n), evaluate_word(w)))
        values.append((lambda s, n=n: CocenterVector.parse(s, n), class_of(evaluate_word(w))))
    F = r_element((1, -1, 0))
    values.append((lambda s: SymLaurent.parse(s, 3), F))
    values.append((FormalElement.parse, reduce_single_rows(3, 0)))
    return [v for parse, v in values if parse(str(v)) != v]


def _cli_bytes(argv, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    r = subprocess.run([sys.executable, "-m", "affinetrace", *argv],
                       capture_output=True, env=env, check=False)
    return r.returncode, r.stdout


def test_a12_round_trip_and_determinism(criterion):
    def check():
        bad_parse = _round_trips()
        bad_runs = []
        for argv in CLI_RUNS:
            outputs = {_cli_bytes(argv, seed) for seed in (0, 1, 2)}
            if len(outputs) != 1 or next(iter(outputs))[0] != 0:
                bad_runs.append(" ".join(argv))
        return bad_parse, bad_runs

    (bad_parse, bad_runs), dt = timed(check)
    criterion(not bad_parse and not bad_runs,
              f"render/parse round trips: {len(bad_parse)} failures; byte-identical CLI output across "
              f"3 processes with different hash seeds for {len(CLI_RUNS)} commands: "
              f"{len(bad_runs)} failures, {dt:.1f}s")
