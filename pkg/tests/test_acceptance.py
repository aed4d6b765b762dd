"""Acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (visible under plain
``pytest``) and then asserts.  All comparisons are exact rational equality;
runtime limits are checked against wall-clock time.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from scylla.chain import parse_chain, parse_group
from scylla.experiments import (
    RandomChainSpec,
    bracket_coefficients,
    bracket_formula,
    check_finite_approx,
    histogram,
    histogram_csv,
    random_chains,
    sample_scl,
)
from scylla.lp import build_lp, dimension_bounds
from scylla.pieces import Edge, enumerate_pieces, enumerate_triangles, partner
from scylla.scl import compute_scl, format_rational
from scylla.simplex import certify
from scylla.surface import verify_extremal

from test_pieces import brute_triangles

HALF = Fraction(1, 2)
BRACKET = bracket_formula(Fraction(2, 3), Fraction(2, 3), Fraction(1, 2))

CRITERION_1 = [("a0b0", "abAB", HALF)]
CRITERION_2 = [("a3b2", "ab", Fraction(1, 12)), ("a3b2", "aabab", Fraction(0))]
CRITERION_3 = [(f"a{p}b{q}", "abAB", HALF - Fraction(1, min(p, q)))
               for p in range(2, 7) for q in range(2, 7)]
CRITERION_4 = [(f"a{o}b0", "abAB", HALF - Fraction(1, o)) for o in range(2, 9)]


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
    return emit


def _solve_all(cases):
    """Return (failures, results) where results hold (group, chain, value, SCLResult)."""
    bad, out = [], []
    for g, w, want in cases:
        res = compute_scl(g, w)
        if res.value != want or not certify(res.lp, res.solution):
            bad.append(f"{w} in {g}: got {format_rational(res.value)}, want {format_rational(want)}")
        out.append(res)
    return bad, out


def test_criterion_1_free_commutator(report):
    t = time.perf_counter()
    bad, _ = _solve_all(CRITERION_1)
    dt = time.perf_counter() - t
    ok = not bad and dt < 1
    report(1, ok, f"scl(abAB) in a0b0 = 1/2 ({dt:.2f}s < 1s) {bad}")
    assert ok


def test_criterion_2_modular_group(report):
    times, bad = [], []
    for case in CRITERION_2:
        t = time.perf_counter()
        b, _ = _solve_all([case])
        times.append(time.perf_counter() - t)
        bad += b
    ok = not bad and max(times) < 1
    report(2, ok, f"a3b2: scl(ab) = 1/12, scl(aabab) = 0 "
                  f"(slowest {max(times):.2f}s < 1s each) {bad}")
    assert ok


def test_criterion_3_commutator_grid(report):
    t = time.perf_counter()
    bad, _ = _solve_all(CRITERION_3)
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    report(3, ok, f"scl([a,b]) = 1/2 - 1/min(o1,o2) on 25 grid points ({dt:.1f}s < 60s) {bad}")
    assert ok


def test_criterion_4_one_infinite_factor(report):
    t = time.perf_counter()
    bad, _ = _solve_all(CRITERION_4)
    dt = time.perf_counter() - t
    ok = not bad and dt < 60
    report(4, ok, f"scl([a,b]) = 1/2 - 1/o for o = 2..8, b infinite ({dt:.1f}s < 60s) {bad}")
    assert ok


CRITERION_5 = [(f"a{p}b{q}", "abAABB+ab", BRACKET({"a": p, "b": q}))
               for p in range(2, 6) for q in range(2, 6)]


def _cancels_in_homology(group: str, words: str) -> bool:
    """True if the normalized chain is ``w + v`` with ``v`` a cyclic conjugate of ``w^-1``.

    Such a chain is zero in the homology boundary space, so its scl is 0.
    """
    c = parse_chain(parse_group(group), words)
    if len(c.words) != 2:
        return False
    w, v = c.word_texts()
    inv = str(parse_chain(c.group, w[::-1].swapcase()))
    return len(inv) == len(v) and inv in v + v


def test_criterion_5_bracket(report):
    t = time.perf_counter()
    bad_main, _ = _solve_all([c for c in CRITERION_5 if min(parse_group(c[0]).orders) >= 3])
    bad_two, results = _solve_all([c for c in CRITERION_5 if min(parse_group(c[0]).orders) == 2])
    dt = time.perf_counter() - t
    ok = not bad_main and not bad_two and dt < 300
    report(5, ok, f"scl(abAABB+ab) = 2/3 - {{2/3,1/2}}/min on (o1,o2) in {{2..5}}^2 "
                  f"({dt:.1f}s < 300s); min 3..5 mismatches: {bad_main or 'none'}; "
                  f"min 2 mismatches: {bad_two or 'none'}")
    assert not bad_main and dt < 300
    # Independent oracle for min = 2: the chain is w + (conjugate of w^-1), so scl = 0.
    explained = all(r.value == 0 and _cancels_in_homology(str(r.chain.group), "abAABB+ab")
                    for r in results)
    if bad_two and explained:
        print("min = 2: every point gives 0, not 1/3.  With an order-2 generator the chain "
              "normalizes to w + w^-1 up to conjugacy, so it is null in homology and scl = 0.")
        pytest.xfail("formula stated for min >= 2 fails at min = 2, where the chain is null-homologous")
    assert ok


def _one_sided(o1: int) -> Fraction:
    return HALF - Fraction(2 if o1 % 2 == 0 else 1, o1)


def test_criterion_6_one_sided(report):
    cases = [(f"a{p}b{q}", "aabABAAbaB", _one_sided(p)) for p, q in [(3, 3), (4, 3), (3, 4), (4, 4)]]
    t = time.perf_counter()
    bad, _ = _solve_all(cases)
    dt = time.perf_counter() - t
    ok = not bad and dt < 600
    report(6, ok, f"scl(aabABAAbaB) = 1/2 - {{2,1}}/o1 at 4 points ({dt:.1f}s < 600s) {bad}")
    assert ok


def test_criterion_7_finite_approximation(report):
    t = time.perf_counter()
    lines, ok = [], True
    for words in (["abAB"], ["abAABB", "ab"]):
        for orders in ("a3b3", "a4b4", "a5b0"):
            r = check_finite_approx(words, orders)
            ok &= r.holds
            lines.append(f"{'+'.join(words)}@{orders}: {r}")
    tight = check_finite_approx("abAB", "a5b0").tight
    dt = time.perf_counter() - t
    ok = ok and tight and dt < 300
    report(7, ok, f"inequality holds at 6 points, tight for abAB at (5,0) ({dt:.1f}s < 300s)")
    for line in lines:
        print(line)
    assert ok


def test_criterion_8_extremal_surfaces(report):
    t = time.perf_counter()
    bad = []
    cases = CRITERION_1 + CRITERION_2 + CRITERION_3 + CRITERION_4
    for g, w, _ in cases:
        res = compute_scl(g, w)
        rep = verify_extremal(res.surface(), res.solution)
        if not (rep.checks["ratio"] and rep.checks["boundary_degree"]):
            bad.append(f"{w} in {g}: {rep.lines()}")
    dt = time.perf_counter() - t
    ok = not bad and dt < 120
    report(8, ok, f"{len(cases)} surfaces: -chi/2k = scl and boundary degree k ({dt:.1f}s < 120s) {bad}")
    assert ok


def test_criterion_9_properties(report):
    t = time.perf_counter()
    rng = random.Random(9)
    problems = []

    # partner involution on 1000 random edges
    pool = random_chains(RandomChainSpec("a3b2", 8, 20, seed=91)) + \
        random_chains(RandomChainSpec("a0b0", 8, 20, seed=92))
    for _ in range(1000):
        c = rng.choice(pool)
        e = Edge(rng.randrange(len(c)), rng.randrange(len(c)))
        if partner(c, partner(c, e)) != e:
            problems.append(f"involution fails at {e} in {c}")

    # triangles against brute force on small chains
    small = [c for c in pool if len(c) <= 8][:20]
    for c in small:
        if enumerate_triangles(c) != brute_triangles(c):
            problems.append(f"triangle mismatch on {c}")

    # dimension bounds on 100 random chains
    groups = ["a3b2", "a0b0", "a4b0", "a2b3c0"]
    hundred = [c for i, g in enumerate(groups)
               for c in random_chains(RandomChainSpec(g, rng.randint(4, 8), 25, seed=100 + i))]
    for c in hundred:
        lp = build_lp(c)
        rows, cols = dimension_bounds(c)
        if lp.num_rows > rows or lp.num_cols > cols or len(enumerate_pieces(c)) > cols:
            problems.append(f"bounds exceeded on {c}")

    # certificate, homogeneity, rotation on 20 chains per group
    solved = 0
    for g, seed in (("a3b2", 93), ("a0b0", 94)):
        for c in random_chains(RandomChainSpec(g, 6, 20, seed=seed)):
            words = c.word_texts()
            base = compute_scl(c.group, words)
            k = rng.randrange(len(words[0]))
            rotated = compute_scl(c.group, [words[0][k:] + words[0][:k]])
            doubled = compute_scl(c.group, words + words)
            for res in (base, rotated, doubled):
                solved += 1
                if res.lp is not None and not certify(res.lp, res.solution):
                    problems.append(f"certificate fails on {res.chain}")
            if rotated.value != base.value:
                problems.append(f"rotation changes scl of {c}")
            if doubled.value != 2 * base.value:
                problems.append(f"doubling {c}: {doubled.value} != 2 * {base.value}")
    dt = time.perf_counter() - t
    ok = not problems
    report(9, ok, f"1000 partner edges, {len(small)} triangle brute-force checks, "
                  f"{len(hundred)} bound checks, {solved} certified solves ({dt:.1f}s) {problems[:3]}")
    assert ok


def test_criterion_10_substitutes(report):
    t = time.perf_counter()
    spec = RandomChainSpec("a3b2", 8, 200, seed=2026)
    first = sample_scl(spec)
    second = sample_scl(spec)
    values = [r.value for r in first]
    same = [(r.chain, r.value) for r in first] == [(r.chain, r.value) for r in second]
    text = histogram_csv(histogram(values, Fraction(1, 12)))
    dt = time.perf_counter() - t
    hist_ok = (len(values) >= 200 and all(v is not None and v >= 0 for v in values)
               and same and dt < 600)

    # parity periodicity of the bracket coefficient for abAABB+ab
    # (min = 2 is excluded: there the chain is null-homologous, see criterion 5)
    diag = {m: compute_scl(f"a{m}b{m}", "abAABB+ab").value for m in range(3, 9)}
    coeff = bracket_coefficients(diag, Fraction(2, 3))
    periodic = all(coeff[m] == coeff[m + 2] for m in range(3, 7)) and coeff[3] != coeff[4]
    ok = hist_ok and periodic
    report(10, ok, f"length-8 a3b2 histogram of {len(values)} seeded samples, deterministic, "
                   f"all >= 0 ({dt:.1f}s < 600s); bracket coefficients "
                   f"{ {m: format_rational(c) for m, c in coeff.items()} } have period 2")
    print(text)
    assert ok
