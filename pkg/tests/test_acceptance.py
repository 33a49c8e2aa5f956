"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (the lines print even under
capture) or ``python tests/test_acceptance.py``.
"""

import random
import time

import pytest

from twistlab.homology import (
    IntMatrix,
    abelianize,
    double_cover_h1,
    double_cover_lift,
    double_cover_matrix,
)
from twistlab.mapclass import MappingClass, power, twist
from twistlab.relations import PASS, find_triangle, load_catalog, mutants, run_suite
from twistlab.surface import build_model, build_table, validate_table
from twistlab.words import DEFAULT_MAX_WORD_LENGTH, compose, identity_map, max_word_length

CATALOG = load_catalog()
_lines: list[str] = []


def report(capsys, number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    _lines.append(line)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def suite_for(prefixes):
    fixtures = [f for f in CATALOG if f.id.startswith(prefixes)]
    return run_suite(catalog=fixtures)


def test_criterion_1_table_certification(capsys):
    details, ok = [], True
    for k in (3, 4, 5, 6):
        start = time.perf_counter()
        r = validate_table(build_model(k))
        elapsed = time.perf_counter() - start
        ok &= r.ok and elapsed < 1.0
        details.append(f"k={k}: {r.checks} checks {'ok' if r.ok else r.first_failure} in {elapsed:.3f}s")
    report(capsys, 1, "elementary table certified for k=3..6", ok, "; ".join(details))


def test_criterion_2_three_crosscap_relations(capsys):
    start = time.perf_counter()
    r = suite_for(("R-PSz-", "R-u1-inverts", "R-e-", "R-vsq-odd-"))
    elapsed = time.perf_counter() - start
    psz = sum(1 for x in r.results if x.id.startswith("R-PSz"))
    ok = r.passed and psz == 6 and len(r.results) == 15 and elapsed < 1.0
    report(capsys, 2, "R-PSz-1..6, R-e, R-vsq-odd in k=3", ok,
           f"{r.counts()[PASS]}/{len(r.results)} pass ({psz} R-PSz), v^2 = conjugation by the boundary word, {elapsed:.3f}s")


def test_criterion_3_even_presentation(capsys):
    start = time.perf_counter()
    r = suite_for(("R-S-pres-", "R-vsq-even-"))
    elapsed = time.perf_counter() - start
    ok = r.passed and len(r.results) == 8 and elapsed < 5.0
    report(capsys, 3, "R-S-pres and R-vsq-even in k=6", ok,
           f"{r.counts()[PASS]}/{len(r.results)} pass in {elapsed:.3f}s")


def test_criterion_4_d6(capsys):
    fixture = next(f for f in CATALOG if f.id == "R-D6")
    start = time.perf_counter()
    lhs, rhs = fixture.subjects()
    table = build_table(lhs.model)
    peak, f = 0, identity_map(6)
    for name, sign in lhs.factors:
        w = table[name]
        f = compose(f, w.forward if sign == 1 else w.backward)
        peak = max(peak, f.max_image_length())
    equal = f == rhs.evaluate() == lhs.evaluate()
    elapsed = time.perf_counter() - start
    ok = equal and peak < DEFAULT_MAX_WORD_LENGTH and max_word_length() == DEFAULT_MAX_WORD_LENGTH and elapsed < 30
    report(capsys, 4, "R-D6 word equals a single twist", ok,
           f"{len(lhs)} factors evaluate to {fixture.rhs}; peak image length {peak}; {elapsed:.3f}s")


def test_criterion_5_triangle(capsys):
    start = time.perf_counter()
    m = build_model(4)
    w = find_triangle(m, 3)
    elapsed = time.perf_counter() - start
    ok = w is not None and elapsed < 60
    if w is not None:
        from twistlab.relations import triangle_relations_hold

        ok &= triangle_relations_hold(*w.classes(m))
    detail = (f"a={w.a}, b={w.b}, c={w.c.base} pushed by {w.pushing_word}" if w else "not found")
    report(capsys, 5, "nonorientable triangle in N_{4,1}, depth <= 3", ok, f"{detail}; {elapsed:.3f}s")


def test_criterion_6_gamma(capsys):
    start = time.perf_counter()
    checked, bad = 0, []
    for k in range(2, 7):
        m = build_model(k)
        for i, j in m.two_sided_intervals():
            t = twist(m, i, j)
            mat = double_cover_h1(t)
            nil = mat - IntMatrix.identity(mat.size)
            if not (nil @ nil).is_zero():
                bad.append(f"k={k} T({i},{j}) not unipotent")
            for mod in (2, 3, 5):
                checked += 1
                if not double_cover_h1(power(t, mod)).is_identity_mod(mod):
                    bad.append(f"k={k} T({i},{j})^{mod}")
                if mat.is_identity_mod(mod):
                    bad.append(f"k={k} T({i},{j}) trivial mod {mod}")
    r = suite_for(("R-gamma-",))
    elapsed = time.perf_counter() - start
    ok = not bad and r.passed and elapsed < 5
    report(capsys, 6, "twist powers in Gamma'(m), twists not, (M-I)^2 = 0", ok,
           f"{checked} (twist, m) pairs for k=2..6, {len(r.results)} catalog fixtures; {bad[:3] or 'no violations'}; {elapsed:.3f}s")


def test_criterion_7_rank(capsys):
    start = time.perf_counter()
    r = suite_for(("R-rank-",))
    elapsed = time.perf_counter() - start
    values = [f"{x.id.removeprefix('R-rank-')}={x.value}" for x in r.results]
    ok = r.passed and all(x.value is not None and x.value >= 1 for x in r.results) and elapsed < 5
    report(capsys, 7, "disjoint twist families commute; rank lower bounds", ok,
           f"{len(r.results)} families, {elapsed:.3f}s: " + ", ".join(values))


def test_criterion_8_mutation(capsys):
    start = time.perf_counter()
    total, survivors, untouched = 0, [], []
    for f in CATALOG:
        produced = 0
        for m in mutants(f):
            produced += 1
            if m.status != "fail":
                survivors.append(f"{m.fixture_id}@{m.subject}:{m.position}")
        total += produced
        if produced == 0:
            untouched.append(f.id)
    elapsed = time.perf_counter() - start
    ok = not survivors and not untouched and elapsed < 120
    report(capsys, 8, "every single-factor corruption flips PASS to FAIL", ok,
           f"{total} mutants over {len(CATALOG)} fixtures, survivors {survivors[:3] or 'none'}, {elapsed:.1f}s")


def test_criterion_9_functoriality_and_determinism(capsys):
    start = time.perf_counter()
    rng = random.Random(20261016)
    failures, count = [], 0
    for k in (3, 4, 5, 6):
        m = build_model(k)
        names = list(build_table(m).entries) + ["D"]
        for _ in range(1000):
            a = MappingClass(m, tuple((rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))))
            b = MappingClass(m, tuple((rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, 5))))
            count += 1
            fa, fb, fab = a.evaluate(), b.evaluate(), (a * b).evaluate()
            if fab != compose(fa, fb) or compose(fa, a.inverse().evaluate()) != identity_map(k):
                failures.append(("word", k, a, b))
            if abelianize(fab) != abelianize(fa) @ abelianize(fb):
                failures.append(("abelian", k, a, b))
            la, lb = double_cover_lift(fa), double_cover_lift(fb)
            if double_cover_lift(fab) != compose(la, lb):
                failures.append(("cover", k, a, b))
            if double_cover_matrix(fab) != double_cover_matrix(fa) @ double_cover_matrix(fb):
                failures.append(("cover-h1", k, a, b))
    first, second = run_suite(), run_suite()
    concurrent = run_suite(workers=4)
    deterministic = first.to_json() == second.to_json() == concurrent.to_json()
    elapsed = time.perf_counter() - start
    ok = not failures and deterministic and first.passed
    report(capsys, 9, "functoriality at three levels; deterministic suite", ok,
           f"{count} random pairs over k=3..6, {len(failures)} law violations; "
           f"serial/serial/concurrent reports identical: {deterministic}; {elapsed:.1f}s")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(None)
            except AssertionError:
                pass
    print(f"{sum(l.startswith('[PASS]') for l in _lines)}/{len(_lines)} criteria pass")
