"""Acceptance criteria, one test each, with a PASS/FAIL line per criterion.

Tolerances: every comparison here is exact integer equality except the
numeric tail bound, which is compared against the fixed threshold 1e-10.
Run ``pytest tests/test_acceptance.py -v`` and read the "acceptance
criteria" section at the end of the report.
"""
import random
import time
from functools import cache

import pytest
from mpmath import mpf

from conftest import ACCEPTANCE_LINES
from sandpile_trees.asymptotics import asymptotic_report, c_d_partial
from sandpile_trees.dynamics import (is_recurrent, is_recurrent_by_definition,
                                     operator_relation_check, recurrent_configurations,
                                     recurrent_group, stabilize, stable_configurations)
from sandpile_trees.lattice import determinant
from sandpile_trees.sylow import conjectured_sylow_rank
from sandpile_trees.theorems import (TreeGroup, check_telescoping_identity, element_order_checks,
                                     hall_subgroup_check, predicted_exponent, predicted_order,
                                     predicted_rank, quotient_ladder, zd_embedding)
from sandpile_trees.tree import build_tree, reduced_laplacian

GRID = [(3, 1), (3, 2), (3, 3), (3, 4), (3, 5), (4, 1), (4, 2), (4, 3), (5, 1), (5, 2)]
TAIL_THRESHOLD = mpf("1e-10")
RANDOM_CONFIGS = 100


@cache
def group(d, h):
    return TreeGroup(d, h)


def record(key, ok, summary):
    ACCEPTANCE_LINES[key] = f"criterion {key:>7}: {'PASS' if ok else 'FAIL'}  {summary}"
    print(ACCEPTANCE_LINES[key])
    assert ok, summary


def test_criterion_01_theorem_grid():
    start = time.perf_counter()
    bad = []
    for d, h in GRID:
        inv = TreeGroup(d, h).invariants
        if not (inv.rank == predicted_rank(d, h) and inv.order == predicted_order(d, h)
                and inv.exponent == predicted_exponent(d, h)
                and hall_subgroup_check(d, h, inv)):
            bad.append((d, h))
    elapsed = time.perf_counter() - start
    record("1", not bad and elapsed < 60,
           f"rank/order/exponent/Hall on {len(GRID)} trees, mismatches {bad}, {elapsed:.2f}s (limit 60s)")


def test_criterion_02_pinned_factors():
    pinned = {(3, 1): (3, 18), (3, 2): (3, 3, 21, 84), (4, 1): (4, 4, 48)}
    got = {k: group(*k).invariants.invariant_factors for k in pinned}
    record("2", got == pinned, f"invariant factors {got}")


def test_criterion_03_element_orders():
    bad = []
    for d, h in GRID:
        res = element_order_checks(group(d, h))
        bad += [(d, h, it["name"]) for it in res.items if not it["ok"]]
    record("3", not bad, f"root, level sums, sibling differences, leaves on the grid; failures {bad[:5]}")


def test_criterion_04_lattice_identities():
    identity_ok = all(it["identity"] for dh in [(3, 3), (4, 2)]
                      for it in check_telescoping_identity(group(*dh)).items)
    member_bad = [(d, h) for d, h in GRID
                  if not all(it["membership"] for it in check_telescoping_identity(group(d, h)).items)]
    record("4", identity_ok and not member_bad,
           f"exact identity on (3,3),(4,2): {identity_ok}; membership failures {member_bad}")


def test_criterion_05_quotient_ladder():
    rows = {}
    for d, h in [(3, 1), (3, 2), (4, 2)]:
        lad = quotient_ladder(group(d, h))
        telescopes = lad.g0_order * _prod(lad.ratios) == lad.group_order
        rows[(d, h)] = (lad.ratios == lad.predicted, telescopes,
                        all(it["ok"] for it in lad.generator_orders), all(lad.decomposition_ok))
    ok = all(all(v) for v in rows.values())
    record("5", ok, f"(ratios, telescoping, orders in quotients, subtree split) {rows}")


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def test_criterion_06_dynamics_t31():
    start = time.perf_counter()
    g, _ = build_tree(3, 1)
    summary = recurrent_group(g)
    stable = list(stable_configurations(g))
    burning_agrees = all(is_recurrent(g, c) == is_recurrent_by_definition(g, c) for c in stable)
    recs = recurrent_configurations(g)
    relation = all(operator_relation_check(g, i, recs) for i in range(g.num_vertices))
    det = abs(determinant(reduced_laplacian(g)))
    elapsed = time.perf_counter() - start
    ok = (summary.stable_count == 81 and summary.recurrent_count == 54 == det
          and summary.closed and summary.order == 54 and summary.exponent == 18
          and burning_agrees and relation and elapsed < 5)
    record("6", ok, f"{summary.recurrent_count}/{summary.stable_count} recurrent, det {det}, "
                    f"exponent {summary.exponent}, burning agrees {burning_agrees}, "
                    f"relations {relation}, {elapsed:.2f}s (limit 5s)")


def test_criterion_07_abelianness():
    failures = 0
    for d, h in [(3, 2), (4, 2)]:
        g, _ = build_tree(d, h)
        L = reduced_laplacian(g)
        n = g.num_vertices
        rng = random.Random(1000 * d + h)
        for k in range(RANDOM_CONFIGS):
            c = [rng.randrange(0, 4 * d) for _ in range(n)]
            a = stabilize(g, c, seed=2 * k + 1)
            b = stabilize(g, c, seed=2 * k + 2)
            fifo = stabilize(g, c)
            same = a.stable == b.stable == fifo.stable and a.odometer == b.odometer == fifo.odometer
            conserved = sum(c) == a.stable.total() + a.grains_to_sink
            moved = [sum(a.odometer[i] * L[i][j] for i in range(n)) for j in range(n)]
            lattice = [x - y for x, y in zip(c, a.stable)] == moved
            failures += not (same and conserved and lattice)
    record("7", failures == 0,
           f"{RANDOM_CONFIGS} random configurations each on (3,2),(4,2); failing runs {failures}")


def test_criterion_08_rank_subgroup():
    bad = [(d, h) for d, h in GRID if not zd_embedding(group(d, h)).passed]
    ranks = {(4, h): group(4, h).invariants.p_rank(2) for h in (1, 2)}
    ok = not bad and ranks == {(4, 1): 3, (4, 2): 9}
    record("8", ok, f"mod-d embedding failures {bad}; 2-ranks {ranks} (want 3, 9)")


def test_criterion_09_conjecture():
    table = {}
    for d, p in [(3, 5), (3, 7)]:
        for h in range(1, 6):
            pred = conjectured_sylow_rank(d, h, p, group(d, h).invariants)
            table[(d, p, h)] = (pred.predicted_rank, pred.computed_rank)
    pinned = (table[(3, 7, 2)] == (2, 2) and table[(3, 7, 3)][0] == table[(3, 7, 3)][1]
              and table[(3, 5, 3)][0] == table[(3, 5, 3)][1])
    others = sum(a != b for a, b in table.values())
    record("9", pinned, f"pinned cases hold: {pinned}; unpinned mismatches reported: {others}")


def test_criterion_10a_sandwich():
    held = {d: asymptotic_report(d, 5, 30).sandwich_holds for d in (3, 4)}
    record("10a", all(held.values()), f"exponent sandwich for h <= 5: {held}")


def test_criterion_10b_monotone_deviation():
    rep = asymptotic_report(3, 5, 30)
    devs = [rep.order_deviation[h] for h in range(2, 6)]
    record("10b", rep.deviation_decreasing,
           "deviation for d=3, h=2..5: " + ", ".join(f"{float(x):.4g}" for x in devs))


@pytest.mark.parametrize("d", [3, 4])
def test_criterion_10c_tail_bound(d):
    _, tail = c_d_partial(d, 30)
    record(f"10c d={d}", tail < TAIL_THRESHOLD,
           f"c_{d} tail bound after 30 terms {float(tail):.3e} (threshold 1e-10)")


def test_criterion_10d_exponent_ratio_reported():
    rep = asymptotic_report(3, 5, 30)
    ratios = {h: float(r) for h, r in rep.exponent_ratio.items()}
    ACCEPTANCE_LINES["10d"] = ("criterion     10d: INFO  log exponent over 3h^2/pi^2 for d=3: "
                               + ", ".join(f"h={h} {r:.3f}" for h, r in ratios.items()))
    assert len(ratios) == 5
