"""Closed-form invariants of tree sandpile groups checked against exact lattice computations."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import lcm, prod
from typing import Any, Iterable, Optional

from .arith import coprime_part, prime_factors, theta
from .lattice import (GroupInvariants, LatticeQuotient, direct_sum_invariants,
                      quotient_with_extra_generators, unit_vector)
from .tree import (TreeCoordinates, augment_subset, build_tree,
                   f_set, reduced_laplacian)


class TreeGroup:
    """The sandpile group of the depth-``h`` tree with its lattice data cached."""

    def __init__(self, d: int, h: int):
        self.d, self.h = d, h
        self.graph, self.coords = build_tree(d, h)
        self.laplacian = reduced_laplacian(self.graph)

    @property
    def n(self) -> int:
        return self.graph.num_vertices

    @cached_property
    def quotient(self) -> LatticeQuotient:
        return LatticeQuotient(self.laplacian)

    @property
    def invariants(self) -> GroupInvariants:
        return self.quotient.invariants

    def x(self, i: int, scale: int = 1) -> list[int]:
        return unit_vector(self.n, i, scale)

    def order(self, v) -> int:
        return self.quotient.order_of(v)

    def quotient_by(self, vertices: Iterable[int]) -> LatticeQuotient:
        """``G / <x_i : i in vertices>`` as a lattice quotient."""
        rows = self.laplacian + [self.x(i) for i in vertices]
        return LatticeQuotient(rows, self.n)


# closed forms ----------------------------------------------------------------

def predicted_rank(d: int, h: int) -> int:
    return (d - 1) ** h


def predicted_exponent(d: int, h: int) -> int:
    # for h = 1 the descending theta list is empty
    terms = [d * theta(d, h + 1)] + [theta(d, n) for n in range(2, h + 1)]
    return (d - 1) ** h * reduce(lcm, terms, 1)


def predicted_order(d: int, h: int) -> int:
    tail = prod(theta(d, h + 1 - n) ** ((d - 2) * d * (d - 1) ** (n - 1)) for n in range(1, h))
    return d * (d - 1) ** h * theta(d, h + 1) ** (d - 1) * tail


def predicted_element_orders(d: int, h: int) -> dict[str, Any]:
    """Predicted orders of the root generator, sibling differences, level sums and leaves."""
    return {
        "root": d * (d - 1) ** h,
        "sibling_difference": {n: theta(d, h + 2 - n) for n in range(1, h + 1)},
        "level_sum": {n: (d - 1) ** (h + 1 - n) for n in range(1, h + 1)},
        "leaf": predicted_exponent(d, h),
    }


def predicted_ladder(d: int, h: int) -> list[int]:
    """Predicted ``|G_{n+1} / G_n|`` for ``n = 0..h-1``."""
    return [theta(d, h + 1) ** (d - 1) if n == 0 else
            theta(d, h + 1 - n) ** ((d - 2) * d * (d - 1) ** (n - 1))
            for n in range(h)]


# element orders ----------------------------------------------------------------

@dataclass
class CheckResult:
    passed: bool
    items: list[dict] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _item(name, predicted, computed, **extra) -> dict:
    return {"name": name, "predicted": predicted, "computed": computed,
            "ok": predicted == computed, **extra}


def element_order_checks(tg: TreeGroup) -> CheckResult:
    d, h, c = tg.d, tg.h, tg.coords
    pred = predicted_element_orders(d, h)
    items = [_item("root", pred["root"], tg.order(tg.x(0)))]
    for n in range(1, h + 1):
        for i in c.sphere(n - 1):
            kids = c.children[i]
            for a, b in zip(kids, kids[1:]):
                v = tg.x(a)
                v[b] -= 1
                items.append(_item("sibling_difference", pred["sibling_difference"][n],
                                   tg.order(v), depth=n, pair=[a, b]))
        y = [0] * tg.n
        for i in c.sphere(n):
            y[i] = 1
        items.append(_item("level_sum", pred["level_sum"][n], tg.order(y), depth=n))
    for leaf in c.leaves():
        items.append(_item("leaf", pred["leaf"], tg.order(tg.x(leaf)), vertex=leaf))
    # the leaf order realises the exponent
    items.append(_item("leaf_is_exponent", tg.invariants.exponent, tg.order(tg.x(c.leaves()[0]))))
    # d * x_0 generates the cyclic (d-1)-Hall part
    items.append(_item("d_times_root", (d - 1) ** h, tg.order(tg.x(0, d))))
    return CheckResult(all(it["ok"] for it in items), items)


# telescoping identity ------------------------------------------------------------------

def telescoping_vectors(tg: TreeGroup, j: int) -> tuple[list[int], list[int]]:
    """Both sides of the telescoped Laplacian identity for non-root ``j``.

    Left: ``sum_{q=n}^{h} theta(h+1-q) * sum_{k in V_j^q} delta_k``.
    Right: ``theta(h+2-n) x_j - theta(h+1-n) x_{p(j)}``, with ``n`` the depth of ``j``.
    """
    d, h, c = tg.d, tg.h, tg.coords
    n = c.depth[j]
    if n == 0:
        raise ValueError("identity needs a non-root vertex")
    lhs = [0] * tg.n
    for q in range(n, h + 1):
        w = theta(d, h + 1 - q)
        for k in c.descendants_at_depth(j, q):
            for col, x in enumerate(tg.laplacian[k]):
                if x:
                    lhs[col] += w * x
    rhs = [0] * tg.n
    rhs[j] += theta(d, h + 2 - n)
    rhs[c.parent[j]] -= theta(d, h + 1 - n)
    return lhs, rhs


def check_telescoping_identity(tg: TreeGroup) -> CheckResult:
    """Exact vector identity for every non-root vertex, plus lattice membership of its right side."""
    items = []
    for j in range(1, tg.n):
        lhs, rhs = telescoping_vectors(tg, j)
        member = tg.quotient.contains(rhs)
        items.append({"vertex": j, "depth": tg.coords.depth[j], "identity": lhs == rhs,
                      "membership": member, "ok": lhs == rhs and member})
    return CheckResult(all(it["ok"] for it in items), items)


# quotient ladder ----------------------------------------------------------------

def subtree_group(tg: TreeGroup, j: int) -> GroupInvariants:
    """Invariants of ``K_j``: the sandpile group of the augmented subtree below ``j`` modulo ``x_j``.

    The subtree keeps degree ``d`` everywhere: ``j`` gets one sink edge (none
    for the root) and its leaves ``d - 1``.
    """
    c = tg.coords
    verts = c.descendants(j)
    if j == 0:
        g = tg.graph
    else:
        edges = [(c.parent[v], v) for v in verts if v != j]
        g = augment_subset(tg.d, verts, edges)
    # vertex j is local index 0 in both cases
    return quotient_with_extra_generators(reduced_laplacian(g), [unit_vector(g.num_vertices, 0)])


@dataclass
class QuotientLadder:
    d: int
    h: int
    group_order: int
    quotient_orders: list[int]      # |G / G_n| for n = 0..h
    ratios: list[int]               # |G_{n+1} / G_n| for n = 0..h-1
    predicted: list[int]
    g0_order: int                   # |G_0| = |G| / |G / G_0|
    root_order: int
    decomposition_ok: list[bool]    # G/G_n versus the direct sum of the K_j, j in S_n
    generator_orders: list[dict]

    @property
    def passed(self) -> bool:
        return (self.ratios == self.predicted
                and self.g0_order == self.root_order == self.d * (self.d - 1) ** self.h
                and self.g0_order * prod(self.ratios) == self.group_order
                and all(self.decomposition_ok)
                and all(it["ok"] for it in self.generator_orders))


def quotient_ladder(tg: TreeGroup) -> QuotientLadder:
    d, h, c = tg.d, tg.h, tg.coords
    quotients = [tg.quotient_by(c.ball(n)) for n in range(h + 1)]
    orders = [q.invariants.order for q in quotients]
    ratios = [orders[n] // orders[n + 1] for n in range(h)]
    decomposition = []
    for n in range(h):
        sphere = c.sphere(n)
        k = subtree_group(tg, sphere[0])
        expected = direct_sum_invariants([k] * len(sphere))
        decomposition.append(quotients[n].invariants.invariant_factors == expected.invariant_factors)
    prop = []
    for n in range(1, h + 1):
        q = quotients[n - 1]
        for j in c.sphere(n):
            prop.append(_item("order_in_quotient", theta(d, h + 2 - n), q.order_of(tg.x(j)),
                              depth=n, vertex=j))
    order = tg.invariants.order
    return QuotientLadder(d, h, order, orders, ratios, predicted_ladder(d, h),
                          order // orders[0], tg.order(tg.x(0)), decomposition, prop)


# Hall subgroup, generation, mod-d embedding ----------------------------------------

def hall_subgroup_check(d: int, h: int, invariants: GroupInvariants) -> bool:
    """The part of the group built from primes of ``d - 1`` is cyclic of order ``(d-1)^h``."""
    parts = [coprime_part(f, d - 1)[0] for f in invariants.invariant_factors]
    nontrivial = [p for p in parts if p > 1]
    return (len(nontrivial) == 1 and nontrivial[0] == (d - 1) ** h
            and parts[-1] == nontrivial[0])


def generated_quotient(tg: TreeGroup, vertices: Iterable[int]) -> GroupInvariants:
    return tg.quotient_by(vertices).invariants


def f_generates_check(tg: TreeGroup) -> bool:
    return generated_quotient(tg, f_set(tg.coords)).order == 1


@dataclass
class ZdEmbedding:
    d: int
    h: int
    f_members: list[int]
    vectors: dict[int, list[int]]   # k in F -> solution vector mod d
    congruences_ok: bool
    unit_ok: bool
    surjective: bool

    @property
    def passed(self) -> bool:
        return self.congruences_ok and self.unit_ok and self.surjective


def solve_mod_d_system(coords: TreeCoordinates, values: dict[int, int]) -> list[int]:
    """Solve ``Delta v = 0 (mod d)`` with ``v_i = values[i]`` prescribed on the F-set.

    Built two levels at a time: depth ``h`` extends a solution for depth ``h - 2``
    by zeros on the new odd level and by fixing each distinguished child so its
    parent's congruence holds.
    """
    d, h = coords.d, coords.h
    c = coords
    s = [0] * c.num_vertices
    if h % 2 == 0:
        s[0] = values.get(0, 0)
        start = 0
    else:
        kids = c.children[0]
        for i in kids[1:]:
            s[i] = values.get(i, 0)
        s[kids[0]] = -sum(s[i] for i in kids[1:])
        start = 1
    for level in range(start, h, 2):
        for i in c.sphere(level + 1):
            s[i] = 0
            kids = c.children[i]
            for k in kids[1:]:
                s[k] = values.get(k, 0)
            s[kids[0]] = -sum(s[k] for k in kids[1:]) - s[c.parent[i]]
    return [x % d for x in s]


def zd_embedding(tg: TreeGroup) -> ZdEmbedding:
    d = tg.d
    F = list(f_set(tg.coords))
    vectors = {k: solve_mod_d_system(tg.coords, {k: 1}) for k in F}
    congruences = all(sum(a * b for a, b in zip(row, v)) % d == 0
                      for v in vectors.values() for row in tg.laplacian)
    unit = all(vectors[k][i] == int(i == k) for k in F for i in F)
    # omega(x_i) = (v_k[i])_k; its restriction to F must be the identity, hence onto Z_d^F
    image = [[vectors[k][i] for k in F] for i in F]
    surjective = image == [[int(a == b) for b in range(len(F))] for a in range(len(F))]
    return ZdEmbedding(d, tg.h, F, vectors, congruences, unit, surjective)


# full report ----------------------------------------------------------------------

ALL_CHECKS = ("rank", "order", "exponent", "hall", "element_orders",
              "identity_21", "ladder", "f_set", "zd")


@dataclass
class TheoremReport:
    d: int
    h: int
    num_vertices: int
    computed: GroupInvariants
    predicted_rank: int
    predicted_exponent: int
    predicted_order: int
    checks: dict[str, bool]
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return all(self.checks.values())


def verify_tree(d: int, h: int, checks: Optional[Iterable[str]] = None,
                tg: Optional[TreeGroup] = None) -> TheoremReport:
    selected = tuple(checks) if checks else ALL_CHECKS
    unknown = set(selected) - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    tg = tg or TreeGroup(d, h)
    inv = tg.invariants
    pr, pe, po = predicted_rank(d, h), predicted_exponent(d, h), predicted_order(d, h)
    out: dict[str, bool] = {}
    details: dict[str, Any] = {}
    for name in selected:
        if name == "rank":
            out[name] = inv.rank == pr
        elif name == "order":
            out[name] = inv.order == po
        elif name == "exponent":
            out[name] = inv.exponent == pe
        elif name == "hall":
            out[name] = hall_subgroup_check(d, h, inv)
        elif name == "element_orders":
            res = element_order_checks(tg)
            out[name] = res.passed
            details[name] = [it for it in res.items if not it["ok"]] or "all match"
        elif name == "identity_21":
            res = check_telescoping_identity(tg)
            out[name] = res.passed
            details[name] = [it["vertex"] for it in res.items if not it["ok"]] or "all match"
        elif name == "ladder":
            lad = quotient_ladder(tg)
            out[name] = lad.passed
            details[name] = {"ratios": lad.ratios, "predicted": lad.predicted,
                             "g0_order": lad.g0_order, "decomposition": lad.decomposition_ok}
        elif name == "f_set":
            out[name] = f_generates_check(tg)
        elif name == "zd":
            emb = zd_embedding(tg)
            p_ranks = {p: inv.p_rank(p) for p in prime_factors(d)}
            out[name] = emb.passed and all(r == pr for r in p_ranks.values())
            details[name] = {"p_ranks": p_ranks, "surjective": emb.surjective,
                             "congruences": emb.congruences_ok}
    return TheoremReport(d, h, tg.n, inv, pr, pe, po, out, details)
