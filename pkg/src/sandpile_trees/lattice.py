"""Exact integer linear algebra for lattice quotients ``Z^N / Lambda``.

Matrices are plain ``list[list[int]]`` in row-major order; Python integers
give arbitrary precision.  The row lattice of a matrix ``M`` is the set of
integer combinations of its rows, so ``Z^N / rowspace(M)`` is the group
presented by ``M``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd, lcm
from typing import Iterable, Sequence

IntegerMatrix = list[list[int]]


class DegenerateLatticeError(ValueError):
    """The rows do not span a full-rank lattice, so the quotient is infinite."""


def identity(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in a]


def vecmat(v: Sequence[int], m: IntegerMatrix) -> list[int]:
    """Row vector times matrix."""
    out = [0] * (len(m[0]) if m else 0)
    for c, row in zip(v, m):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] += c * x
    return out


@dataclass(frozen=True)
class SNFResult:
    """``left @ M @ right == diag(diagonal)`` padded to the shape of ``M``."""

    diagonal: tuple[int, ...]
    left: IntegerMatrix
    right: IntegerMatrix


@dataclass(frozen=True)
class GroupInvariants:
    invariant_factors: tuple[int, ...]
    order: int
    exponent: int
    rank: int

    @classmethod
    def from_diagonal(cls, diagonal: Iterable[int]) -> "GroupInvariants":
        factors = tuple(x for x in diagonal if x > 1)
        return cls(factors, reduce(lambda a, b: a * b, factors, 1),
                   factors[-1] if factors else 1, len(factors))

    def p_rank(self, p: int) -> int:
        """Rank of the Sylow ``p``-subgroup."""
        return sum(1 for f in self.invariant_factors if f % p == 0)


def _nearest_quotient(a: int, b: int) -> int:
    # divmod gives r the sign of b, so stepping q up shrinks |r| past the midpoint
    q, r = divmod(a, b)
    return q + 1 if 2 * abs(r) > abs(b) else q


def smith_normal_form(m: IntegerMatrix) -> SNFResult:
    """Smith normal form with unimodular transforms.

    Pivots are chosen by least absolute value to keep coefficients small.
    The returned diagonal has length ``min(rows, cols)``; zeros come last.
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [list(map(int, r)) for r in m]
    if any(len(r) != cols for r in a):
        raise ValueError("matrix is not rectangular")
    u = identity(rows)
    v = identity(cols)

    def row_sub(i, t, q):
        # row_i -= q * row_t
        ai, at = a[i], a[t]
        for j in range(t, cols):
            if at[j]:
                ai[j] -= q * at[j]
        ui, ut = u[i], u[t]
        for j in range(rows):
            if ut[j]:
                ui[j] -= q * ut[j]

    def col_sub(j, t, q):
        # col_j -= q * col_t
        for r in range(t, rows):
            x = a[r][t]
            if x:
                a[r][j] -= q * x
        for r in range(cols):
            x = v[r][t]
            if x:
                v[r][j] -= q * x

    def swap_rows(i, t):
        a[i], a[t] = a[t], a[i]
        u[i], u[t] = u[t], u[i]

    def swap_cols(j, t):
        for r in a:
            r[j], r[t] = r[t], r[j]
        for r in v:
            r[j], r[t] = r[t], r[j]

    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            ai = a[i]
            for j in range(t, cols):
                x = ai[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)

        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    row_sub(i, t, _nearest_quotient(a[i][t], p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    col_sub(j, t, _nearest_quotient(a[t][j], p))
            # any leftover in row/column t is smaller than the pivot: promote it
            cand = None
            for i in range(t + 1, rows):
                x = a[i][t]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), i, None)
            for j in range(t + 1, cols):
                x = a[t][j]
                if x and (cand is None or abs(x) < cand[0]):
                    cand = (abs(x), None, j)
            if cand is not None:
                done = False
                if cand[1] is not None:
                    swap_rows(cand[1], t)
                else:
                    swap_cols(cand[2], t)
                continue
            # divisibility: fold in any row whose entries the pivot does not divide
            for i in range(t + 1, rows):
                ai = a[i]
                if any(x % p for x in ai[t + 1:] if x):
                    for j in range(rows):
                        if u[i][j]:
                            u[t][j] += u[i][j]
                    at = a[t]
                    for j in range(t + 1, cols):
                        at[j] += ai[j]
                    done = False
                    break
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    diagonal = tuple(a[t][t] for t in range(min(rows, cols)))
    return SNFResult(diagonal, u, v)


def determinant(m: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    a = [list(map(int, r)) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (akk * ai[j] - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


class LatticeQuotient:
    """The finite abelian group ``Z^N / rowspace(generators)``.

    ``generators`` may have more rows than columns; it must have rank ``N``.
    """

    def __init__(self, generators: IntegerMatrix, dimension: int | None = None):
        gens = [list(r) for r in generators]
        n = dimension if dimension is not None else (len(gens[0]) if gens else 0)
        if any(len(r) != n for r in gens):
            raise ValueError("generator length does not match the ambient dimension")
        self.dimension = n
        self.generators = gens
        if n == 0:
            self.snf = SNFResult((), identity(len(gens)), [])
            return
        if not gens:
            raise DegenerateLatticeError("no generators for a nonzero ambient space")
        self.snf = smith_normal_form(gens)
        if len(self.snf.diagonal) < n or any(x == 0 for x in self.snf.diagonal):
            raise DegenerateLatticeError("generators do not span a full-rank lattice")

    @cached_property
    def invariants(self) -> GroupInvariants:
        return GroupInvariants.from_diagonal(self.snf.diagonal)

    def coordinates(self, v: Sequence[int]) -> list[int]:
        """Image of ``v`` in the cyclic decomposition ``⊕ Z/d_i``, reduced mod ``d_i``."""
        if len(v) != self.dimension:
            raise ValueError(f"vector of length {len(v)} in dimension {self.dimension}")
        c = vecmat(v, self.snf.right)
        return [x % d for x, d in zip(c, self.snf.diagonal)]

    def order_of(self, v: Sequence[int]) -> int:
        return reduce(lcm, (d // gcd(d, c) for c, d in zip(self.coordinates(v), self.snf.diagonal)), 1)

    def contains(self, v: Sequence[int]) -> bool:
        """Whether ``v`` lies in the lattice, i.e. is zero in the quotient."""
        return not any(self.coordinates(v))


def group_invariants(m: IntegerMatrix) -> GroupInvariants:
    return LatticeQuotient(m).invariants


def element_order(v: Sequence[int], basis: IntegerMatrix) -> int:
    """Least ``r > 0`` with ``r * v`` in the row lattice of ``basis``."""
    return LatticeQuotient(basis).order_of(v)


def quotient_with_extra_generators(basis: IntegerMatrix,
                                   extra: Iterable[Sequence[int]]) -> GroupInvariants:
    """Invariants of ``Z^N / (rowspace(basis) + span(extra))``."""
    rows = [list(r) for r in basis] + [list(e) for e in extra]
    n = len(basis[0]) if basis else (len(rows[0]) if rows else 0)
    return LatticeQuotient(rows, n).invariants


def unit_vector(n: int, i: int, scale: int = 1) -> list[int]:
    v = [0] * n
    v[i] = scale
    return v


def direct_sum_invariants(groups: Iterable[GroupInvariants]) -> GroupInvariants:
    """Invariant factors of a direct sum, recomputed through a diagonal SNF."""
    factors = [f for g in groups for f in g.invariant_factors]
    if not factors:
        return GroupInvariants((), 1, 1, 0)
    diag = [[f if i == j else 0 for j in range(len(factors))] for i, f in enumerate(factors)]
    return group_invariants(diag)
