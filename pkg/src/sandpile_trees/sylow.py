"""Conjectured ranks of Sylow subgroups for primes not dividing ``d(d-1)``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .arith import is_prime, multiplicative_order, theta
from .lattice import GroupInvariants


def t_p(d: int, p: int) -> int:
    """Least ``n >= 1`` with ``p | theta(d, n)``, found by direct search."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (d - 1) % p == 0:
        raise ValueError(f"p = {p} divides d - 1 = {d - 1}; theta(d, n) is 1 mod p")
    # theta(d, p) = sum of p powers of (d-1), so the search ends by n = p
    for n in range(1, p + 1):
        if theta(d, n) % p == 0:
            return n
    raise AssertionError("unreachable: p divides theta(d, n) for some n <= p")


def t_p_closed_form(d: int, p: int) -> int:
    if (d - 1) % p == 0:
        raise ValueError(f"p = {p} divides d - 1")
    return p if (d - 2) % p == 0 else multiplicative_order(d - 1, p)


@dataclass(frozen=True)
class SylowRankPrediction:
    d: int
    h: int
    p: int
    t_p: int
    r: int
    regime: str
    predicted_rank: int
    computed_rank: Optional[int]

    @property
    def match(self) -> Optional[bool]:
        return None if self.computed_rank is None else self.predicted_rank == self.computed_rank


def predicted_sylow_rank(d: int, h: int, p: int) -> tuple[int, int, str, int]:
    """Returns ``(t, r, regime, rank)`` with ``r = h // t``.

    Regime ``"interior"`` covers ``r t <= h <= (r+1) t - 2``; regime
    ``"boundary"`` is ``h = (r+1) t - 1``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if (d * (d - 1)) % p == 0:
        raise ValueError(f"p = {p} divides d(d-1) = {d * (d - 1)}")
    t = t_p(d, p)
    r = h // t
    geometric = sum((d - 1) ** (q * t) for q in range(r))
    if h <= (r + 1) * t - 2:
        return t, r, "interior", d * (d - 1) ** (h - r * t) * geometric
    return t, r, "boundary", d * (d - 1) ** (t - 1) * geometric + d - 1


def conjectured_sylow_rank(d: int, h: int, p: int,
                           invariants: Optional[GroupInvariants] = None) -> SylowRankPrediction:
    """Compare the conjectured Sylow ``p``-rank with the count of invariant factors divisible by ``p``.

    When ``invariants`` is omitted the group is computed from scratch.
    """
    t, r, regime, rank = predicted_sylow_rank(d, h, p)
    if invariants is None:
        from .theorems import TreeGroup
        invariants = TreeGroup(d, h).invariants
    return SylowRankPrediction(d, h, p, t, r, regime, rank, invariants.p_rank(p))
