"""Numeric trends of the order and exponent for growing depth.

Limits are only approached, never reached, at computable depths, so this
module reports partial sums with rigorous tail bounds and monotone trends
instead of asserting limits.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from mpmath import log, mp, mpf, pi

from .arith import eta
from .theorems import predicted_exponent, predicted_order

PRECISION_DIGITS = 60


def c_d_partial(d: int, terms: int) -> tuple[mpf, mpf]:
    """First ``terms`` terms of the series for ``c_d`` and a bound on the remainder.

    Term ``n`` is ``d(d-2) (d-1)^(-2-n) log_{d-1}(((d-1)^(n+2) - 1)/(d-2))``; the
    logarithm is at most ``n + 2``, so the remainder is dominated by
    ``d(d-2) sum_{m >= terms+2} m q^m`` with ``q = 1/(d-1)``.
    """
    if d < 3 or terms < 1:
        raise ValueError("need d >= 3 and terms >= 1")
    with mp.workdps(PRECISION_DIGITS):
        b = d - 1
        total = mpf(0)
        for n in range(terms):
            total += mpf(d * (d - 2)) / mpf(b) ** (n + 2) * log(mpf(b ** (n + 2) - 1) / (d - 2), b)
        q = mpf(1) / b
        m0 = terms + 2
        tail = d * (d - 2) * q**m0 * (m0 * (1 - q) + q) / (1 - q) ** 2
        return +total, +tail


@dataclass
class AsymptoticReport:
    d: int
    h_max: int
    terms: int
    c_d: mpf
    c_d_tail_bound: mpf
    order_ratio: dict[int, mpf] = field(default_factory=dict)
    order_deviation: dict[int, mpf] = field(default_factory=dict)
    deviation_decreasing: bool = True
    sandwich: dict[int, dict] = field(default_factory=dict)
    exponent_ratio: dict[int, mpf] = field(default_factory=dict)

    @property
    def sandwich_holds(self) -> bool:
        return all(s["holds"] for s in self.sandwich.values())

    def to_dict(self, digits: int = 30) -> dict:
        fmt = lambda x: mp.nstr(x, digits)  # noqa: E731
        return {
            "d": self.d, "h_max": self.h_max, "terms": self.terms,
            "c_d": fmt(self.c_d), "c_d_tail_bound": fmt(self.c_d_tail_bound),
            "order_ratio": {str(h): fmt(v) for h, v in self.order_ratio.items()},
            "order_deviation": {str(h): fmt(v) for h, v in self.order_deviation.items()},
            "deviation_decreasing": self.deviation_decreasing,
            "sandwich": {str(h): {k: (str(v) if isinstance(v, int) and not isinstance(v, bool) else v)
                                  for k, v in s.items()} for h, s in self.sandwich.items()},
            "sandwich_holds": self.sandwich_holds,
            "exponent_ratio": {str(h): fmt(v) for h, v in self.exponent_ratio.items()},
        }


def asymptotic_report(d: int, h_max: int, terms: int) -> AsymptoticReport:
    """Order ratio versus ``c_d``, exponent sandwich, and the exponent's growth ratio.

    The sandwich uses ``eta(d-1, h+1)``; the variant with ``eta(d, h+1)`` is
    recorded alongside as ``alt_lower_holds``.
    """
    if d < 3 or h_max < 2 or terms < 1:
        raise ValueError("need d >= 3, h_max >= 2, terms >= 1")
    c, tail = c_d_partial(d, terms)
    rep = AsymptoticReport(d, h_max, terms, c, tail)
    with mp.workdps(PRECISION_DIGITS):
        b = d - 1
        for h in range(1, h_max + 1):
            g = predicted_order(d, h)
            ratio = log(mpf(g), b) / mpf(b) ** h
            rep.order_ratio[h] = ratio
            rep.order_deviation[h] = abs(ratio - c)
            e = predicted_exponent(d, h)
            lower = eta(b, h + 1)
            upper = d * b**h * lower
            alt = eta(d, h + 1)
            rep.sandwich[h] = {"lower": lower, "exponent": e, "upper": upper,
                               "holds": lower <= e <= upper, "alt_lower": alt,
                               "alt_lower_holds": alt <= e}
            rep.exponent_ratio[h] = log(mpf(e), b) / (3 * mpf(h) ** 2 / pi**2)
        devs = [rep.order_deviation[h] for h in range(2, h_max + 1)]
        rep.deviation_decreasing = all(a > b_ for a, b_ in zip(devs, devs[1:]))
    return rep
