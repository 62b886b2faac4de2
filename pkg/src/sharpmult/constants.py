"""Sharp constants for martingale transforms with multipliers in [b, B].

For 1 < p < infinity write p* = max(p, p/(p-1)).  The classical sharp
constant for transforms by predictable sequences in [-1, 1] is p* - 1.
For one-sided multipliers in [0, 1] the sharp constant c_p is known only
through rigorous bounds plus an asymptotic series; for a general window
[b, B] the best constant C(p, b, B) is pinned between explicit bounds and
equals |a|(p* - 1) for the symmetric window (-a, a) and a*c_p for (0, a).

Entry points: burkholder_constant, choi_approx, choi_bounds, cpbB_bounds,
known_constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ConstantResult",
    "burkholder_constant",
    "choi_approx",
    "choi_bounds",
    "cpbB_bounds",
    "known_constant",
    "p_star",
]

# series ingredients for c_p ~ p/2 + log((1+e^-2)/2)/2 + alpha2/p
_HALF_LOG_TERM = 0.5 * math.log((1.0 + math.exp(-2.0)) / 2.0)
_SIGMOID2 = math.exp(-2.0) / (1.0 + math.exp(-2.0))
_ALPHA2 = (2.0 * _HALF_LOG_TERM) ** 2 + _HALF_LOG_TERM - 2.0 * _SIGMOID2**2


def _check_p(p: float) -> float:
    p = float(p)
    if not (p > 1.0) or math.isinf(p):
        raise ValueError(f"exponent p must satisfy 1 < p < inf, got {p}")
    return p


def p_star(p: float) -> float:
    """max(p, p/(p-1)), the exponent governing the sharp constants."""
    p = _check_p(p)
    return max(p, p / (p - 1.0))


def burkholder_constant(p: float) -> float:
    """Sharp constant p* - 1 for transforms with multipliers in [-1, 1].

    Equals 1/(p-1) on 1 < p <= 2 and p - 1 on p >= 2.
    """
    return p_star(p) - 1.0


def choi_approx(p: float) -> float:
    """Truncated asymptotic series for the one-sided constant c_p.

    Returns p/2 + log((1+e^-2)/2)/2 + alpha2/p.  The truncation error
    decays like 1/p^2; the value is meaningful as an approximation for
    p >= 2 and in fact undershoots the rigorous lower bound of
    choi_bounds until p ~ 2.559, so never treat it as ground truth for
    small p (and not at all below p = 2).
    """
    p = _check_p(p)
    return p / 2.0 + _HALF_LOG_TERM + _ALPHA2 / p


def choi_bounds(p: float) -> tuple[float, float]:
    """Rigorous enclosure [max(1, (p*-1)/2), p*/2] of the constant c_p."""
    ps = p_star(p)
    return max(1.0, (ps - 1.0) / 2.0), ps / 2.0


def cpbB_bounds(p: float, b: float, B: float) -> tuple[float, float]:
    """Rigorous enclosure of the sharp constant C(p, b, B), b < B.

    Lower bound: max of the centered-window transform bound
    ((B-b)/2)(p*-1) and the one-step bound max(|b|, |B|).  Upper bound:
    ((B-b)/2)(p*-1) + |(B+b)/2|, i.e. split the multiplier into its
    centered part of half-width (B-b)/2 and the constant shift (B+b)/2.
    """
    b, B = float(b), float(B)
    if not b < B:
        raise ValueError(f"need b < B, got b={b}, B={B}")
    ps = p_star(p)
    centered = 0.5 * (B - b) * (ps - 1.0)
    lo = max(centered, max(abs(b), abs(B)))
    hi = centered + abs(0.5 * (B + b))
    return lo, hi


@dataclass(frozen=True)
class ConstantResult:
    """Best-available knowledge about a sharp constant.

    kind is one of "exact", "interval", "series-approximation".  interval
    always contains the true constant; value is set only when kind is
    "exact" (and then interval collapses onto it); approx carries the
    series value when kind is "series-approximation".
    """

    kind: str
    interval: tuple[float, float]
    value: float | None = None
    approx: float | None = None

    def __post_init__(self):
        lo, hi = self.interval
        if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
            raise ValueError(f"malformed interval {self.interval}")
        if lo < 0.0:
            raise ValueError("sharp constants are nonnegative")


def known_constant(p: float, b: float, B: float) -> ConstantResult:
    """Sharpest known description of C(p, b, B) for multipliers in [b, B].

    Symmetric window (-a, a): exact value a(p*-1).  One-sided window
    (0, a): the scaled enclosure a*choi_bounds(p) plus the series value
    a*choi_approx(p) (kind "series-approximation"; the enclosure is the
    ground truth, the series is asymptotic).  Anything else: the
    enclosure cpbB_bounds(p, b, B) (kind "interval").
    """
    p = _check_p(p)
    b, B = float(b), float(B)
    if not b < B:
        raise ValueError(f"need b < B, got b={b}, B={B}")
    if b == -B:
        a = B
        v = a * burkholder_constant(p)
        return ConstantResult(kind="exact", interval=(v, v), value=v)
    if b == 0.0:
        a = B
        lo, hi = choi_bounds(p)
        return ConstantResult(
            kind="series-approximation",
            interval=(a * lo, a * hi),
            approx=a * choi_approx(p),
        )
    return ConstantResult(kind="interval", interval=cpbB_bounds(p, b, B))
