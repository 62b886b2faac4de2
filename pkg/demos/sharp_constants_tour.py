"""Tour of the sharp-constant landscape.

Prints the closed-form constants for a few exponents, then reproduces
the symmetric-range constant p* - 1 numerically with the biconcave
envelope solver at a coarse grid, and shows the two-sided enclosure
for the one-sided range next to the asymptotic series.
"""

import numpy as np

from sharpmult.bellman import estimate_C
from sharpmult.constants import (
    burkholder_constant,
    choi_approx,
    choi_bounds,
    cpbB_bounds,
    p_star,
)

EXPONENTS = (1.5, 2.0, 3.0, 4.0)
RESOLUTION = 2048  # half the production grid; the full run takes a laptop minute


def closed_form_table():
    print("closed-form constants")
    print(f"{'p':>6} {'p*':>8} {'p*-1':>8} {'choi lo':>8} {'choi hi':>8} {'series':>8}")
    for p in EXPONENTS + (8.0, 12.0, 20.0):
        lo, hi = choi_bounds(p)
        print(
            f"{p:>6.2f} {p_star(p):>8.3f} {burkholder_constant(p):>8.3f}"
            f" {lo:>8.4f} {hi:>8.4f} {choi_approx(p):>8.4f}"
        )
    print()


def envelope_recovers_symmetric_constant():
    print("envelope solver vs p* - 1 on the symmetric range [-1, 1]")
    for p in EXPONENTS:
        target = burkholder_constant(p)
        got = estimate_C(p, -1.0, 1.0, resolution=RESOLUTION)
        print(f"  p = {p:4.2f}: estimate {got:.6f}, closed form {target:.6f}, "
              f"gap {abs(got - target) / target:.2%}")
    print()


def one_sided_range_enclosure():
    print("one-sided range [0, 1]: estimate against the enclosure")
    for p in EXPONENTS:
        lo, hi = choi_bounds(p)
        got = estimate_C(p, 0.0, 1.0, resolution=RESOLUTION)
        print(f"  p = {p:4.2f}: estimate {got:.6f}, enclosure [{lo:.4f}, {hi:.4f}], "
              f"series {choi_approx(p):.4f}")
    print()


def general_ranges():
    print("general ranges: two-sided closed-form bounds")
    for b, B in ((-2.0, 1.0), (-1.0, 3.0), (0.5, 2.0)):
        lo, hi = cpbB_bounds(4.0, b, B)
        print(f"  p = 4, [{b:+.1f}, {B:+.1f}]: C in [{lo:.4f}, {hi:.4f}]")


if __name__ == "__main__":
    closed_form_table()
    envelope_recovers_symmetric_constant()
    one_sided_range_enclosure()
    general_ranges()
