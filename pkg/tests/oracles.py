"""Independent brute-force oracle for the deterministic-word optimum.

Enumerates every {b,B}-valued word explicitly and runs the backward
splice recursion per word, with its own bisection loop.  It shares the
low-level splice kernel and grids with the library so that the two
routes differ exactly in the logic under test: suffix sharing, the
word-tree early exit, and the feasibility bookkeeping.  Practical only
for small depths.
"""

import itertools
import math

import numpy as np

from sharpmult.constants import cpbB_bounds
from sharpmult.martingales import _interp_angle, _SpliceGeometry


def brute_force_word_optimum(p, b, B, N, M, tol_C=1e-5):
    letters = (b,) if b == B else (b, B)
    geoms = {a: _SpliceGeometry(p, M, a) for a in letters}
    angles = {a: math.atan2(a, 1.0) for a in letters}
    phi = np.arange(M) * (np.pi / M)

    def word_feasible(word, C):
        h = (np.abs(np.sin(phi)) ** p - C**p * np.abs(np.cos(phi)) ** p)[None, :]
        for a in reversed(word[1:]):
            if _interp_angle(h, angles[a], M)[0] > 1e-12:
                return False
            h = geoms[a].splice(h)
        return _interp_angle(h, angles[word[0]], M)[0] <= 1e-12

    def feasible(C):
        return all(
            word_feasible(w, C) for w in itertools.product(letters, repeat=N)
        )

    lo = max(abs(b), abs(B))
    hi = max(cpbB_bounds(p, b, B)[1], lo) * (1.0 + 1e-3) + 1e-3
    if feasible(lo):
        return lo
    assert feasible(hi), "oracle bracket failed"
    while hi - lo > tol_C:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
