"""Least-C feasibility solver for the biconcave envelope of |y|^p - C^p|x|^p.

The value surface lives on the full angular grid phi_i = 2*pi*i/M with
the p-homogeneous extension U(r cos phi, r sin phi) = r^p u(phi).
Repeated midpoint concavification along lines of slope b and B drives u
up to the least splice-closed majorant of V; the constant C_{p,b,B} is
the least C for which that majorant stays nonpositive on the starting
cone {y = wx, w in [b,B]}, found here by bisection.

The iteration is monotone nondecreasing and bounded above by the true
majorant, so for a feasible C the cone values never go positive; for an
infeasible C they eventually do, and runaway growth is cut off by a
value cap whose hit is treated as divergence evidence.

The sweep only accepts a node increase above a per-node noise floor
measured from local second differences: linear interpolation error gets
amplified by the homogeneity weights r^p, and without the floor the
iteration ratchets that noise into runaway growth even at exact fixed
points.  The feasibility tolerance and the cap scale with 1 + C^p,
the magnitude of the surface itself (V at phi = 0 is -C^p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import cpbB_bounds

__all__ = [
    "BellmanSurface",
    "BracketError",
    "EnvelopeNonConvergence",
    "initial_V",
    "initial_surface",
    "concavify_step",
    "envelope",
    "feasible",
    "feasibility_tol",
    "estimate_C",
]

STEP_SCHEDULE = (1.0, 0.25, 0.0625, 0.015625)
CAP_SCALE = 1e6
MARGIN_SCALE = 0.5


class BracketError(RuntimeError):
    """A bisection bracket endpoint had the wrong feasibility."""


class EnvelopeNonConvergence(RuntimeError):
    """Envelope iteration ran out of iterations; carries the surface."""

    def __init__(self, surface: "BellmanSurface", delta: float):
        super().__init__(
            f"envelope did not converge: final sweep delta {delta:.3e}"
        )
        self.surface = surface
        self.delta = delta


def initial_V(p: float, C: float, phi) -> np.ndarray | float:
    """V restricted to the unit circle: |sin phi|^p - C^p |cos phi|^p.

    C = 0 is accepted so divergence of the unpenalized surface can be
    probed directly.
    """
    if p <= 1.0:
        raise ValueError(f"need p > 1, got {p}")
    if C < 0.0:
        raise ValueError(f"need C >= 0, got {C}")
    return np.abs(np.sin(phi)) ** p - C**p * np.abs(np.cos(phi)) ** p


@dataclass(frozen=True)
class BellmanSurface:
    """Angular samples of a p-homogeneous surface majorizing V."""

    p: float
    b: float
    B: float
    C: float
    values: np.ndarray
    cap_hit: bool = False
    converged: bool = True
    final_delta: float = 0.0

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 8:
            raise ValueError("surface needs a 1-D grid of at least 8 values")
        object.__setattr__(self, "values", v)

    @property
    def resolution(self) -> int:
        return self.values.size

    def angles(self) -> np.ndarray:
        M = self.resolution
        return 2.0 * np.pi * np.arange(M) / M

    def evaluate(self, phi) -> np.ndarray:
        """Linear interpolation in angle, periodic over 2*pi."""
        M = self.resolution
        pos = np.mod(np.asarray(phi, dtype=float), 2.0 * np.pi) / (2.0 * np.pi / M)
        j = np.floor(pos).astype(np.intp) % M
        frac = pos - np.floor(pos)
        return self.values[j] * (1.0 - frac) + self.values[(j + 1) % M] * frac

    def evaluate_xy(self, x, y) -> np.ndarray:
        """U at Cartesian points through the r^p homogeneity rule."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r2 = x * x + y * y
        return r2 ** (self.p / 2.0) * self.evaluate(np.arctan2(y, x))


def initial_surface(
    p: float, b: float, B: float, C: float, resolution: int = 4096
) -> BellmanSurface:
    if b > B:
        raise ValueError(f"need b <= B, got ({b}, {B})")
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    phi = 2.0 * np.pi * np.arange(resolution) / resolution
    return BellmanSurface(p, b, B, C, initial_V(p, C, phi))


def _chord_geometry(p: float, M: int, h: float, slope: float):
    """Gather indices, weights, and r^p factors for nodes offset by
    +-h along direction (1, slope), mapped back through homogeneity."""
    phi = 2.0 * np.pi * np.arange(M) / M
    x, y = np.cos(phi), np.sin(phi)
    branches = []
    for sign in (1.0, -1.0):
        px = x + sign * h
        py = y + sign * h * slope
        r2 = px * px + py * py
        pos = np.mod(np.arctan2(py, px), 2.0 * np.pi) / (2.0 * np.pi / M)
        j = np.floor(pos).astype(np.intp) % M
        frac = pos - np.floor(pos)
        branches.append((j, (j + 1) % M, frac, r2 ** (p / 2.0)))
    return branches


_GEOMETRY_CACHE: dict = {}


def _geometry(p: float, M: int, h: float, slope: float):
    key = (p, M, h, slope)
    if key not in _GEOMETRY_CACHE:
        if len(_GEOMETRY_CACHE) > 64:
            _GEOMETRY_CACHE.clear()
        _GEOMETRY_CACHE[key] = _chord_geometry(p, M, h, slope)
    return _GEOMETRY_CACHE[key]


def concavify_step(
    s: BellmanSurface, h: float, margin: float | None = None
) -> tuple[BellmanSurface, float]:
    """One Jacobi sweep of midpoint concavification at chord scale h.

    Every node takes the max of its value and the average of the two
    homogeneity-mapped values offset by +-h along each slope direction,
    and the new surface and largest accepted increase are returned.

    The homogeneity factors r^p make the sweep amplify interpolation
    noise (a node raised by interpolation error raises its neighbours
    by more than it was raised), so accepting every positive increment
    diverges even at exact fixed points.  An increase is therefore only
    accepted above a per-node noise floor: the linear interpolation
    error bound at the referenced nodes, measured by local second
    differences of u and carried through the same r^p weights.  A
    margin argument overrides the floor with a flat threshold.
    """
    if h <= 0.0:
        raise ValueError(f"need h > 0, got {h}")
    u = s.values
    M = u.size
    sd = np.abs(np.roll(u, -1) - 2.0 * u + np.roll(u, 1))
    cand = np.full_like(u, -np.inf)
    err = np.zeros_like(u)
    for slope in (s.b, s.B):
        vals = []
        errs = []
        for j, jp, frac, rp in _geometry(s.p, M, h, slope):
            vals.append(rp * (u[j] * (1.0 - frac) + u[jp] * frac))
            errs.append(rp * np.maximum(sd[j], sd[jp]))
        both = 0.5 * (vals[0] + vals[1])
        better = both > cand
        cand[better] = both[better]
        err[better] = (0.5 * (errs[0] + errs[1]))[better]
    if margin is None:
        floor = MARGIN_SCALE * err + 1e-13 * (1.0 + s.C**s.p)
    else:
        floor = margin
    new = np.where(cand > u + floor, cand, u)
    delta = float(np.max(new - u))
    cap = CAP_SCALE * (1.0 + s.C**s.p)
    hit = bool(np.any(new >= cap))
    if hit:
        np.minimum(new, cap, out=new)
    return replace(s, values=new, cap_hit=s.cap_hit or hit, final_delta=delta), delta


def envelope(
    p: float,
    b: float,
    B: float,
    C: float,
    tol: float = 1e-9,
    max_iters: int = 40000,
    resolution: int = 4096,
) -> BellmanSurface:
    """Iterate concavify_step over the step schedule to a fixed point.

    Stops when a full schedule cycle increases no node by more than tol
    (the per-node noise floor usually drives accepted increases to
    exactly zero first), or immediately once the value cap is hit
    (runaway growth certifies infeasibility).  Raises
    EnvelopeNonConvergence (carrying the last surface) if max_iters
    sweeps do not settle.
    """
    if tol <= 0.0:
        raise ValueError(f"need tol > 0, got {tol}")
    s = initial_surface(p, b, B, C, resolution)
    cycle = len(STEP_SCHEDULE)
    deltas = []
    for it in range(max_iters):
        s, delta = concavify_step(s, STEP_SCHEDULE[it % cycle])
        if s.cap_hit:
            return replace(s, converged=True)
        deltas.append(delta)
        if len(deltas) >= cycle and max(deltas[-cycle:]) < tol:
            return replace(s, converged=True)
    s = replace(s, converged=False)
    raise EnvelopeNonConvergence(s, float(max(deltas[-cycle:])))


def feasibility_tol(C: float, p: float) -> float:
    return 1e-7 * (1.0 + C**p)


def feasible(s: BellmanSurface, cone_samples: int = 512) -> bool:
    """Whether the surface is nonpositive on both branches of the
    starting cone {y = wx : w in [b, B]}.

    A capped surface is infeasible outright: the cap is only reached by
    divergent growth.
    """
    if cone_samples < 2:
        raise ValueError("need at least 2 cone samples")
    if s.cap_hit:
        return False
    phi = np.linspace(math.atan(s.b), math.atan(s.B), cone_samples)
    tol = feasibility_tol(s.C, s.p)
    vals = s.evaluate(np.concatenate([phi, phi + np.pi]))
    return bool(np.max(vals) <= tol)


def estimate_C(
    p: float,
    b: float,
    B: float,
    tol_C: float = 1e-3,
    resolution: int = 4096,
    envelope_tol: float = 1e-9,
    max_iters: int = 40000,
    cone_samples: int = 512,
    return_history: bool = False,
):
    """Least C with a nonpositive-on-cone envelope, by bisection.

    The bracket comes from the closed-form two-sided bounds, widened
    slightly so the endpoints are strictly on opposite sides; endpoint
    feasibility is verified and a violation raises BracketError.
    Feasibility of all probed C values is asserted monotone.  With
    return_history=True also returns the list of (lo, hi) brackets.
    """
    if p <= 1.0:
        raise ValueError(f"need p > 1, got {p}")
    if not b < B:
        raise ValueError(f"need b < B, got ({b}, {B})")
    # the closed-form interval can be degenerate (symmetric b = -B pins
    # the constant exactly), and the discrete boundary sits slightly
    # below the true one, so both endpoints step a full percent outside
    lo0, hi0 = cpbB_bounds(p, b, B)
    lo = max(lo0 - max(tol_C, 1e-2 * lo0), 1e-9)
    hi = hi0 + max(tol_C, 1e-2 * hi0)
    probes: list[tuple[float, bool]] = []

    # gauge choice: rescaling the transform interval by s maps the
    # problem (p, b, B, C) to (p, b/s, B/s, C/s) with identical
    # feasibility, so probing in the normalized gauge makes symmetric
    # intervals (-a, a) scale exactly like a * (-1, 1)
    gauge = max(abs(b), abs(B))

    def probe(C: float) -> bool:
        try:
            surf = envelope(
                p, b / gauge, B / gauge, C / gauge,
                envelope_tol, max_iters, resolution,
            )
        except EnvelopeNonConvergence as exc:
            # judge the truncated surface; a clean cone after this many
            # sweeps is treated as feasible at bisection precision
            surf = exc.surface
        ok = feasible(surf, cone_samples)
        probes.append((C, ok))
        return ok

    if probe(lo):
        raise BracketError(
            f"lower endpoint {lo:.6g} is feasible; bounds or solver are inconsistent"
        )
    if not probe(hi):
        raise BracketError(
            f"upper endpoint {hi:.6g} is infeasible; bounds or solver are inconsistent"
        )
    history = [(lo, hi)]
    while hi - lo > tol_C:
        mid = 0.5 * (lo + hi)
        if probe(mid):
            hi = mid
        else:
            lo = mid
        history.append((lo, hi))
    worst_no = max(C for C, ok in probes if not ok)
    best_yes = min(C for C, ok in probes if ok)
    if worst_no >= best_yes:
        raise BracketError(
            f"feasibility not monotone: infeasible at {worst_no:.6g} "
            f"but feasible at {best_yes:.6g}"
        )
    result = 0.5 * (lo + hi)
    if return_history:
        return result, history
    return result
