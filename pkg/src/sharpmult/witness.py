"""Transference certificates: lower bounds on multiplier norms.

A real, even, order-0-homogeneous symbol acts on the sign pattern in a
single coordinate as multiplication by its axis value, so a martingale
transform with multipliers in {m(axis 1), m(axis 2)} transfers verbatim
to the periodic operator.  The certificate packages the aligned frame,
the two axis constants, the exact eigen-relation check, and the best
transform ratio found by the extremal search; that ratio is a rigorous
lower bound for the operator norm.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .martingales import (
    PaleyWalshMartingale,
    TransformSequence,
    martingale_to_json,
    search_extremal,
)
from .symbols import MultiplierSymbol, SymbolEvaluationError, riesz2_symbol, symbol_to_json
from .torus import eigenfunction_check

__all__ = [
    "CertificationVoid",
    "WitnessCertificate",
    "axis_alignment",
    "certify_lower_bound",
]


class CertificationVoid(RuntimeError):
    """The symbol does not satisfy the axis eigen-relation premises."""


@dataclass(frozen=True)
class WitnessCertificate:
    """Certified lower bound together with everything needed to recheck it.

    frame columns are the chosen orthonormal axes; axis constants are
    b = m(first axis) and B = m(second axis); eigen_deviations are the
    two lattice constancy deviations (both must be exactly zero for the
    certificate to be issued).
    """

    symbol_spec: dict
    p: float
    N: int
    budget: int
    seed: int
    frame: tuple
    b: float
    B: float
    ratio: float
    eigen_deviations: tuple
    martingale: str

    def to_json(self) -> str:
        doc = {
            "symbol": self.symbol_spec,
            "p": self.p,
            "N": self.N,
            "budget": self.budget,
            "seed": self.seed,
            "frame": self.frame,
            "b": self.b,
            "B": self.B,
            "ratio": self.ratio,
            "eigen_deviations": list(self.eigen_deviations),
            "martingale": json.loads(self.martingale),
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))

    def transform_pair(self) -> tuple[PaleyWalshMartingale, TransformSequence]:
        from .martingales import martingale_from_json

        f, v = martingale_from_json(self.martingale)
        return f, v


def axis_alignment(symbol: MultiplierSymbol) -> np.ndarray:
    """Orthonormal frame, columns ordered so axis 1 minimizes the symbol.

    Quadratic forms get their eigenvector frame with the smallest
    eigenvalue first and the largest second; every other family gets
    the standard basis with axis 1 at the minimizing coordinate and
    axis 2 at the maximizing one, remaining axes in index order.
    """
    if not (symbol.is_real and symbol.is_even):
        raise ValueError("alignment needs a real even symbol")
    d = symbol.d
    if symbol.family == "quadratic":
        spec = symbol.params["spec"]
        V = np.asarray(spec.eigenvectors)
        order = [0, d - 1] + list(range(1, d - 1))
        frame = V[:, order]
    else:
        try:
            vals = np.asarray(symbol(np.eye(d)))
        except SymbolEvaluationError as exc:
            raise ValueError(f"symbol undefined at a frame vector: {exc}") from exc
        if np.iscomplexobj(vals) or not np.all(np.isfinite(vals)):
            raise ValueError("non-real value at a frame vector")
        i_min = int(np.argmin(vals))
        i_max = int(np.argmax(vals))
        if i_max == i_min:
            i_max = (i_min + 1) % d
        rest = [j for j in range(d) if j not in (i_min, i_max)]
        frame = np.eye(d)[:, [i_min, i_max] + rest]
    check = np.asarray(symbol(frame.T))
    if np.iscomplexobj(check) or not np.all(np.isfinite(np.real(check))):
        raise ValueError("non-real value at a frame vector")
    return frame


def _aligned_symbol(symbol: MultiplierSymbol, frame: np.ndarray) -> MultiplierSymbol:
    """The symbol rewritten in frame coordinates, kept exactly evaluable.

    For quadratic forms the conjugated matrix is diagonal in exact
    arithmetic, so the diagonal of eigenvalues is used directly; other
    families only ever get permutation frames, applied by indexing.
    """
    if symbol.family == "quadratic":
        spec = symbol.params["spec"]
        w = np.asarray(spec.eigenvalues)
        d = symbol.d
        order = [0, d - 1] + list(range(1, d - 1))
        return riesz2_symbol(np.diag(w[order]))
    # permutation frames leave 0/1 matmul exact, so lattice points stay
    # lattice points and eigen-deviations can vanish identically
    F_T = frame.T.copy()
    fn = symbol._fn

    def rotated(flat):
        return fn(flat @ F_T)

    return MultiplierSymbol(
        d=symbol.d,
        family=symbol.family,
        params=symbol.params,
        is_real=symbol.is_real,
        is_even=symbol.is_even,
        is_homogeneous0=symbol.is_homogeneous0,
        sphere_avg=symbol.sphere_avg,
        frame=None,
        _fn=rotated,
    )


def certify_lower_bound(
    symbol: MultiplierSymbol,
    p: float,
    N: int,
    budget: int = 50,
    seed: int = 0,
) -> WitnessCertificate:
    """Certificate that the p-norm of the multiplier operator is >= ratio.

    Aligns a frame, verifies the exact axis eigen-relations, then finds
    the best {b,B}-valued deterministic transform of depth N.  Raises
    CertificationVoid when the symbol is not homogeneous of order 0 or
    an eigen-relation deviation is nonzero: the transference from
    transforms to the operator is only valid with exact axis
    eigenfunctions.
    """
    if symbol.d < 2:
        raise ValueError("certification needs d >= 2")
    if not symbol.is_homogeneous0:
        raise CertificationVoid(
            "certification void: symbol is not homogeneous of order 0"
        )
    frame = axis_alignment(symbol)
    aligned = _aligned_symbol(symbol, frame)
    c1, dev1 = eigenfunction_check(aligned, 1)
    c2, dev2 = eigenfunction_check(aligned, 2)
    if dev1 != 0.0 or dev2 != 0.0:
        raise CertificationVoid(
            f"certification void: axis eigen-relation deviations ({dev1:g}, {dev2:g})"
        )
    b, B = c1, c2
    if b > B:
        raise CertificationVoid(
            f"certification void: aligned axes are disordered (b={b:g} > B={B:g})"
        )
    if b == B:
        f = PaleyWalshMartingale(tuple(np.ones(2**n) for n in range(N)))
        v = TransformSequence.deterministic([b] * N)
        best = abs(b)
    else:
        f, v, best = search_extremal(p, b, B, N, budget=budget, seed=seed)
    for lv in v.levels:
        if not np.all(np.isin(lv, (b, B))):
            raise AssertionError("search returned a transform outside {b, B}")
    return WitnessCertificate(
        symbol_spec=symbol_to_json(symbol),
        p=float(p),
        N=int(N),
        budget=int(budget),
        seed=int(seed),
        frame=tuple(tuple(float(x) for x in col) for col in frame.T),
        b=float(b),
        B=float(B),
        ratio=float(best),
        eigen_deviations=(float(dev1), float(dev2)),
        martingale=martingale_to_json(f, v),
    )
