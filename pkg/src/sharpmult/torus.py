"""Spectral application of a multiplier on the discrete torus.

A TorusGrid holds samples of a function on the uniform lattice
theta in {-pi + 2*pi*j/n}^d.  Applying a symbol multiplies the k-th
Fourier coefficient by m(k), with the k = 0 coefficient scaled by the
average of m over the unit sphere.  L^p norms use normalized measure
(the mean of |f|^p under the rectangle rule, which is exact for the
trigonometric polynomials living on the grid).

Norm estimates from grids are lower bounds: the best Rayleigh ratio
||T f||_p / ||f||_p found by a nonlinear power iteration bounds the
grid-restricted operator norm from below and converges upward toward
the operator norm as the resolution grows.  Grids cannot certify upper
bounds.

Binary interchange: write_grid/read_grid use the TGRD format (magic
"TGRD", version byte 1, dimension byte, u32 little-endian n, then n^d
complex samples as interleaved little-endian float64 re, im pairs in
row-major order with the first axis slowest).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .symbols import MultiplierSymbol, SymbolEvaluationError, sphere_average

__all__ = [
    "TorusGrid",
    "apply_multiplier",
    "lp_norm",
    "estimate_norm_lower",
    "eigenfunction_check",
    "write_grid",
    "read_grid",
]

_MAGIC = b"TGRD"
_VERSION = 1


@dataclass
class TorusGrid:
    """Complex samples on the uniform d-dimensional torus lattice."""

    samples: np.ndarray
    _coeffs: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.ndim < 1:
            raise ValueError("samples must have at least one axis")
        n = s.shape[0]
        if any(ax != n for ax in s.shape):
            raise ValueError(f"grid must be square, got shape {s.shape}")
        if n % 2 != 0:
            raise ValueError(f"per-axis resolution must be even, got {n}")
        self.samples = s

    @property
    def d(self) -> int:
        return self.samples.ndim

    @property
    def n(self) -> int:
        return self.samples.shape[0]

    @classmethod
    def from_function(cls, fn, d: int, n: int) -> "TorusGrid":
        """Sample fn(theta), theta of shape (..., d), on the lattice."""
        ax = theta_axis(n)
        mesh = np.stack(np.meshgrid(*([ax] * d), indexing="ij"), axis=-1)
        return cls(np.asarray(fn(mesh), dtype=complex))

    def coefficients(self) -> np.ndarray:
        """Fourier coefficients indexed k in {-n/2, ..., n/2 - 1}^d.

        Entry [i1, ..., id] is the coefficient of exp(i<k, theta>) with
        k_a = i_a - n/2; normalization is fixed so that the sample
        mean-square equals the coefficient sum-of-squares.
        """
        if self._coeffs is None:
            n, d = self.n, self.d
            raw = np.fft.fftn(self.samples) / self.samples.size
            k = np.fft.fftfreq(n, d=1.0 / n).astype(int)
            phase1d = np.where(k % 2 == 0, 1.0, -1.0)
            for ax in range(d):
                shape = [1] * d
                shape[ax] = n
                raw = raw * phase1d.reshape(shape)
            self._coeffs = np.fft.fftshift(raw)
        return self._coeffs


def theta_axis(n: int) -> np.ndarray:
    """Lattice points -pi + 2*pi*j/n for one axis."""
    return -np.pi + 2.0 * np.pi * np.arange(n) / n


def _lattice(d: int, n: int) -> np.ndarray:
    """Integer frequency vectors in FFT layout, shape (n^d, d).

    Per-axis order is 0, 1, ..., n/2 - 1, -n/2, ..., -1 (the Nyquist row
    is assigned to -n/2).
    """
    k = np.fft.fftfreq(n, d=1.0 / n)
    mesh = np.meshgrid(*([k] * d), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def multiplier_array(m: MultiplierSymbol, n: int) -> np.ndarray:
    """m evaluated on the frequency lattice in FFT layout, with the
    zero frequency carrying the sphere average.

    The Nyquist index stands for both +-n/2, so the array is averaged
    with its conjugate under index negation.  Off the Nyquist
    hyperplanes this is a no-op for real even symbols; on them it
    resolves the sign ambiguity symmetrically, which is what keeps real
    inputs mapping to real outputs.
    """
    d = m.d
    pts = _lattice(d, n)
    vals = np.empty(pts.shape[0], dtype=complex)
    nonzero = np.any(pts != 0.0, axis=1)
    try:
        vals[nonzero] = m(pts[nonzero])
    except SymbolEvaluationError as exc:
        raise SymbolEvaluationError(f"multiplier undefined on the lattice: {exc}")
    vals[~nonzero] = sphere_average(m)
    arr = vals.reshape((n,) * d)
    neg = (-np.arange(n)) % n
    return 0.5 * (arr + np.conj(arr[np.ix_(*([neg] * d))]))


def apply_multiplier(f: TorusGrid, m: MultiplierSymbol) -> TorusGrid:
    """T f with (T f)^(k) = f^(k) m(k); m(0) is the sphere average."""
    if m.d != f.d:
        raise ValueError(f"dimension mismatch: grid d={f.d}, symbol d={m.d}")
    marr = multiplier_array(m, f.n)
    out = np.fft.ifftn(np.fft.fftn(f.samples) * marr)
    return TorusGrid(out)


def lp_norm(f: TorusGrid, p: float) -> float:
    """Normalized-measure L^p norm: (mean |f|^p)^(1/p)."""
    if p < 1.0:
        raise ValueError(f"need p >= 1, got {p}")
    return float(np.mean(np.abs(f.samples) ** p) ** (1.0 / p))


def _dual_map(g: np.ndarray, p: float) -> np.ndarray:
    """|g|^(p-1) sgn(g), the L^p -> L^q duality nonlinearity."""
    a = np.abs(g)
    with np.errstate(invalid="ignore"):
        phase = np.where(a > 0.0, g / np.where(a > 0.0, a, 1.0), 0.0)
    return a ** (p - 1.0) * phase


def _mean_lp(a: np.ndarray, p: float) -> float:
    return float(np.mean(np.abs(a) ** p) ** (1.0 / p))


def estimate_norm_lower(
    m: MultiplierSymbol,
    p: float,
    n: int,
    iterations: int = 200,
    seed: int | None = 0,
    return_trace: bool = False,
):
    """Lower bound for the L^p -> L^p norm of T on the n^d grid.

    Nonlinear power iteration: apply T, record ||Tf||_p/||f||_p, pass to
    the dual exponent through u = |Tf|^(p-1) sgn(Tf) (normalized in
    L^q), apply T again (T is self-adjoint for real even symbols),
    record the q-ratio, and map back to L^p.  Both recorded ratios bound
    the same grid operator norm, so the running maximum is returned; it
    is nondecreasing in the iteration count by construction.

    seed selects the random zero-mean real start; seed=None uses a
    deterministic zero-mean spike, which makes runs at different n
    directly comparable.  The iteration stops early once the best ratio
    improves by less than 1e-9 over 10 consecutive recorded ratios.  A
    degenerate (identically zero) iterate triggers a reseeded restart,
    at most 3 times.  With return_trace=True returns (best, trace) with
    trace rows (iter, ratio).
    """
    if not 1.0 < p < float("inf"):
        raise ValueError(f"need 1 < p < inf, got {p}")
    if iterations < 1:
        raise ValueError("need at least one iteration")
    q = p / (p - 1.0)
    marr = multiplier_array(m, n)
    shape = (n,) * m.d
    size = int(np.prod(shape))

    def start(attempt: int) -> np.ndarray:
        if seed is None:
            f = np.full(shape, -1.0 / size, dtype=complex)
            f.flat[0] += 1.0
            return f
        rng = np.random.default_rng(seed + 1000 * attempt)
        f = rng.standard_normal(shape).astype(complex)
        return f - f.mean()

    def apply(a: np.ndarray) -> np.ndarray:
        return np.fft.ifftn(np.fft.fftn(a) * marr)

    best = 0.0
    trace: list[tuple[int, float]] = []
    recent: list[float] = []
    attempt = 0
    f = start(attempt)
    it = 0
    done = False
    while not done:
        for _ in range(iterations):
            nf = _mean_lp(f, p)
            if nf == 0.0:
                break
            g = apply(f / nf)
            r1 = _mean_lp(g, p)
            it += 1
            trace.append((it, r1))
            best = max(best, r1)
            ng = _mean_lp(g, p)
            if ng == 0.0:
                break
            u = _dual_map(g, p)
            u /= _mean_lp(u, q)
            h = apply(u)
            r2 = _mean_lp(h, q)
            it += 1
            trace.append((it, r2))
            best = max(best, r2)
            recent.append(best)
            if len(recent) > 5 and best - recent[-6] < 1e-9:
                done = True
                break
            nh = _mean_lp(h, q)
            if nh == 0.0:
                break
            f = _dual_map(h / nh, q)
        else:
            done = True
        if not done:
            # degenerate iterate: reseed unless the budget is exhausted
            attempt += 1
            if attempt > 3:
                raise RuntimeError("power iteration degenerated after 3 restarts")
            f = start(attempt)
            recent.clear()
    if return_trace:
        return best, trace
    return best


def eigenfunction_check(
    m: MultiplierSymbol, axis: int, kmax: int = 100
) -> tuple[float, float]:
    """Constancy of m along a lattice axis (1-based index).

    Returns (m(e_axis), max_k |m(k e_axis) - m(e_axis)| for k = 1..kmax).
    For a homogeneous symbol the deviation vanishes, which is what makes
    the sign pattern in that coordinate an exact eigenfunction of T with
    eigenvalue m(e_axis); a nonzero deviation voids that reasoning.
    """
    if not (m.is_real and m.is_even):
        raise ValueError("axis eigen-structure needs a real even symbol")
    if not 1 <= axis <= m.d:
        raise ValueError(f"axis must be in 1..{m.d}, got {axis}")
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    pts = np.zeros((kmax, m.d))
    pts[:, axis - 1] = np.arange(1, kmax + 1)
    vals = np.real(m(pts))
    c = float(vals[0])
    return c, float(np.abs(vals - c).max())


def write_grid(path, grid: TorusGrid) -> None:
    """Serialize a grid in the TGRD binary format."""
    if grid.d > 255:
        raise ValueError("dimension does not fit the header byte")
    header = struct.pack("<4sBBI", _MAGIC, _VERSION, grid.d, grid.n)
    data = np.ascontiguousarray(grid.samples.astype("<c16"))
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(data.tobytes())


def read_grid(path) -> TorusGrid:
    """Read a grid written by write_grid, validating the header."""
    with open(path, "rb") as fh:
        header = fh.read(10)
        if len(header) != 10:
            raise ValueError("truncated grid file header")
        magic, version, d, n = struct.unpack("<4sBBI", header)
        if magic != _MAGIC:
            raise ValueError(f"not a grid file (magic {magic!r})")
        if version != _VERSION:
            raise ValueError(f"unsupported grid format version {version}")
        count = n**d
        payload = fh.read(16 * count)
        if len(payload) != 16 * count:
            raise ValueError("truncated grid payload")
        data = np.frombuffer(payload, dtype="<c16")
        if fh.read(1):
            raise ValueError("trailing bytes after grid payload")
    return TorusGrid(data.reshape((n,) * d).astype(complex))
