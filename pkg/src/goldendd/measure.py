"""Invariant densities of the golden map and their independent checks.

Three routes lead to the same step function: the closed form, fibre sums
over the rectangle space, and vertical slices of the tower.  Invariance is
tested with the transfer operator, pointwise and piece by piece.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .greedy import GOLDEN, INV_BETA, TWO, ClassicalMap
from .natext import (TAGS, height, rectangle_families, total_mass, tower_mass, tower_strip,
                     width)
from .qbeta import BETA, ONE, ZERO, QBeta, as_qbeta

__all__ = [
    "PiecewiseDensity", "BreakpointError", "BirkhoffResult",
    "golden_density", "fiber_oracle", "tower_density", "transfer_check",
    "transfer", "branch_integrals", "classical_density", "birkhoff",
    "bin_edges", "NORMALIZER",
]

NORMALIZER = 16 - 7 * BETA


class BreakpointError(ValueError):
    """Point or one of its preimages hits a breakpoint; draw another sample."""


@dataclass(frozen=True)
class PiecewiseDensity:
    """Step function on ``[breakpoints[0], breakpoints[-1])``.

    ``values[i]`` holds on ``[breakpoints[i], breakpoints[i+1])``.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(self.breakpoints))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.breakpoints) != len(self.values) + 1:
            raise ValueError("need exactly one more breakpoint than values")
        if any(not a < b for a, b in zip(self.breakpoints, self.breakpoints[1:])):
            raise ValueError("breakpoints must be strictly increasing")

    @property
    def domain(self):
        return self.breakpoints[0], self.breakpoints[-1]

    def pieces(self):
        return list(zip(self.breakpoints, self.breakpoints[1:], self.values))

    def __call__(self, x):
        lo, hi = self.domain
        if not lo <= x < hi:
            return 0 * self.values[0]
        return self.values[bisect.bisect_right(self.breakpoints, x) - 1]

    def integrate(self, lo=None, hi=None):
        """Integral over ``[lo, hi)`` (whole domain by default)."""
        a, b = self.domain
        lo = a if lo is None or lo < a else lo
        hi = b if hi is None or hi > b else hi
        total = 0 * self.values[0]
        if not lo < hi:
            return total
        for left, right, v in self.pieces():
            l = left if lo < left else lo
            r = right if right < hi else hi
            if l < r:
                total = total + v * (r - l)
        return total

    def integral(self):
        return self.integrate()

    def to_records(self) -> list[dict]:
        out = []
        for left, right, v in self.pieces():
            rec = {"left_float": float(left), "right_float": float(right), "value_float": float(v)}
            if isinstance(v, QBeta):
                rec.update(left=as_qbeta(left).to_record(), right=as_qbeta(right).to_record(),
                           value=v.to_record())
            out.append(rec)
        return out


# --- the golden density, three ways --------------------------------------------

def golden_density() -> PiecewiseDensity:
    """Closed-form invariant density of the golden map on ``[0, 2)``."""
    ib = INV_BETA
    bps = (ZERO, ib ** 3, ib ** 2, ib, ONE, BETA, TWO)
    raw = (1 + 2 * BETA, 2 + BETA, 2 * BETA, BETA * BETA, BETA, ONE)
    return PiecewiseDensity(bps, tuple(v / NORMALIZER for v in raw))


def _widths() -> list[QBeta]:
    ws = {TWO}
    for j in TAGS:
        pre, per = rectangle_families(j)
        ws.update(width(j, n) for n in pre + per)
    return sorted(ws | {ZERO})


def fiber_oracle() -> PiecewiseDensity:
    """Density of the first-coordinate projection of the normalised area on the rectangles.

    Over a piece ``[a, b)`` the density is the total height of every
    rectangle whose x-range covers the piece.  Levels of one tag repeat their
    widths periodically, so the heights sum to geometric series.
    """
    bps = _widths()
    mass = total_mass()
    values = []
    for left, right in zip(bps, bps[1:]):
        tot = height(0)
        for j in TAGS:
            pre, per = rectangle_families(j)
            tot = tot + sum((height(n) for n in pre if width(j, n) >= right), ZERO)
            tail = ONE / (ONE - INV_BETA ** len(per))
            tot = tot + sum((height(n) for n in per if width(j, n) >= right), ZERO) * tail
        values.append(tot / mass)
    return PiecewiseDensity(bps, values)


def tower_density() -> PiecewiseDensity:
    """Density from vertical slice lengths of the tower, normalised by its area."""
    bps = _widths()
    mass = tower_mass()
    base_lo, base_hi = tower_strip(0, 0)
    values = []
    for left, right in zip(bps, bps[1:]):
        tot = base_hi - base_lo
        for j in TAGS:
            pre, per = rectangle_families(j)
            for n in pre:
                lo, hi = tower_strip(n, j)
                if width(j, n) >= right:
                    tot = tot + (hi - lo)
            block = ZERO
            for n in per:
                lo, hi = tower_strip(n, j)
                if width(j, n) >= right:
                    block = block + (hi - lo)
            first = tower_strip(per[0], j)
            nxt = tower_strip(per[0] + len(per), j)
            ratio = (nxt[1] - nxt[0]) / (first[1] - first[0])
            tot = tot + block / (ONE - ratio)
        values.append(tot / mass)
    return PiecewiseDensity(bps, values)


# --- invariance ------------------------------------------------------------------

def _preimages(x: QBeta) -> list[QBeta]:
    out = []
    for j in GOLDEN.digits:
        y = (x + j) * INV_BETA
        lo, hi = GOLDEN.cells[j]
        if lo <= y < hi:
            out.append(y)
    return out


def transfer(d: PiecewiseDensity, x):
    """Perron-Frobenius operator of the golden map applied to ``d``, at ``x``."""
    x = as_qbeta(x)
    return sum((d(y) for y in _preimages(x)), ZERO) * INV_BETA


def transfer_check(x, d: PiecewiseDensity | None = None) -> QBeta:
    """``(L d)(x) - d(x)``; zero at every point when ``d`` is invariant."""
    d = golden_density() if d is None else d
    x = as_qbeta(x)
    if not ZERO <= x < TWO:
        raise ValueError(f"{x} outside [0, 2)")
    bps = set(d.breakpoints)
    if x in bps or any(y in bps for y in _preimages(x)):
        raise BreakpointError(f"{x} or a preimage is a breakpoint; resample")
    return transfer(d, x) - d(x)


def branch_integrals(d: PiecewiseDensity | None = None, refine: int = 1) -> list[tuple]:
    """Mass of each piece's preimage, divided by the piece length.

    Returns ``(left, right, value, reconstructed)`` per (refined) piece; for
    an invariant density ``reconstructed == value`` on every piece.
    """
    d = golden_density() if d is None else d
    out = []
    for left, right, v in d.pieces():
        step = (right - left) / refine
        for k in range(refine):
            a = left + k * step
            b = a + step
            mass = ZERO
            for j in GOLDEN.digits:
                lo, hi = GOLDEN.cells[j]
                mass = mass + d.integrate(max(lo, (a + j) * INV_BETA), min(hi, (b + j) * INV_BETA))
            out.append((a, b, v, mass / (b - a)))
    return out


# --- classical map -------------------------------------------------------------

def classical_density(beta=None, truncation: int = 64) -> PiecewiseDensity:
    """Truncated Gel'fond-Parry density of the classical greedy map on ``[0, 1)``.

    ``beta=None`` selects the golden ratio with exact arithmetic; a float
    ``beta`` is handled in floating point.
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    exact = beta is None or isinstance(beta, QBeta)
    b = BETA if beta is None else beta
    if not exact:
        b = float(b)
        if not b > 1:
            raise ValueError("beta must exceed 1")
    tmap = ClassicalMap(b)
    zero, one = (ZERO, ONE) if exact else (0.0, 1.0)
    inv = (ONE / b) if exact else 1.0 / b
    points, x, w = [], one, one
    for _ in range(truncation):
        points.append((x, w))
        x = tmap.step(x)[1]
        w = w * inv
    cuts = sorted({p for p, _ in points if zero < p < one} | {zero, one})
    values = []
    for left, right in zip(cuts, cuts[1:]):
        values.append(sum((wt for p, wt in points if p >= right), zero))
    norm = sum((v * (r - l) for l, r, v in zip(cuts, cuts[1:], values)), zero)
    return PiecewiseDensity(cuts, [v / norm for v in values])


# --- simulation ----------------------------------------------------------------

def bin_edges(bins="pieces", refine: int = 1) -> list[QBeta]:
    """Exact bin edges on ``[0, 2)``.

    ``"pieces"`` uses the density breakpoints, ``"uniform"`` six equal bins;
    ``refine`` splits every bin into that many equal parts.
    """
    if bins == "pieces":
        base = list(golden_density().breakpoints)
    elif bins == "uniform":
        base = [QBeta(Fraction(k, 3)) for k in range(7)]
    elif isinstance(bins, (list, tuple)):
        base = [as_qbeta(e) for e in bins]
    else:
        raise ValueError(f"unknown bins {bins!r}")
    if refine < 1:
        raise ValueError("refine must be >= 1")
    out = [base[0]]
    for a, b in zip(base, base[1:]):
        for k in range(1, refine + 1):
            out.append(a + (b - a) * Fraction(k, refine))
    return out


@dataclass
class BirkhoffResult:
    edges: list
    counts: np.ndarray
    expected: list
    iters: int
    starts: list = field(default_factory=list)

    @property
    def observed(self) -> np.ndarray:
        if self.iters == 0:
            return np.zeros(len(self.counts))
        return self.counts / self.iters

    @property
    def max_abs_error(self) -> float:
        if self.iters == 0:
            return 0.0
        return float(np.max(np.abs(self.observed - np.asarray(self.expected, dtype=float))))

    def rows(self) -> list[tuple]:
        if self.iters == 0:
            return []
        obs = self.observed
        return [(float(a), float(b), float(o), float(e))
                for a, b, o, e in zip(self.edges, self.edges[1:], obs, self.expected)]


def _float_orbit(x: float, iters: int) -> np.ndarray:
    beta = (1 + math.sqrt(5)) / 2
    c2, c3 = 2 / beta, 3 / beta
    out = np.empty(iters)
    for i in range(iters):
        out[i] = x
        if x < c2:
            x = beta * x
        elif x < c3:
            x = beta * x - 2
        else:
            x = beta * x - 3
        if x < 0:
            # rounding below the cut; reflect instead of pinning to the fixed point 0
            x = -x
    return out


def birkhoff(start=None, iters: int = 10 ** 6, bins="pieces", seed: int = 0,
             shards: int = 1, refine: int = 1) -> BirkhoffResult:
    """Occupation frequencies of float orbits of the golden map.

    With ``shards > 1`` the iterations are split over independent orbits
    whose starts come from spawned seed streams; the merged histogram is
    deterministic for fixed ``(seed, shards)``.
    """
    if iters < 0:
        raise ValueError("iters must be >= 0")
    if shards < 1:
        raise ValueError("shards must be >= 1")
    edges = bin_edges(bins, refine)
    h = golden_density()
    expected = [float(h.integrate(a, b)) for a, b in zip(edges, edges[1:])]
    counts = np.zeros(len(edges) - 1, dtype=np.int64)
    if iters == 0:
        return BirkhoffResult(edges, counts, expected, 0)
    fedges = np.array([float(e) for e in edges])
    seqs = np.random.SeedSequence(seed).spawn(shards)
    sizes = [iters // shards + (1 if k < iters % shards else 0) for k in range(shards)]
    starts = []
    for k, (seq, size) in enumerate(zip(seqs, sizes)):
        rng = np.random.default_rng(seq)
        x0 = float(start) if (start is not None and k == 0) else float(rng.uniform(0.0, 2.0))
        if not 0.0 <= x0 < 2.0:
            raise ValueError(f"start {x0} outside [0, 2)")
        starts.append(x0)
        if size == 0:
            continue
        pts = _float_orbit(x0, size)
        idx = np.searchsorted(fedges, pts, side="right") - 1
        idx = idx[(idx >= 0) & (idx < len(counts))]
        counts += np.bincount(idx, minlength=len(counts))
    return BirkhoffResult(edges, counts, expected, iters, starts)
