"""Natural extensions of the golden map.

Version 1 lives on a disjoint union of rectangles: the base ``R0 = [0,2)^2``
tagged ``(0, 0)`` and, for ``j`` in {2, 3} and ``n >= 1``, rectangles
``[0, T^{n-1} x_j) x [0, 2/beta^n)`` tagged ``(j, n)`` with ``x_2 = 1`` and
``x_3 = 1/beta^3``.  Version 2 stacks the same pieces as horizontal strips of
a planar tower inside ``[0,2) x [0,2 beta)``.
"""
from __future__ import annotations

import random
from functools import lru_cache
from typing import NamedTuple

from .cylinders import REFERENCE_POINTS, beta_pow, cylinder, reference_digits
from .greedy import GOLDEN, INV_BETA, TWO, TWO_OVER_BETA, THREE_OVER_BETA, DomainError
from .qbeta import BETA, ONE, ZERO, QBeta

__all__ = [
    "RState", "TowerPoint", "Rect", "StateError",
    "width", "height", "rect_geometry", "returns", "returns_by_cylinder",
    "returns_by_pattern", "return_offset", "step", "step_inverse", "orbit",
    "total_mass", "partial_mass", "tower_strip", "tower_mass", "locate_strip",
    "phi", "phi_inverse", "tower_step", "tower_step_inverse", "step_rectangle",
    "check_state", "random_state", "random_tower_point", "rectangle_families",
]

TAGS = (2, 3)
BETA2 = BETA * BETA
INV_BETA2 = INV_BETA * INV_BETA
INV_BETA3 = INV_BETA2 * INV_BETA
TWO_OVER_BETA2 = 2 * INV_BETA2


class StateError(ValueError):
    """A state violates the invariants of the rectangle space."""


class RState(NamedTuple):
    x: QBeta
    y: QBeta
    j: int = 0
    n: int = 0

    def to_record(self) -> dict:
        return {"x": self.x.to_record(), "y": self.y.to_record(), "j": self.j, "n": self.n,
                "x_float": float(self.x), "y_float": float(self.y)}


class TowerPoint(NamedTuple):
    x: QBeta
    y: QBeta

    def to_record(self) -> dict:
        return {"x": self.x.to_record(), "y": self.y.to_record(),
                "x_float": float(self.x), "y_float": float(self.y)}


class Rect(NamedTuple):
    """Axis-aligned half-open box ``[x0,x1) x [y0,y1)`` inside piece ``(j, n)``."""
    x0: QBeta
    x1: QBeta
    y0: QBeta
    y1: QBeta
    j: int = 0
    n: int = 0

    @property
    def area(self) -> QBeta:
        return (self.x1 - self.x0) * (self.y1 - self.y0)


def _check_tag(j: int, n: int) -> None:
    if (j, n) == (0, 0):
        return
    if j not in TAGS or not isinstance(n, int) or n < 1:
        raise StateError(f"invalid rectangle tag (j={j}, n={n})")


# --- geometry ------------------------------------------------------------

@lru_cache(maxsize=None)
def width(j: int, n: int) -> QBeta:
    """Right end of the x-range of piece (j, n): ``T^{n-1} x_j`` (2 for the base)."""
    _check_tag(j, n)
    if j == 0:
        return TWO
    if n == 1:
        return REFERENCE_POINTS[j]
    return GOLDEN.step(width(j, n - 1))[1]


@lru_cache(maxsize=None)
def height(n: int) -> QBeta:
    """Right end of the y-range at level n: ``2/beta^n`` (2 for the base)."""
    return TWO if n == 0 else TWO / beta_pow(n)


def rect_geometry(j: int, n: int):
    """``((0, w), (0, h), w*h)`` for piece (j, n)."""
    _check_tag(j, n)
    w, h = width(j, n), height(n)
    return (ZERO, w), (ZERO, h), w * h


@lru_cache(maxsize=None)
def returns_by_cylinder(j: int, n: int) -> bool:
    """Is the block ``j d_1 ... d_{n-1} 0`` a full cylinder?"""
    _check_tag(j, n)
    block = str(j) + "".join(map(str, reference_digits(j, n - 1))) + "0"
    return cylinder(block).full


def returns_by_pattern(j: int, n: int) -> bool:
    _check_tag(j, n)
    return n % 3 == 2 and n >= (2 if j == 2 else 5)


@lru_cache(maxsize=None)
def returns(j: int, n: int) -> bool:
    """Whether part of piece (j, n) is sent back to the base."""
    a, b = returns_by_cylinder(j, n), returns_by_pattern(j, n)
    if a != b:
        raise AssertionError(f"fullness criteria disagree at (j={j}, n={n})")
    return a


@lru_cache(maxsize=None)
def return_offset(j: int, n: int) -> QBeta:
    """``j/beta + sum_{i<n} d_i/beta^{i+1}``: left end of the y-range entered on return."""
    s = j * INV_BETA
    for i, d in enumerate(reference_digits(j, n - 1), start=1):
        if d:
            s = s + d / beta_pow(i + 1)
    return s


def check_state(s: RState) -> None:
    j, n = s.j, s.n
    _check_tag(j, n)
    if not (ZERO <= s.x < width(j, n)) or not (ZERO <= s.y < height(n)):
        raise StateError(f"point ({s.x}, {s.y}) not in piece (j={j}, n={n})")


# --- the invertible map ----------------------------------------------------

def step(s: RState, check: bool = True) -> RState:
    """Apply the extended transformation once."""
    if check:
        check_state(s)
    x, y, j, n = s
    d = GOLDEN.digit(x)
    tx = BETA * x - d
    if j == 0:
        if d == 0:
            return RState(tx, y * INV_BETA, 0, 0)
        return RState(tx, y * INV_BETA, d, 1)
    if d == 0 and returns(j, n):
        return RState(tx, return_offset(j, n) + y * INV_BETA, 0, 0)
    return RState(tx, y * INV_BETA, j, n + 1)


def _return_source(y: QBeta) -> tuple[int, int]:
    """Piece (j, n) whose returning part lands on height ``y >= 2/beta`` of the base."""
    j = 2 if y < THREE_OVER_BETA else 3
    n = 2 if j == 2 else 5
    while True:
        lo = return_offset(j, n)
        if y < lo:
            raise AssertionError(f"return ranges do not tile the base at y={y}")
        if y < lo + height(n) * INV_BETA:
            return j, n
        n += 3


def step_inverse(s: RState, check: bool = True) -> RState:
    """Unique preimage of ``s`` under :func:`step`."""
    if check:
        check_state(s)
    x, y, j, n = s
    if j == 0:
        if y < TWO_OVER_BETA:
            return RState(x * INV_BETA, BETA * y, 0, 0)
        jj, nn = _return_source(y)
        return RState(x * INV_BETA, BETA * (y - return_offset(jj, nn)), jj, nn)
    if n == 1:
        return RState((x + j) * INV_BETA, BETA * y, 0, 0)
    d = reference_digits(j, n - 1)[-1]
    return RState((x + d) * INV_BETA, BETA * y, j, n - 1)


def orbit(s: RState, steps: int) -> list[RState]:
    out = [s]
    for _ in range(steps):
        s = step(s)
        out.append(s)
    return out


def _continuity_right(x: QBeta, j: int, n: int) -> QBeta:
    """Right end of the x-interval around ``x`` on which ``step`` is affine."""
    if j == 0:
        d = GOLDEN.digit(x)
        return GOLDEN.cells[d][1]
    w = width(j, n)
    if returns(j, n) and x < TWO_OVER_BETA:
        return TWO_OVER_BETA
    return w


def step_rectangle(r: Rect) -> Rect:
    """Image of a box lying in one continuity region (exact corner arithmetic)."""
    if r.x1 > _continuity_right(r.x0, r.j, r.n) or not r.x0 < r.x1 or not r.y0 < r.y1:
        raise StateError("box straddles a discontinuity of the map or is empty")
    if r.y1 > height(r.n) or r.x1 > width(r.j, r.n) or r.x0 < ZERO or r.y0 < ZERO:
        raise StateError("box leaves its piece")
    x0, y0, j, n = step(RState(r.x0, r.y0, r.j, r.n))
    return Rect(x0, x0 + BETA * (r.x1 - r.x0), y0, y0 + (r.y1 - r.y0) * INV_BETA, j, n)


# --- masses ----------------------------------------------------------------

@lru_cache(maxsize=None)
def rectangle_families(j: int) -> tuple[tuple, tuple]:
    """Split levels ``n >= 1`` of tag ``j`` into a pre-period and one period.

    The orbit of ``x_j`` is finite, so widths repeat with period ``p``;
    returns ``(pre_levels, period_levels)``.
    """
    seen = {}
    n = 1
    while True:
        w = width(j, n)
        if w in seen:
            first = seen[w]
            return tuple(range(1, first)), tuple(range(first, n))
        seen[w] = n
        n += 1


def _geometric(ratio: QBeta) -> QBeta:
    return ONE / (ONE - ratio)


def total_mass() -> QBeta:
    """Exact total area of the rectangle space, summed as geometric series."""
    total = width(0, 0) * height(0)
    for j in TAGS:
        pre, per = rectangle_families(j)
        total = total + sum((width(j, n) * height(n) for n in pre), ZERO)
        block = sum((width(j, n) * height(n) for n in per), ZERO)
        total = total + block * _geometric(INV_BETA ** len(per))
    return total


def partial_mass(levels: int) -> QBeta:
    """Exact area of the base and all pieces with ``n <= levels``."""
    total = width(0, 0) * height(0)
    for j in TAGS:
        for n in range(1, levels + 1):
            total = total + width(j, n) * height(n)
    return total


# --- the tower ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _strip_sum(n: int) -> QBeta:
    # sum_{i=1}^{n-1} beta^{-i}
    if n <= 1:
        return ZERO
    return _strip_sum(n - 1) + INV_BETA ** (n - 1)


@lru_cache(maxsize=None)
def tower_strip(n: int, j: int) -> tuple[QBeta, QBeta]:
    """Half-open y-interval of the tower strip for piece (j, n)."""
    _check_tag(j, n)
    if j == 0:
        return ZERO, TWO_OVER_BETA2
    base = TWO_OVER_BETA2 if j == 2 else TWO
    return (base + TWO_OVER_BETA2 * _strip_sum(n),
            base + TWO_OVER_BETA2 * (_strip_sum(n) + INV_BETA ** n))


def locate_strip(y: QBeta) -> tuple[int, int]:
    """``(j, n)`` of the tower strip containing height ``y``."""
    if y < ZERO:
        raise DomainError(f"height {y} below the tower")
    if y < TWO_OVER_BETA2:
        return 0, 0
    if y < TWO:
        j = 2
    elif y < 2 * BETA:
        j = 3
    else:
        raise DomainError(f"height {y} above the tower")
    n = 1
    while not y < tower_strip(n, j)[1]:
        n += 1
    return j, n


def tower_mass() -> QBeta:
    """Exact planar area of the tower, from strip lengths."""
    lo, hi = tower_strip(0, 0)
    total = TWO * (hi - lo)
    for j in TAGS:
        pre, per = rectangle_families(j)
        for n in pre:
            lo, hi = tower_strip(n, j)
            total = total + width(j, n) * (hi - lo)
        block = ZERO
        for n in per:
            lo, hi = tower_strip(n, j)
            block = block + width(j, n) * (hi - lo)
        # strip lengths shrink by the same factor across one period
        first = tower_strip(per[0], j)
        nxt = tower_strip(per[0] + len(per), j)
        ratio = (nxt[1] - nxt[0]) / (first[1] - first[0])
        total = total + block * _geometric(ratio)
    return total


def phi(p: TowerPoint) -> RState:
    """Tower point -> rectangle state (shift strip to 0 and scale by beta^2)."""
    x, y = p
    j, n = locate_strip(y)
    if not (ZERO <= x < width(j, n)):
        raise DomainError(f"point ({x}, {y}) not in the tower")
    return RState(x, BETA2 * (y - tower_strip(n, j)[0]), j, n)


def phi_inverse(s: RState) -> TowerPoint:
    check_state(s)
    return TowerPoint(s.x, tower_strip(s.n, s.j)[0] + s.y * INV_BETA2)


def tower_step(p: TowerPoint) -> TowerPoint:
    return phi_inverse(step(phi(p), check=False))


def tower_step_inverse(p: TowerPoint) -> TowerPoint:
    return phi_inverse(step_inverse(phi(p), check=False))


# --- sampling ----------------------------------------------------------------

def random_state(rng: random.Random, j: int | None = None, n: int | None = None,
                 max_level: int = 30, denom: int = 1 << 20) -> RState:
    """Random state with rational coordinate fractions of its piece."""
    if j is None:
        j = rng.choice((0, 2, 3))
    if j == 0:
        n = 0
    elif n is None:
        n = rng.randint(1, max_level)
    w, h = width(j, n), height(n)
    a, b = rng.randrange(denom), rng.randrange(denom)
    return RState(QBeta._raw(w._p * a, w._q * a, w._d * denom),
                  QBeta._raw(h._p * b, h._q * b, h._d * denom), j, n)


def random_tower_point(rng: random.Random, max_level: int = 30, denom: int = 1 << 20) -> TowerPoint:
    s = random_state(rng, max_level=max_level, denom=denom)
    return phi_inverse(s)
