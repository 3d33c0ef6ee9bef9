"""Greedy beta-transformations: classical, deleted-digit, and the golden {0,2,3} map."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .qbeta import BETA, ZERO, QBeta, as_qbeta

__all__ = [
    "DomainError", "DigitSet", "DigitSetReport", "GreedyOrbit",
    "GoldenMap", "DeletedDigitMap", "ClassicalMap", "GOLDEN",
    "golden_step", "expand", "orbit", "validate", "support_index",
    "INV_BETA", "TWO_OVER_BETA", "THREE_OVER_BETA",
]

FLOAT_TOL = 1e-12

INV_BETA = BETA - 1
TWO_OVER_BETA = 2 * INV_BETA
THREE_OVER_BETA = 3 * INV_BETA
TWO = QBeta(2)


class DomainError(ValueError):
    """A point lies outside the domain of the map it was given to."""


@dataclass(frozen=True)
class DigitSet:
    """Digit alphabet ``a_0 < ... < a_m`` together with the base.

    Digits and base are either all exact (``QBeta``/int) or floats.
    """

    digits: tuple
    base: object = BETA

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))

    @property
    def exact(self) -> bool:
        return isinstance(self.base, QBeta)

    @property
    def m(self) -> int:
        return len(self.digits) - 1

    @property
    def upper(self):
        """Right end ``a_m / (beta - 1)`` of the full domain."""
        return self.digits[-1] / (self.base - 1)


@dataclass
class DigitSetReport:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate(ds: DigitSet) -> DigitSetReport:
    """Check the three admissibility conditions on a digit set.

    Violations are reported as ``"(i)"``, ``"(ii)"``, ``"(iii)"`` followed by
    a short reason; an extra ``"base"`` entry flags ``beta <= 1``.
    """
    out = []
    d = ds.digits
    if ds.base <= 1:
        out.append("base: beta must exceed 1")
    if not d or d[0] != 0:
        out.append("(i): smallest digit must be 0")
    if any(d[i] >= d[i + 1] for i in range(len(d) - 1)):
        out.append("(ii): digits must be strictly increasing")
    if len(d) >= 2 and ds.base > 1 and not any(s.startswith("(ii)") for s in out):
        gap = max(d[i] - d[i - 1] for i in range(1, len(d)))
        if gap > ds.upper:
            out.append(f"(iii): max gap {gap} exceeds a_m/(beta-1) = {ds.upper}")
    elif len(d) < 2:
        out.append("(ii): need at least two digits")
    return DigitSetReport(not out, out)


@dataclass
class GreedyOrbit:
    start: object
    digits: list
    iterates: list


class DeletedDigitMap:
    """Greedy map with digits ``A`` on ``[0, a_m/(beta-1)]``.

    Branch ``j`` is the half-open cell ``[a_j/beta, a_{j+1}/beta)``; the last
    one is ``[a_m/beta, a_m/(beta-1)]``.  Float systems snap points within
    ``tol`` below a cell boundary into the upper cell.
    """

    def __init__(self, digit_set: DigitSet, tol: float = FLOAT_TOL):
        report = validate(digit_set)
        if not report:
            raise ValueError("; ".join(report.violations))
        self.digit_set = digit_set
        self.beta = digit_set.base
        self.digits = digit_set.digits
        self.exact = digit_set.exact
        self.tol = 0 if self.exact else tol
        self.cuts = [a / self.beta for a in self.digits]
        self.lower = 0
        self.upper = digit_set.upper

    def _convert(self, x):
        return as_qbeta(x) if self.exact else float(x)

    def in_domain(self, x) -> bool:
        return -self.tol <= x <= self.upper + self.tol

    def cell(self, x) -> int:
        """Index of the branch containing ``x``."""
        for i in range(len(self.cuts) - 1, 0, -1):
            if self.cuts[i] <= x + self.tol:
                return i
        return 0

    def step(self, x):
        x = self._convert(x)
        if not self.in_domain(x):
            raise DomainError(f"{x} outside [0, {self.upper}]")
        i = self.cell(x)
        nxt = self.beta * x - self.digits[i]
        if not self.exact and nxt < 0:
            nxt = 0.0
        return self.digits[i], nxt


class ClassicalMap(DeletedDigitMap):
    """Classical greedy map ``T_c`` with digits ``0..floor(beta)``."""

    def __init__(self, beta, tol: float = FLOAT_TOL):
        fl = math.floor(float(beta))
        super().__init__(DigitSet(tuple(range(fl + 1)), beta), tol)


class GoldenMap:
    """The golden map ``T`` on ``[0, 2)`` with digits {0, 2, 3}, in exact arithmetic."""

    digits = (0, 2, 3)
    beta = BETA
    exact = True
    lower = ZERO
    upper = TWO
    cells = {0: (ZERO, TWO_OVER_BETA), 2: (TWO_OVER_BETA, THREE_OVER_BETA), 3: (THREE_OVER_BETA, TWO)}

    def _convert(self, x):
        return as_qbeta(x)

    def in_domain(self, x) -> bool:
        return ZERO <= x < TWO

    def digit(self, x: QBeta) -> int:
        if x < TWO_OVER_BETA:
            return 0
        return 2 if x < THREE_OVER_BETA else 3

    def step(self, x):
        x = as_qbeta(x)
        if not (ZERO <= x < TWO):
            raise DomainError(f"{x} outside [0, 2)")
        j = self.digit(x)
        return j, BETA * x - j

    def __repr__(self):
        return "GoldenMap()"


GOLDEN = GoldenMap()


def golden_step(x) -> tuple[int, QBeta]:
    """One step of the golden map: ``(digit, beta*x - digit)``."""
    return GOLDEN.step(x)


def orbit(x, n: int, system=GOLDEN) -> GreedyOrbit:
    x = system._convert(x)
    digits, its = [], [x]
    for _ in range(n):
        d, x = system.step(x)
        digits.append(d)
        its.append(x)
    return GreedyOrbit(its[0], digits, its)


def expand(x, n: int, system=GOLDEN) -> list:
    """First ``n`` greedy digits of ``x``."""
    return orbit(x, n, system).digits


def support_index(ds: DigitSet, tol: float = FLOAT_TOL):
    """Smallest ``j`` with ``[0, a_j - a_{j-1})`` forward invariant.

    Returns ``(j0, (0, a_j0 - a_{j0-1}))``.  Invariance is checked branch by
    branch: the image of each cell intersected with the candidate interval
    must stay inside it.
    """
    tmap = DeletedDigitMap(ds, tol)
    slack = tmap.tol
    a, beta = ds.digits, ds.base
    for j in range(1, len(a)):
        width = a[j] - a[j - 1]
        ok = True
        for i in range(len(a)):
            lo = a[i] / beta
            hi = a[i + 1] / beta if i + 1 < len(a) else tmap.upper
            if width < hi:
                hi = width
            if not lo < hi:
                continue
            if beta * hi - a[i] > width + slack:
                ok = False
                break
        if ok:
            return j, (0 * width, width)
    raise AssertionError("gap condition guarantees j = m qualifies")
