"""Fundamental intervals of the golden map and their combinatorics."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .greedy import GOLDEN, INV_BETA, TWO, expand
from .qbeta import BETA, ONE, ZERO, QBeta

__all__ = [
    "Cylinder", "SubblockDecomposition", "CylinderError",
    "cylinder", "image", "enumerate_cylinders", "closed_form_blocks",
    "mass_of_D", "decompose", "reference_digits", "REFERENCE_POINTS",
    "beta_pow", "is_full",
]

ALPHABET = "023"
CELLS = {0: GOLDEN.cells[0], 2: GOLDEN.cells[2], 3: GOLDEN.cells[3]}

# x_2 = 1 and x_3 = 1/beta^3 = 2*beta - 3
REFERENCE_POINTS = {2: ONE, 3: 2 * BETA - 3}


class CylinderError(ValueError):
    pass


@lru_cache(maxsize=None)
def beta_pow(n: int) -> QBeta:
    return BETA ** n


@lru_cache(maxsize=None)
def reference_digits(j: int, n: int) -> tuple:
    """First ``n`` greedy digits of 1 (``j=2``) or of 1/beta^3 (``j=3``)."""
    return tuple(expand(REFERENCE_POINTS[j], n))


@dataclass(frozen=True)
class Cylinder:
    block: str
    left: QBeta
    right: QBeta
    full: bool

    @property
    def rank(self) -> int:
        return len(self.block)

    @property
    def empty(self) -> bool:
        return not self.left < self.right

    @property
    def length(self) -> QBeta:
        return self.right - self.left if not self.empty else ZERO

    def __contains__(self, x) -> bool:
        return self.left <= x < self.right

    def to_record(self) -> dict:
        return {"block": self.block, "left": self.left.to_record(), "right": self.right.to_record(),
                "left_float": float(self.left), "right_float": float(self.right),
                "rank": self.rank, "full": self.full, "empty": self.empty}


def _digits(block) -> list[int]:
    if isinstance(block, str):
        out = []
        for ch in block:
            if ch not in ALPHABET:
                raise CylinderError(f"invalid digit {ch!r}; alphabet is 0, 2, 3")
            out.append(int(ch))
        return out
    out = list(block)
    if any(d not in CELLS for d in out):
        raise CylinderError(f"invalid digits {out}; alphabet is 0, 2, 3")
    return out


def _block_str(block) -> str:
    return block if isinstance(block, str) else "".join(map(str, block))


def is_full(left: QBeta, right: QBeta, rank: int) -> bool:
    return right - left == TWO / beta_pow(rank)


@lru_cache(maxsize=65536)
def _cylinder(block: str) -> Cylinder:
    digits = _digits(block)
    lo, hi = ZERO, TWO
    # pull [0, 2) back through inverse branches, right to left
    for c in reversed(digits):
        cl, cr = CELLS[c]
        lo = (lo + c) * INV_BETA
        hi = (hi + c) * INV_BETA
        if lo < cl:
            lo = cl
        if cr < hi:
            hi = cr
        if not lo < hi:
            return Cylinder(block, ZERO, ZERO, False)
    return Cylinder(block, lo, hi, is_full(lo, hi, len(digits)))


def cylinder(block) -> Cylinder:
    """Exact fundamental interval of a digit block (empty if unrealizable)."""
    block = _block_str(block)
    _digits(block)
    return _cylinder(block)


def image(block) -> tuple[QBeta, QBeta]:
    """``T^n`` applied to the cylinder of ``block``, as ``(left, right)``."""
    cyl = cylinder(block)
    if cyl.empty:
        raise CylinderError(f"cylinder {cyl.block!r} is empty")
    n = cyl.rank
    lo = cyl.left
    for c in _digits(cyl.block):
        lo = BETA * lo - c
    return lo, lo + beta_pow(n) * cyl.length


# --- enumeration -----------------------------------------------------------

def _search(n: int, prune_full: bool):
    """Depth-first search over realizable blocks of rank ``n``.

    Yields ``(block, left, right, covered)`` where ``covered`` tells whether
    some proper prefix is a full cylinder.  The search carries the image
    interval ``T^k`` of the current cylinder, so it never consults the
    closed-form families.
    """
    inv_pows = [ONE]
    for _ in range(n):
        inv_pows.append(inv_pows[-1] * INV_BETA)
    stack = [("", ZERO, TWO, ZERO, TWO, False)]
    while stack:
        block, left, right, il, ir, covered = stack.pop()
        k = len(block)
        if k == n:
            yield block, left, right, covered
            continue
        if k > 0 and not covered and ir - il == TWO and il == ZERO:
            covered = True
            if prune_full:
                continue
        for c in (3, 2, 0):
            cl, cr = CELLS[c]
            pl = il if cl < il else cl
            pr = ir if ir < cr else cr
            if not pl < pr:
                continue
            new_left = left + (pl - il) * inv_pows[k]
            new_right = left + (pr - il) * inv_pows[k]
            stack.append((block + str(c), new_left, new_right, BETA * pl - c, BETA * pr - c, covered))


def closed_form_blocks(n: int, family: str) -> list[str]:
    """Blocks of the families ``D_n`` / ``B_n`` from their explicit patterns."""
    if n < 1:
        raise ValueError("rank must be >= 1")
    if family == "D":
        if n == 1:
            return ["0"]
        if n == 3:
            return ["200"]
        if n % 3 == 0 and n >= 6:
            mid = "002" * (n // 3 - 2)
            return ["202" + mid + "000", "300" + mid + "000"]
        return []
    if family == "B":
        if n == 1:
            return ["2", "3"]
        if n == 2:
            return ["20", "30"]
        k, r = divmod(n, 3)
        mid = "002" * (k - 1)
        tail = "0" * r
        return ["202" + mid + tail, "300" + mid + tail]
    raise ValueError(f"unknown family {family!r}")


def enumerate_cylinders(n: int, family: str = "all", method: str = "closed") -> list[Cylinder]:
    """Cylinders of rank ``n`` in ``family`` ("all", "D" or "B").

    ``method`` selects how D/B are produced: "closed" uses the explicit
    patterns, "search" a pruned depth-first search, and "exhaustive" walks
    every realizable block of rank ``n`` and filters.  Results are in
    lexicographic (equivalently, positional) order.
    """
    if n < 1:
        raise ValueError("rank must be >= 1")
    if family not in ("all", "D", "B"):
        raise ValueError(f"unknown family {family!r}")
    if family != "all" and method == "closed":
        return [cylinder(b) for b in closed_form_blocks(n, family)]
    if method not in ("closed", "search", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    prune = family != "all" and method == "search"
    full_len = TWO / beta_pow(n)
    out = []
    for block, left, right, covered in _search(n, prune):
        full = right - left == full_len
        if family == "all" or (not covered and full == (family == "D")):
            out.append(Cylinder(block, left, right, full))
    out.sort(key=lambda c: c.block)
    return out


def mass_of_D(up_to: int) -> QBeta:
    """Exact partial sum of the Lebesgue measures of ``D_1, ..., D_N``."""
    if up_to < 1:
        raise ValueError("N must be >= 1")
    total = ZERO
    for n in range(1, up_to + 1):
        for b in closed_form_blocks(n, "D"):
            total = total + cylinder(b).length
    return total


# --- subblocks -------------------------------------------------------------

@dataclass(frozen=True)
class SubblockDecomposition:
    blocks: tuple
    return_times: tuple

    def __iter__(self):
        return iter(self.blocks)


def decompose(block) -> SubblockDecomposition:
    """Cut a full block into minimal full subblocks.

    A new subblock starts as soon as the current one forms a full cylinder,
    so the cut positions are the return times to the base rectangle.
    """
    block = _block_str(block)
    cyl = cylinder(block)
    if cyl.empty or not cyl.full:
        raise CylinderError(f"block {block!r} is not a full cylinder")
    blocks, times = [], []
    start = 0
    for end in range(1, len(block) + 1):
        if cylinder(block[start:end]).full:
            blocks.append(block[start:end])
            times.append(end)
            start = end
    if start != len(block):
        raise CylinderError(f"trailing subblock {block[start:]!r} is not full")
    return SubblockDecomposition(tuple(blocks), tuple(times))
