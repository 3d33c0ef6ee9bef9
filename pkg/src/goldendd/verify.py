"""Named consistency checks tying the implementation to the mathematical claims.

Each check has a stable id, a one-line statement of the claim it tests, and
returns whether it passed together with an exact residual or float gap.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction

from . import cylinders as cyl
from . import natext as nx
from .greedy import GOLDEN, DigitSet, expand, support_index, validate
from .measure import (birkhoff, branch_integrals, classical_density, fiber_oracle,
                      golden_density, tower_density, transfer_check, BreakpointError)
from .qbeta import BETA, ONE, ZERO, QBeta

__all__ = ["Check", "CheckResult", "CHECKS", "SUITES", "run_suite"]

TWO = QBeta(2)


@dataclass(frozen=True)
class Check:
    id: str
    claim: str
    kind: str  # "exact" or "simulation"
    func: object


@dataclass
class CheckResult:
    id: str
    claim: str
    passed: bool
    residual: str
    runtime: float

    def to_record(self, timing: bool = False) -> dict:
        rec = {"id": self.id, "claim": self.claim,
               "status": "pass" if self.passed else "fail", "residual": self.residual}
        if timing:
            rec["runtime_s"] = round(self.runtime, 4)
        return rec


@dataclass
class Budget:
    seed: int = 0
    states: int = 100_000
    tower_points: int = 10_000
    transfer_points: int = 1000
    birkhoff_iters: int = 1_000_000

    @classmethod
    def quick(cls, seed: int = 0) -> Budget:
        return cls(seed, 5000, 1000, 200, 200_000)


PERIODIC_ONE = [0, 2] + [0, 0, 2] * 4
PERIODIC_INV_BETA3 = [0, 0] + [0, 0, 2] * 4


def _expansion_one(b):
    got = expand(ONE, 14)
    return got == PERIODIC_ONE, f"digits={''.join(map(str, got))}"


def _expansion_inv_beta3(b):
    got = expand(2 * BETA - 3, 14)
    return got == PERIODIC_INV_BETA3, f"digits={''.join(map(str, got))}"


def _digit_set(b):
    ds = DigitSet((0, 2, 3))
    rep = validate(ds)
    j0, (lo, hi) = support_index(ds)
    ok = bool(rep) and j0 == 1 and hi == 2
    return ok, f"j0={j0} support=[{lo},{hi})"


def _orbit_disjoint(b):
    orbits = {}
    for name, x in (("1", ONE), ("1/b^3", 2 * BETA - 3)):
        seen = []
        while x not in seen:
            seen.append(x)
            x = GOLDEN.step(x)[1]
        orbits[name] = set(seen)
    ib = BETA - 1
    ok = (orbits["1"] == {ONE, BETA, ib}
          and orbits["1/b^3"] == {ib ** 3, ib ** 2, ib, ONE, BETA}
          and not any(GOLDEN.digit(x) == 3 for o in orbits.values() for x in o))
    return ok, f"sizes={len(orbits['1'])},{len(orbits['1/b^3'])}"


def _concat(b):
    rng = random.Random(b.seed)
    fulls = [c.block for n in range(1, 11) for c in cyl.enumerate_cylinders(n) if c.full]
    bad = 0
    for _ in range(300):
        u, v = rng.choice(fulls), rng.choice(fulls)
        if len(u) + len(v) <= 20 and not cyl.cylinder(u + v).full:
            bad += 1
    return bad == 0, f"failures={bad}"


def _mass_D(b):
    m1, m3 = cyl.mass_of_D(1), cyl.mass_of_D(3)
    ib = BETA - 1
    gap = abs(float(cyl.mass_of_D(60)) - 2.0)
    ok = m1 == 2 * ib and m3 == 2 * ib + 2 * ib ** 3 and gap < 1e-6
    return ok, f"|S60-2|={gap:.3e}"


def _families(b):
    bad = [(n, f) for n in range(1, 13) for f in ("D", "B")
           if [c.block for c in cyl.enumerate_cylinders(n, f, "exhaustive")]
           != cyl.closed_form_blocks(n, f)]
    return not bad, f"mismatches={bad}"


def _images(b):
    ib = BETA - 1
    expect = {0: ib, 1: ONE, 2: BETA}
    bad = []
    for n in range(3, 15):
        for blk in cyl.closed_form_blocks(n, "B"):
            if cyl.image(blk) != (ZERO, expect[n % 3]):
                bad.append(blk)
    first = {"2": ONE, "3": ib ** 3, "20": BETA, "30": ib ** 2}
    bad += [k for k, v in first.items() if cyl.image(k) != (ZERO, v)]
    return not bad, f"mismatches={bad}"


def _partition(b):
    for n in range(1, 13):
        cs = cyl.enumerate_cylinders(n)
        if cs[0].left != ZERO or cs[-1].right != TWO:
            return False, f"rank {n} does not span [0,2)"
        if any(a.right != c.left for a, c in zip(cs, cs[1:])):
            return False, f"rank {n} has a gap or overlap"
    return True, "ranks 1..12 tile [0,2)"


def _subblocks(b):
    got = cyl.decompose("2000300002002000").blocks
    return list(got) == ["200", "0", "300002002000"], f"blocks={list(got)}"


def _rect_mass(b):
    exact = nx.total_mass()
    gap = abs(float(nx.partial_mass(60)) - 9.347524)
    return exact == 32 - 14 * BETA and gap < 1e-6, f"exact={exact} |trunc-9.347524|={gap:.2e}"


def _tower_mass(b):
    m = nx.tower_mass()
    ok = m == 78 - 46 * BETA and m == (32 - 14 * BETA) / BETA ** 2
    return ok, f"exact={m}"


def _pattern(b):
    bad = [(j, n) for j in (2, 3) for n in range(1, 201)
           if nx.returns_by_cylinder(j, n) != nx.returns_by_pattern(j, n)]
    return not bad, f"disagreements={len(bad)}"


def _commute_biject(b):
    rng = random.Random(b.seed)
    bad = 0
    for _ in range(b.states):
        s = nx.random_state(rng)
        t = nx.step(s)
        if t.x != GOLDEN.step(s.x)[1] or nx.step_inverse(t) != s:
            bad += 1
    return bad == 0, f"failures={bad}/{b.states}"


def _inverse_side(b):
    rng = random.Random(b.seed + 1)
    n = b.states // 10
    bad = 0
    for _ in range(n):
        s = nx.random_state(rng)
        if nx.step(nx.step_inverse(s)) != s:
            bad += 1
    return bad == 0, f"failures={bad}/{n}"


def _conjugacy(b):
    rng = random.Random(b.seed + 2)
    bad = 0
    for _ in range(b.tower_points):
        p = nx.random_tower_point(rng)
        if nx.phi(nx.tower_step(p)) != nx.step(nx.phi(p)) or nx.phi_inverse(nx.phi(p)) != p:
            bad += 1
    return bad == 0, f"failures={bad}/{b.tower_points}"


def _fiber(b):
    h, f = golden_density(), fiber_oracle()
    return h == f, "six pieces equal" if h == f else f"fiber={f}"


def _tower_slices(b):
    h, t = golden_density(), tower_density()
    return h == t, "six pieces equal" if h == t else f"tower={t}"


def _normalization(b):
    i1, i2 = golden_density().integral(), classical_density().integral()
    return i1 == 1 and i2 == 1, f"integrals={i1},{i2}"


def _transfer(b):
    rng = random.Random(b.seed + 3)
    h = golden_density()
    worst, done = ZERO, 0
    while done < b.transfer_points:
        x = QBeta(Fraction(rng.randrange(1, 2 << 20), 1 << 20))
        try:
            r = transfer_check(x, h)
        except BreakpointError:
            continue
        done += 1
        if r != 0:
            worst = r
    return worst == 0, f"residual={worst}"


def _branch(b):
    rows = branch_integrals(golden_density(), refine=4)
    bad = [r for r in rows if r[2] != r[3]]
    return not bad, f"mismatched pieces={len(bad)}"


def _classical(b):
    c = classical_density()
    lo, hi = float(c.values[0]), float(c.values[1])
    want_lo = (5 + 3 * 5 ** 0.5) / 10
    want_hi = (5 + 5 ** 0.5) / 10
    ok = (c.values[1] == 1 / (3 - BETA) and c.values[0] == BETA / (3 - BETA)
          and abs(lo - want_lo) < 1e-12 and abs(hi - want_hi) < 1e-12)
    return ok, f"max float gap={max(abs(lo - want_lo), abs(hi - want_hi)):.1e}"


def _birkhoff(b):
    res = birkhoff(iters=b.birkhoff_iters, seed=b.seed)
    err = res.max_abs_error
    return err < 0.01, f"max|obs-exp|={err:.2e}"


CHECKS = [
    Check("expansion-of-one", "greedy expansion of 1 is 02(002)...", "exact", _expansion_one),
    Check("expansion-of-inv-beta-cubed", "greedy expansion of 1/beta^3 is 00(002)...", "exact",
          _expansion_inv_beta3),
    Check("digit-set-support", "{0,2,3} is admissible and the support is [0,2)", "exact", _digit_set),
    Check("orbit-disjointness", "orbits of 1 and 1/beta^3 avoid the digit-3 cell", "exact",
          _orbit_disjoint),
    Check("full-concatenation", "concatenating full blocks gives a full block", "exact", _concat),
    Check("full-cylinder-mass", "lengths of minimal full cylinders sum to 2", "exact", _mass_D),
    Check("family-enumeration", "explicit D_n and B_n lists match exhaustive search", "exact",
          _families),
    Check("nonfull-images", "images of non-full minimal cylinders cycle [0,1/b),[0,1),[0,b)",
          "exact", _images),
    Check("rank-partition", "cylinders of each rank tile [0,2)", "exact", _partition),
    Check("subblock-example", "2000300002002000 splits as 200|0|300002002000", "exact", _subblocks),
    Check("rectangle-mass", "total rectangle area is 32-14b", "exact", _rect_mass),
    Check("tower-mass", "tower area is 78-46b = (32-14b)/b^2", "exact", _tower_mass),
    Check("return-pattern", "full-return levels are n=2 mod 3 (n>=2 for 2, n>=5 for 3)", "exact",
          _pattern),
    Check("factor-and-bijectivity", "projection intertwines the maps; inverse undoes step",
          "exact", _commute_biject),
    Check("bijectivity-other-side", "step undoes the inverse", "exact", _inverse_side),
    Check("tower-conjugacy", "phi conjugates the tower map to the rectangle map", "exact",
          _conjugacy),
    Check("density-fiber", "closed-form density equals the fibre-measure sum", "exact", _fiber),
    Check("density-tower", "closed-form density equals tower slice lengths", "exact",
          _tower_slices),
    Check("density-normalization", "densities integrate to 1", "exact", _normalization),
    Check("transfer-pointwise", "transfer operator fixes the density at sample points", "exact",
          _transfer),
    Check("transfer-branch-integrals", "preimage masses reproduce the density piecewise", "exact",
          _branch),
    Check("classical-parry", "golden classical density is 1/(3-b) and b/(3-b)", "exact",
          _classical),
    Check("birkhoff-occupation", "orbit frequencies match the invariant measure within 0.01",
          "simulation", _birkhoff),
]

SUITES = {
    "all": lambda c: True,
    "quick": lambda c: True,
    "exact": lambda c: c.kind == "exact",
    "simulation": lambda c: c.kind == "simulation",
}


def run_suite(suite: str = "all", seed: int = 0, budget: Budget | None = None) -> list[CheckResult]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    if budget is None:
        budget = Budget.quick(seed) if suite == "quick" else Budget(seed)
    out = []
    for check in CHECKS:
        if not SUITES[suite](check):
            continue
        t0 = time.perf_counter()
        try:
            ok, detail = check.func(budget)
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(check.id, check.claim, bool(ok), str(detail),
                               time.perf_counter() - t0))
    return out
