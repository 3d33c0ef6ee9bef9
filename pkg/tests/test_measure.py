import random
from fractions import Fraction

import numpy as np
import pytest

from goldendd import measure as ms
from goldendd.measure import BreakpointError, PiecewiseDensity
from goldendd.qbeta import BETA, ONE, ZERO, QBeta

IB = BETA - 1
SQ5 = 5 ** 0.5
B = (1 + SQ5) / 2


def test_closed_form_values():
    h = ms.golden_density()
    want = [1 + 2 * BETA, 2 + BETA, 2 * BETA, BETA ** 2, BETA, ONE]
    assert h.values == tuple(v / (16 - 7 * BETA) for v in want)
    assert h.breakpoints == (ZERO, IB ** 3, IB ** 2, IB, ONE, BETA, QBeta(2))


def test_closed_form_floats():
    h = ms.golden_density()
    norm = 16 - 7 * B
    for got, want in zip(h.values, [1 + 2 * B, 2 + B, 2 * B, B * B, B, 1.0]):
        assert abs(float(got) - want / norm) < 1e-12


def test_density_is_monotone_and_integrates_to_one():
    h = ms.golden_density()
    assert all(a > b for a, b in zip(h.values, h.values[1:]))
    assert h.integral() == 1


def test_three_routes_agree():
    h = ms.golden_density()
    assert ms.fiber_oracle() == h
    assert ms.tower_density() == h


def test_evaluation_outside_domain_is_zero():
    h = ms.golden_density()
    assert h(QBeta(2)) == 0
    assert h(QBeta(-1)) == 0
    assert h(ZERO) == h.values[0]


def test_partial_integrals():
    h = ms.golden_density()
    assert h.integrate(ZERO, IB ** 3) == h.values[0] * IB ** 3
    assert h.integrate(ONE, ONE) == 0
    assert h.integrate(ZERO, ONE) + h.integrate(ONE, QBeta(2)) == 1


def test_piecewise_validation():
    with pytest.raises(ValueError):
        PiecewiseDensity((0, 1), (1, 2))
    with pytest.raises(ValueError):
        PiecewiseDensity((0, 1, 1), (1, 2))


@pytest.mark.parametrize("x", [Fraction(3, 2), Fraction(1, 2)])
def test_transfer_examples(x):
    assert ms.transfer_check(QBeta(x)) == 0


def test_transfer_detects_a_wrong_density():
    flat = PiecewiseDensity((ZERO, QBeta(2)), (QBeta(Fraction(1, 2)),))
    r = ms.transfer_check(QBeta(Fraction(3, 2)), flat)
    assert r != 0
    # only the digit-0 branch reaches 3/2
    assert r == Fraction(1, 2) * IB - Fraction(1, 2)


def test_transfer_random_points():
    rng = random.Random(5)
    done = 0
    while done < 300:
        x = QBeta(Fraction(rng.randrange(1, 1 << 21), 1 << 20))
        try:
            assert ms.transfer_check(x) == 0
        except BreakpointError:
            continue
        done += 1


def test_transfer_rejects_breakpoints_and_outside():
    with pytest.raises(BreakpointError):
        ms.transfer_check(ONE)
    with pytest.raises(ValueError):
        ms.transfer_check(QBeta(3))


@pytest.mark.parametrize("refine", [1, 3])
def test_branch_integrals(refine):
    rows = ms.branch_integrals(refine=refine)
    assert len(rows) == 6 * refine
    assert all(value == rec for _, _, value, rec in rows)


def test_classical_golden():
    c = ms.classical_density()
    assert c.breakpoints == (ZERO, IB, ONE)
    assert c.values == (BETA / (3 - BETA), 1 / (3 - BETA))
    assert abs(float(c.values[0]) - (5 + 3 * SQ5) / 10) < 1e-12
    assert abs(float(c.values[1]) - (5 + SQ5) / 10) < 1e-12
    assert c.integral() == 1


def test_classical_golden_is_invariant():
    c = ms.classical_density()
    for x in (Fraction(1, 3), Fraction(1, 7), Fraction(9, 10)):
        x = QBeta(x)
        pre = [(x + d) * IB for d in (0, 1) if (x + d) * IB < 1]
        assert sum((c(y) for y in pre), ZERO) * IB == c(x)


def test_classical_single_term_is_uniform():
    c = ms.classical_density(truncation=1)
    assert c.values == (ONE,)


def test_classical_integer_base_is_uniform():
    c = ms.classical_density(3.0)
    assert c.breakpoints == (0.0, 1.0) and c.values == (1.0,)


def test_classical_float_base():
    c = ms.classical_density(2.5, truncation=80)
    assert abs(c.integral() - 1) < 1e-12
    assert all(v > 0 for v in c.values)


def test_classical_rejects_bad_input():
    with pytest.raises(ValueError):
        ms.classical_density(0.5)
    with pytest.raises(ValueError):
        ms.classical_density(truncation=0)


def test_bin_edges():
    assert ms.bin_edges() == list(ms.golden_density().breakpoints)
    e = ms.bin_edges("uniform", refine=2)
    assert len(e) == 13 and e[0] == 0 and e[-1] == 2
    with pytest.raises(ValueError):
        ms.bin_edges("weird")
    with pytest.raises(ValueError):
        ms.bin_edges(refine=0)


def test_birkhoff_close_to_measure():
    res = ms.birkhoff(iters=200_000, seed=1)
    assert res.max_abs_error < 0.01
    assert res.counts.sum() == 200_000
    assert abs(sum(res.expected) - 1) < 1e-12


def test_birkhoff_deterministic():
    a = ms.birkhoff(iters=20_000, seed=3, shards=4)
    b = ms.birkhoff(iters=20_000, seed=3, shards=4)
    assert np.array_equal(a.counts, b.counts) and a.starts == b.starts
    assert len(a.starts) == 4 and a.counts.sum() == 20_000


def test_birkhoff_seed_matters():
    a = ms.birkhoff(iters=20_000, seed=3)
    b = ms.birkhoff(iters=20_000, seed=4)
    assert not np.array_equal(a.counts, b.counts)


def test_birkhoff_zero_iterations():
    res = ms.birkhoff(iters=0)
    assert res.rows() == [] and res.max_abs_error == 0.0


def test_birkhoff_start_and_errors():
    res = ms.birkhoff(start=0.3, iters=1000)
    assert res.starts == [0.3]
    with pytest.raises(ValueError):
        ms.birkhoff(iters=-1)
    with pytest.raises(ValueError):
        ms.birkhoff(shards=0, iters=10)
    with pytest.raises(ValueError):
        ms.birkhoff(start=2.5, iters=10)


def test_float_orbit_stays_in_domain():
    pts = ms._float_orbit(0.123, 50_000)
    assert pts.min() >= 0 and pts.max() < 2
