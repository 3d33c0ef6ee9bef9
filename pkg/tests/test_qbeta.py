from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from goldendd.qbeta import BETA, ONE, ZERO, QBeta, as_qbeta, compare, parse_qbeta, render, to_float

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
elements = st.builds(QBeta, rationals, rationals)
nonzero = elements.filter(bool)


def test_beta_squared():
    assert BETA * BETA == 1 + BETA


def test_inverse_of_beta():
    assert ONE / BETA == QBeta(-1, 1)


def test_inverse_beta_cubed_times_beta_cubed():
    # (-3 + 2b)(1 + 2b) = -3 - 6b + 2b + 4b^2 = -3 - 4b + 4b + 4 = 1
    assert (2 * BETA - 3) * QBeta(1, 2) == ONE
    assert BETA ** 3 == QBeta(1, 2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        BETA / ZERO
    with pytest.raises(ZeroDivisionError):
        BETA / 0


def test_compare_examples():
    assert compare(2 * BETA - 3, 0) == 1
    assert compare(BETA, BETA) == 0
    a, b = 3 - BETA, 2 * BETA - 2
    with mpmath.workdps(60):
        phi = (1 + mpmath.sqrt(5)) / 2
        assert (3 - phi) > (2 * phi - 2)
    assert compare(a, b) == 1
    assert a - b == 5 - 3 * BETA


def test_to_float_examples():
    assert abs(to_float(BETA) - 1.6180339887498949) < 1e-12
    assert abs(to_float(16 - 7 * BETA) - 4.6737620787507) < 1e-12
    assert to_float(ZERO) == 0.0
    with pytest.raises(ValueError):
        to_float(BETA, 32)


def test_to_float_high_precision():
    with mpmath.workprec(300):
        ref = (1 + mpmath.sqrt(5)) / 2 * 7 - mpmath.mpf(3) / 11
        got = to_float(7 * BETA - Fraction(3, 11), 256)
        assert abs(got - ref) <= abs(ref) * mpmath.mpf(2) ** (1 - 256)


def test_canonical_form_and_hash():
    x = QBeta(Fraction(2, 4), Fraction(-6, 8))
    y = QBeta(Fraction(1, 2), Fraction(-3, 4))
    assert x == y and hash(x) == hash(y)
    assert x.a == Fraction(1, 2) and x.b == Fraction(-3, 4)
    assert len({x, y, QBeta(1)}) == 2


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x


@given(nonzero)
def test_multiplicative_inverse(x):
    assert x * x.inverse() == ONE
    assert x / x == ONE


@given(elements, elements)
def test_conjugation_is_ring_homomorphism(x, y):
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert BETA.conjugate() == 1 - BETA


@given(elements)
def test_record_round_trip(x):
    assert QBeta.from_record(x.to_record()) == x


@given(elements)
def test_parse_round_trip(x):
    assert parse_qbeta(str(x)) == x


@pytest.mark.parametrize("text,value", [
    ("3/2", QBeta(Fraction(3, 2))), ("2b-3", 2 * BETA - 3), ("-1+beta", BETA - 1),
    ("b", BETA), ("0.5", QBeta(Fraction(1, 2))),
])
def test_parse(text, value):
    assert parse_qbeta(text) == value


@pytest.mark.parametrize("text", ["", "b2", "x", "3b4", "--1"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_qbeta(text)


def test_compare_agrees_with_high_precision(rng):
    # 10^4 random pairs; skip those whose real gap is below 1e-20
    checked = 0
    with mpmath.workprec(128):
        phi = (1 + mpmath.sqrt(5)) / 2
        while checked < 10_000:
            coeffs = [Fraction(rng.randint(-10 ** 6, 10 ** 6), rng.randint(1, 1000)) for _ in range(4)]
            x, y = QBeta(coeffs[0], coeffs[1]), QBeta(coeffs[2], coeffs[3])
            fx = mpmath.mpf(coeffs[0].numerator) / coeffs[0].denominator + phi * coeffs[1].numerator / coeffs[1].denominator
            fy = mpmath.mpf(coeffs[2].numerator) / coeffs[2].denominator + phi * coeffs[3].numerator / coeffs[3].denominator
            if abs(fx - fy) <= mpmath.mpf("1e-20"):
                continue
            assert compare(x, y) == (1 if fx > fy else -1)
            checked += 1


def test_compare_near_misses():
    # Fibonacci ratios approach beta from alternating sides
    a, b = 1, 1
    for k in range(2, 60):
        a, b = b, a + b
        q = QBeta(Fraction(b, a))
        assert (q > BETA) == (k % 2 == 0)


def test_as_qbeta_float_is_exact():
    assert as_qbeta(0.1) == QBeta(Fraction(0.1))
    with pytest.raises(TypeError):
        as_qbeta(object())


def test_render_fields():
    rec = render(16 - 7 * BETA, 128)
    assert (rec["a_num"], rec["b_num"], rec["precision_bits"]) == (16, -7, 128)
    assert rec["decimal"].startswith("4.67376207875073606256")
