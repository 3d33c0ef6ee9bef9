from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone

from goldendd.estimators import BirkhoffDensityEstimator, GreedyDigitTransformer, InvariantDensity
from goldendd.qbeta import BETA, ONE, QBeta


def test_clone_and_params():
    for est in (GreedyDigitTransformer(n_digits=5), InvariantDensity("tower"),
                BirkhoffDensityEstimator(n_iter=10)):
        c = clone(est)
        assert c.get_params() == est.get_params()
    assert GreedyDigitTransformer().set_params(n_digits=3).n_digits == 3


def test_golden_digits():
    t = GreedyDigitTransformer(n_digits=8).fit()
    out = t.transform([ONE, 2 * BETA - 3])
    assert out.tolist() == [[0, 2, 0, 0, 2, 0, 0, 2], [0, 0, 0, 0, 2, 0, 0, 2]]
    assert t.support_ == (0, 2)


def test_golden_accepts_column_and_strings():
    t = GreedyDigitTransformer(n_digits=3)
    out = t.fit_transform(np.array([["3/2"], ["0"]], dtype=object))
    assert out.tolist() == [[2, 0, 0], [0, 0, 0]]


def test_classical_and_deleted():
    c = GreedyDigitTransformer(n_digits=4, system="classical", beta=2.0).fit()
    assert c.transform([0.75]).tolist() == [[1, 1, 0, 0]]
    d = GreedyDigitTransformer(n_digits=3, system="deleted", beta=float(BETA)).fit()
    assert d.transform([1.5]).tolist()[0][0] == 2.0


@pytest.mark.parametrize("kw", [dict(system="classical"), dict(system="nope"), dict(n_digits=-1),
                                dict(system="deleted", beta=3.5, digits=(0, 1, 4))])
def test_bad_configuration(kw):
    with pytest.raises(ValueError):
        GreedyDigitTransformer(**kw).fit()


def test_invariant_density_predict():
    est = InvariantDensity().fit()
    vals = est.predict([0.1, 1.9])
    norm = 16 - 7 * float(BETA)
    assert np.allclose(vals, [(1 + 2 * float(BETA)) / norm, 1 / norm])
    exact = est.predict([QBeta(Fraction(1, 10))], exact=True)
    assert exact[0] == (1 + 2 * BETA) / (16 - 7 * BETA)
    for m in ("fiber", "tower"):
        assert InvariantDensity(m).fit().density_ == est.density_
    with pytest.raises(ValueError):
        InvariantDensity("magic").fit()


def test_birkhoff_estimator():
    est = BirkhoffDensityEstimator(n_iter=100_000, random_state=2).fit()
    assert est.score() > -0.01
    true = InvariantDensity().fit().predict([0.05, 1.5])
    assert np.allclose(est.predict([0.05, 1.5]), true, atol=0.05)
    assert est.predict([2.5]).tolist() == [0.0]
    again = BirkhoffDensityEstimator(n_iter=100_000, random_state=2).fit()
    assert np.array_equal(again.frequencies_, est.frequencies_)


def test_transform_needs_fit():
    with pytest.raises(Exception):
        GreedyDigitTransformer().transform([ONE])
