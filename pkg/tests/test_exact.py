from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tamecalc.exact import QI, Polynomial, grad_poly_tensor, random_polynomial, substitute

seeds = st.integers(0, 2**32 - 1)


def test_qi_arithmetic():
    a, b = QI(1, 2), QI(Fraction(1, 2), -1)
    assert a + b == QI(Fraction(3, 2), 1)
    assert a * b == QI(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert a.conjugate() == QI(1, -2)
    assert complex(a) == 1 + 2j
    assert a**3 == a * a * a
    with pytest.raises(TypeError):
        QI.lift(1.0 + 2j)


def test_polynomial_diff_and_eval():
    x, y = Polynomial.var(2, 0), Polynomial.var(2, 1)
    p = x * x * y + 3 * y
    assert p.diff(0) == 2 * x * y
    assert p.diff(1) == x * x + 3
    assert p((2.0, 5.0)) == pytest.approx(35.0)
    assert p.degree() == 3


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 3))
def test_substitution_agrees_with_evaluation(seed, d):
    rng = np.random.default_rng(seed)
    G = random_polynomial(rng, 2, 3, 4, complex_coeffs=True)
    f = random_polynomial(rng, d, 2, 3, complex_coeffs=True)
    comp = substitute(G, [f, f.conjugate()])
    x = rng.standard_normal(d)
    fx = f(x)
    assert comp(x) == pytest.approx(G((fx, np.conj(fx))), rel=1e-10, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 3))
def test_mixed_partials_commute(seed, d):
    rng = np.random.default_rng(seed)
    p = random_polynomial(rng, d, 4, 6, complex_coeffs=True)
    g2 = grad_poly_tensor(grad_poly_tensor(np.array(p, dtype=object).reshape(())))
    for i in range(d):
        for j in range(d):
            assert g2[i, j] == g2[j, i]


def test_conjugate_coefficients():
    p = Polynomial(1, {(1,): QI(1, 1), (0,): QI(0, 2)})
    assert p.conjugate() == Polynomial(1, {(1,): QI(1, -1), (0,): QI(0, -2)})
