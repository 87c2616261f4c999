import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tamecalc.errors import DomainError
from tamecalc.gmodel import (
    ComplexMonomial,
    RealMonomial,
    RealPolynomial,
    SeparableLinear,
    Sinh,
    evaluate,
    flat_m,
    gaussian_derivative_sup,
    gaussian_derivative_tensor,
    model_from_dict,
    partial_derivative,
    sigma_jl,
)

HOLO = [Sinh(), RealMonomial(J=3), RealPolynomial(coeffs=(0, 1, -0.5, 0.25))]
ALL = HOLO + [ComplexMonomial(H=2, K=1), ComplexMonomial(H=0, K=3), SeparableLinear()]


def test_flat_examples():
    rho = 0.8
    assert flat_m(Sinh(), 0, rho) == pytest.approx(math.sinh(rho) / rho, rel=1e-15)
    assert flat_m(Sinh(), 0, 0.0) == 1.0
    assert flat_m(ComplexMonomial(H=2, K=3), 0, rho) == pytest.approx(rho**4, rel=1e-15)
    assert flat_m(Sinh(), 2, rho) == 0.0


def test_sigma_examples():
    assert sigma_jl(Sinh(), 1, 0, 0.7) == pytest.approx(math.cosh(0.7))
    assert sigma_jl(Sinh(), 2, 0, 0.7) == pytest.approx(math.sinh(0.7))
    assert sigma_jl(ComplexMonomial(H=1, K=1), 2, 0, 0.3) == 2.0
    for m in HOLO + [ComplexMonomial(H=2, K=1)]:
        assert sigma_jl(m, 1, 1, 0.5) == 0.0
    assert sigma_jl(SeparableLinear(), 2, 0, 1.0) == 0.0


def test_evaluate_examples():
    assert evaluate(Sinh(), 0.0) == 0.0
    assert evaluate(ComplexMonomial(H=2, K=1), 1 + 1j) == pytest.approx(2 + 2j)
    x = np.array([[0.3], [-0.4]])
    assert evaluate(SeparableLinear(), np.array([2.0]), x)[0] == pytest.approx(2 * math.exp(-0.125))


def test_partial_examples():
    z = 0.3 - 0.7j
    assert partial_derivative(ComplexMonomial(H=2, K=1), 2, 0, z) == pytest.approx(2 * np.conj(z))
    assert partial_derivative(ComplexMonomial(H=2, K=1), 3, 0, z) == 0
    assert partial_derivative(Sinh(), 1, 0, 0.4) == pytest.approx(math.cosh(0.4))
    assert partial_derivative(ComplexMonomial(H=2, K=1), 1, 1, z) == pytest.approx(2 * z)


def test_partials_against_finite_differences():
    z0, h = 0.4 + 0.3j, 1e-5
    m = ComplexMonomial(H=2, K=2)
    # Wirtinger derivatives from real and imaginary directional differences
    fx = (m.evaluate(z0 + h) - m.evaluate(z0 - h)) / (2 * h)
    fy = (m.evaluate(z0 + 1j * h) - m.evaluate(z0 - 1j * h)) / (2 * h)
    assert m.partial_derivative(1, 0, z0) == pytest.approx(0.5 * (fx - 1j * fy), rel=1e-8)
    assert m.partial_derivative(0, 1, z0) == pytest.approx(0.5 * (fx + 1j * fy), rel=1e-8)
    p = RealPolynomial(coeffs=(0, 1, -0.5, 0.25))
    u = 0.6
    for h_ in range(4):
        num = (p.partial_derivative(h_, 0, u + h) - p.partial_derivative(h_, 0, u - h)) / (2 * h)
        assert p.partial_derivative(h_ + 1, 0, u) == pytest.approx(num, rel=1e-7, abs=1e-9)


def _disc(rho, n=40):
    r = np.linspace(0, rho, n)
    t = np.linspace(0, 2 * np.pi, 4 * n, endpoint=False)
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.kind)
@pytest.mark.parametrize("rho", [0.5, 1.0, 2.0])
def test_sampled_suprema_stay_below_sigma(model, rho):
    z = _disc(rho)
    if model.kind in ("real_monomial", "real_polynomial", "sinh"):
        z = np.concatenate([z, np.linspace(-rho, rho, 401)])
    for d in (1, 2):
        xs = np.stack(np.meshgrid(*[np.linspace(-3, 3, 13)] * d, indexing="ij")).reshape(d, -1)
        for j in range(1, 5):
            for l in range(0, 5 - j):
                bound = model.sigma_jl(j, l, rho, d)
                sampled = 0.0
                for h in range(j + 1):
                    best = 0.0
                    if model.x_independent:
                        vals = np.abs(model.partial_tensor(h, j - h, l, z, None, d))
                        best = float(np.max(vals.reshape(-1, z.size).sum(axis=0) ** 0.5)) if l else float(np.max(vals))
                    else:
                        for zz in (z[:: max(1, z.size // 50)]):
                            arr = model.partial_tensor(h, j - h, l, np.full(xs.shape[1], zz), xs)
                            nrm = np.sqrt(np.sum(np.abs(arr) ** 2, axis=tuple(range(l)))) if l else np.abs(arr)
                            best = max(best, float(np.max(nrm)))
                    assert best <= model.sigma_hkl(h, j - h, l, rho, d) * (1 + 1e-9) + 1e-15
                    sampled += math.comb(j, h) * best
                assert sampled <= bound * (1 + 1e-9) + 1e-15
        for mm in range(0, 4):
            if model.x_independent and mm > 0:
                continue
            zz = z[z != 0]
            if model.x_independent:
                q = np.abs(model.evaluate(zz) - model.evaluate(0 * zz)) / np.abs(zz)
            else:
                g = gaussian_derivative_tensor(mm, xs)
                q = np.sqrt(np.sum(np.abs(g) ** 2, axis=tuple(range(mm)))) if mm else np.abs(g)
            assert float(np.max(q)) <= model.flat(mm, rho, d) * (1 + 1e-9)


@pytest.mark.parametrize("model", ALL, ids=lambda m: m.kind)
def test_monotone_in_rho(model):
    grid = np.linspace(0, 3, 100)
    for j in range(1, 4):
        for l in range(0, 3):
            vals = [model.sigma_jl(j, l, r) for r in grid]
            assert all(a <= b * (1 + 1e-14) for a, b in zip(vals, vals[1:]))
    for m in range(0, 3):
        vals = [model.flat(m, r) for r in grid]
        assert all(a <= b * (1 + 1e-14) for a, b in zip(vals, vals[1:]))


def test_complex_monomial_closed_form_exact():
    for H in range(0, 6):
        for K in range(0, 6):
            if H + K == 0:
                continue
            m = ComplexMonomial(H=H, K=K)
            for j in range(1, H + K + 1):
                direct = sum(math.comb(j, h) * math.perm(H, h) * math.perm(K, j - h)
                             for h in range(j + 1) if h <= H and j - h <= K)
                assert m.sigma_j0_exact(j) == direct == math.perm(H + K, j)


def test_radius_and_domain_errors():
    m = Sinh(radius=1.0)
    with pytest.raises(DomainError):
        m.flat(0, 1.0)
    with pytest.raises(DomainError):
        m.sigma_jl(1, 0, 2.0)
    with pytest.raises(DomainError):
        evaluate(m, np.array([0.2, -1.5]))
    with pytest.raises(DomainError):
        RealMonomial(J=0)
    with pytest.raises(DomainError):
        ComplexMonomial(H=0, K=0)


def test_gaussian_derivative_tensor_matches_finite_differences():
    x = np.array([[0.3], [-0.8]])
    h = 1e-5
    g1 = gaussian_derivative_tensor(1, x)[:, 0]
    g2 = gaussian_derivative_tensor(2, x)[:, :, 0]
    for i in range(2):
        e = np.zeros((2, 1))
        e[i] = h
        fd = (gaussian_derivative_tensor(0, x + e) - gaussian_derivative_tensor(0, x - e))[0] / (2 * h)
        assert g1[i] == pytest.approx(fd, rel=1e-8)
        fd2 = (gaussian_derivative_tensor(1, x + e) - gaussian_derivative_tensor(1, x - e))[:, 0] / (2 * h)
        np.testing.assert_allclose(g2[:, i], fd2, rtol=1e-7)


@pytest.mark.parametrize("l,d", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (3, 2), (2, 3)])
def test_gaussian_sup_against_brute_force(l, d):
    ax = np.linspace(-5, 5, 201 if d < 3 else 61)
    pts = np.stack(np.meshgrid(*[ax] * d, indexing="ij")).reshape(d, -1)
    t = gaussian_derivative_tensor(l, pts)
    brute = float(np.max(np.sqrt(np.sum(t**2, axis=tuple(range(l))))))
    sup = gaussian_derivative_sup(l, d)
    assert brute <= sup * (1 + 1e-12)
    assert sup <= brute * (1 + 2e-3)


def test_gaussian_sup_closed_forms():
    assert gaussian_derivative_sup(0, 2) == 1.0
    assert gaussian_derivative_sup(1, 1) == pytest.approx(math.exp(-0.5), rel=1e-12)
    assert gaussian_derivative_sup(2, 2) == pytest.approx(math.sqrt(2), rel=1e-12)


def test_parse_models():
    assert model_from_dict({"kind": "complex_monomial", "H": 2, "K": 1}) == ComplexMonomial(H=2, K=1)
    assert model_from_dict({"kind": "sinh", "radius": 2.0}).radius == 2.0
    p = model_from_dict({"kind": "real_polynomial", "coeffs": [0, 1, 2]})
    assert p.coeffs == (0.0, 1.0, 2.0)
    for m in ALL:
        assert model_from_dict(m.to_dict()) == m
    for bad in [{"kind": "nope"}, {"kind": "sinh", "J": 3}, {"kind": "sinh", "radius": -1}]:
        with pytest.raises(DomainError):
            model_from_dict(bad)


@settings(max_examples=200, deadline=None)
@given(
    st.sampled_from(ALL),
    st.floats(0, 3),
    st.floats(0, 3),
    st.integers(1, 4),
    st.integers(0, 3),
)
def test_suprema_nondecreasing_property(model, r1, r2, j, l):
    lo, hi = sorted((r1, r2))
    assert model.sigma_jl(j, l, lo) <= model.sigma_jl(j, l, hi) * (1 + 1e-14)
    assert model.flat(l, lo) <= model.flat(l, hi) * (1 + 1e-14)
    if model.x_independent and l >= 1:
        assert model.sigma_jl(j, l, hi) == 0 and model.flat(l, hi) == 0
