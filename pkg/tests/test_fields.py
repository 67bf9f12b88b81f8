import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kdirac.algebra import MultiVector, basis_vector, e
from kdirac.fields import (
    AnalyticForm,
    CallableField,
    ConstantField,
    ExpPoly,
    codifferential,
    codifferential_star,
    d,
    delta,
    differential,
    dirac_operator,
    finite_difference_partial,
    point,
    random_analytic_form,
    random_point,
    scalar_field,
)
from kdirac.generators import default_generators
from kdirac.scalars import FLOAT

ONE = MultiVector.scalar(1.0 + 0j)
X = np.array([0.3, -0.7, 1.1, 0.25])
seeds = st.integers(0, 2**32 - 1)


def x0_e0():
    return AnalyticForm({1: ExpPoly.coordinate(0)})


def test_point_validation():
    with pytest.raises(ValueError):
        point([0, 0, 0])
    with pytest.raises(ValueError):
        point([0, 0, math.nan, 0])


def test_exppoly_derivatives():
    f = ExpPoly.monomial([2, 1, 0, 0], 3.0) * ExpPoly.exp([0.5j, 0, 0, 0])
    x = X
    val = 3 * x[0] ** 2 * x[1] * np.exp(0.5j * x[0])
    d0 = 3 * x[1] * (2 * x[0] + 0.5j * x[0] ** 2) * np.exp(0.5j * x[0])
    assert abs(f(x) - val) < 1e-14
    assert abs(f.partial(0)(x) - d0) < 1e-14
    assert abs(f.partial(2)(x)) == 0


def test_trig_constructors():
    k = [0.4, 0.1, -0.3, 0.2]
    c, s = ExpPoly.cos(k, 0.3), ExpPoly.sin(k, 0.3)
    arg = float(np.dot(k, X)) + 0.3
    assert abs(c(X) - math.cos(arg)) < 1e-14
    assert abs(s(X) - math.sin(arg)) < 1e-14
    assert abs(c.partial(2)(X) + k[2] * math.sin(arg)) < 1e-14


def test_differential_examples():
    assert (differential(scalar_field(ExpPoly.coordinate(0)), X) - basis_vector(0, 1.0 + 0j)).norm() == 0
    assert differential(x0_e0(), X).norm() == 0
    assert differential(ConstantField(ONE), X).norm() == 0


def test_codifferential_examples():
    assert (codifferential(x0_e0(), X) + ONE).norm() == 0
    assert (codifferential_star(x0_e0(), X) + ONE).norm() == 0
    assert codifferential(scalar_field(ExpPoly.coordinate(2)), X).norm() == 0
    assert codifferential(ConstantField(ONE), X).norm() == 0


def test_dirac_operator_examples():
    assert (dirac_operator(x0_e0(), X) - ONE).norm() == 0
    assert dirac_operator(ConstantField(ONE), X).norm() == 0
    m = 1.7
    I = default_generators(FLOAT).I
    F = AnalyticForm.from_multivector(ONE, ExpPoly.cos([m, 0, 0, 0])) + AnalyticForm.from_multivector(
        -I, ExpPoly.sin([m, 0, 0, 0])
    )
    c, s = math.cos(m * X[0]), math.sin(m * X[0])
    expected = basis_vector(0, 1.0 + 0j) * (ONE * (-m * s) - I * (m * c))
    assert (dirac_operator(F, X) - expected).norm() < 1e-14


def test_finite_difference_examples():
    lin = scalar_field(ExpPoly.coordinate(1))
    for h in (1e-1, 1e-3):
        assert abs(finite_difference_partial(lin, 1, X, h).coeffs[0] - 1) < 1e-12
    sq = scalar_field(ExpPoly.monomial([2, 0, 0, 0]))
    assert abs(finite_difference_partial(sq, 0, [1, 0, 0, 0], 1e-3).coeffs[0] - 2) < 1e-6
    assert finite_difference_partial(lin, 2, X).norm() == 0
    with pytest.raises(ValueError):
        finite_difference_partial(lin, 0, X, 0.0)


def test_callable_field_falls_back_to_fd():
    f = CallableField(lambda x: MultiVector.scalar(complex(math.sin(x[0]))))
    assert f.kind == "finite-difference"
    assert abs(f.partial(0)(X).coeffs[0] - math.cos(X[0])) < 1e-6


@given(seeds)
def test_operator_identity_and_nilpotency(seed):
    rng = np.random.default_rng(seed)
    F = random_analytic_form(rng)
    x = random_point(rng)
    assert (dirac_operator(F, x) - (differential(F, x) - codifferential(F, x))).norm() <= 1e-9
    assert differential(d(F), x).norm() <= 1e-9
    assert codifferential(delta(F), x).norm() <= 1e-9
    assert (codifferential(F, x) - codifferential_star(F, x)).norm() <= 1e-9


@given(seeds, st.integers(0, 4))
def test_grade_discipline(seed, k):
    rng = np.random.default_rng(seed)
    F = random_analytic_form(rng, grades=(k,))
    x = random_point(rng)
    assert differential(F, x).grades(1e-12) <= ({k + 1} if k < 4 else set())
    assert codifferential(F, x).grades(1e-12) <= ({k - 1} if k > 0 else set())


@given(seeds)
def test_fd_agrees_with_analytic(seed):
    rng = np.random.default_rng(seed)
    F = random_analytic_form(rng)
    x = random_point(rng)
    for mu in range(4):
        exact = F.partial(mu)(x)
        approx = finite_difference_partial(F, mu, x, 1e-3)
        assert (approx - exact).norm() <= 1e-5 * max(1.0, exact.norm())


@given(seeds)
def test_mixed_partials_commute(seed):
    rng = np.random.default_rng(seed)
    F = random_analytic_form(rng)
    x = random_point(rng)
    for mu in range(4):
        for nu in range(mu):
            assert (F.partial(mu).partial(nu)(x) - F.partial(nu).partial(mu)(x)).norm() <= 1e-12
