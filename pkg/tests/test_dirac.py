import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kdirac.algebra import MultiVector, basis_vector, e, random_multivector, star_conj
from kdirac.dirac import (
    Frame,
    OddContaminationWarning,
    PlaneWaveSpec,
    QEDConfig,
    boosted_wave,
    charge_conservation_residual,
    column_from_even,
    current,
    dirac_residual,
    equivalence_check,
    even_field,
    even_from_column,
    exp_lambda_I,
    gauge_lambda,
    gauge_transform,
    lagrangian,
    maxwell_residuals,
    rest_frame_wave,
    tensor_residual,
    wave_from_json,
)
from kdirac.fields import (
    AnalyticForm,
    AnalyticSpinor,
    ConstantField,
    ExpPoly,
    random_analytic_form,
    random_exppoly,
    random_point,
    scalar_field,
)
from kdirac.generators import default_generators
from kdirac.scalars import FLOAT
from kdirac.spin import boost, random_spin

ONE = MultiVector.scalar(1.0 + 0j)
X = np.array([0.4, -0.2, 0.9, 1.3])
seeds = st.integers(0, 2**32 - 1)


@pytest.fixture(scope="module")
def fr():
    return Frame(default_generators(FLOAT))


def rest_frame_even(m, fr):
    """cos(m x^0) - sin(m x^0) I."""
    return AnalyticForm.from_multivector(ONE, ExpPoly.cos([m, 0, 0, 0])) + AnalyticForm.from_multivector(
        -fr.gen.I, ExpPoly.sin([m, 0, 0, 0])
    )


def test_config_validation():
    with pytest.raises(ValueError):
        QEDConfig(m=-1)
    with pytest.raises(ValueError):
        QEDConfig(tolerance=0)
    assert QEDConfig().alpha == 1.0


def test_tensor_residual_examples(fr):
    m = 1.3
    cfg = QEDConfig(m=m)
    assert tensor_residual(rest_frame_even(m, fr), None, cfg, fr, X).norm() <= 1e-10
    const = ConstantField(ONE)
    assert (tensor_residual(const, None, cfg, fr, X) - fr.HI * m).norm() == 0
    assert tensor_residual(const, None, QEDConfig(m=0.0), fr, X).norm() == 0


def test_odd_contamination_warns(fr):
    with pytest.warns(OddContaminationWarning):
        tensor_residual(ConstantField(basis_vector(1, 1.0 + 0j)), None, QEDConfig(), fr, X)


def test_dirac_residual_examples(fr):
    m = 0.8
    cfg = QEDConfig(m=m)
    psi = AnalyticSpinor([ExpPoly.exp([-1j * m, 0, 0, 0]), ExpPoly(), ExpPoly(), ExpPoly()])
    assert np.abs(dirac_residual(psi, None, cfg, fr.gammas, X)).max() <= 1e-15
    const = AnalyticSpinor([ExpPoly.constant(1), ExpPoly(), ExpPoly(), ExpPoly()])
    assert np.allclose(dirac_residual(const, None, cfg, fr.gammas, X), [1j * m, 0, 0, 0], atol=0)
    zero = AnalyticSpinor([ExpPoly()] * 4)
    assert np.abs(dirac_residual(zero, None, cfg, fr.gammas, X)).max() == 0


def test_correspondence_examples(fr):
    g = fr.gen
    assert np.allclose(column_from_even(ONE, fr), [1, 0, 0, 0])
    assert np.allclose(column_from_even(g.I, fr), [1j, 0, 0, 0])
    assert np.allclose(column_from_even(g.K, fr), [0, 1, 0, 0])
    assert (even_from_column([1, 0, 0, 0], fr) - ONE).norm() == 0
    assert (even_from_column([1j, 0, 0, 0], fr) - g.I).norm() == 0


def test_even_field_of_rest_wave(fr):
    m = 1.1
    Psi = even_field(rest_frame_wave(1, m).column_field(), fr)
    assert (Psi(X) - rest_frame_even(m, fr)(X)).norm() <= 1e-15
    assert (Psi.partial(0)(X) - rest_frame_even(m, fr).partial(0)(X)).norm() <= 1e-15


@given(seeds)
def test_correspondence_inverse(fr, seed):
    rng = np.random.default_rng(seed)
    value = random_multivector(rng, FLOAT, (0, 2, 4), real=True)
    assert (even_from_column(column_from_even(value, fr), fr) - value).norm() <= 1e-12
    col = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert np.abs(column_from_even(even_from_column(col, fr), fr) - col).max() <= 1e-12


@given(seeds)
def test_intertwining_on_random_fields(fr, seed):
    rng = np.random.default_rng(seed)
    Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
    A = random_analytic_form(rng, grades=(1,), real=True)
    rep = equivalence_check(Psi, A, QEDConfig(m=0.9), fr, [random_point(rng) for _ in range(2)])
    assert rep.max_intertwining_error <= 1e-9
    assert rep.passed


def test_equivalence_examples(fr):
    cfg = QEDConfig(m=1.0)
    pts = [X, -X]
    for branch in (1, 2, 3, 4):
        psi = rest_frame_wave(branch, 1.0).column_field()
        rep = equivalence_check(even_field(psi, fr), None, cfg, fr, pts, psi=psi)
        assert rep.passed and rep.max_tensor_norm <= 1e-10 and rep.max_dirac_norm <= 1e-10
    rep = equivalence_check(ConstantField(ONE), None, QEDConfig(m=0.0), fr, pts)
    assert rep.max_tensor_norm == 0 and rep.max_dirac_norm == 0


def test_nonsolution_residuals_are_proportional(fr):
    rng = np.random.default_rng(8)
    Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
    rep = equivalence_check(Psi, None, QEDConfig(m=1.0), fr, [X])
    p = rep.points[0]
    assert p.tensor_norm > 0.1 and p.dirac_norm > 0.1
    assert p.intertwining_error <= 1e-9


def test_plane_wave_dispersion():
    with pytest.raises(ValueError):
        PlaneWaveSpec((1, 0, 0, 0), (1.0, 0.5, 0, 0), 1.0)
    with pytest.raises(ValueError):
        rest_frame_wave(5, 1.0)


@pytest.mark.parametrize("seed", range(5))
def test_boosted_waves_solve(fr, seed):
    rng = np.random.default_rng(seed)
    s = random_spin(rng)
    cfg = QEDConfig(m=1.5)
    for branch in (1, 2, 3, 4):
        wave = boosted_wave(branch, 1.5, s, fr)
        psi = wave.column_field()
        assert np.abs(dirac_residual(psi, None, cfg, fr.gammas, X)).max() <= 1e-10
        assert tensor_residual(even_field(psi, fr), None, cfg, fr, X).norm() <= 1e-10


def test_current_examples(fr):
    assert (current(ONE, fr) - basis_vector(0, 1.0 + 0j)).norm() == 0
    J = current(rest_frame_even(2.0, fr)(X), fr)
    assert (J - basis_vector(0, 1.0 + 0j)).norm() <= 1e-15
    s = boost((0.3, 1.0, -0.2), 0.8)
    J = current(s, fr)
    assert J.grades(1e-12) == {1}
    assert abs((J * J).coeffs[0] - 1) <= 1e-12


@given(seeds)
def test_current_real_grade_one(fr, seed):
    rng = np.random.default_rng(seed)
    J = current(random_multivector(rng, FLOAT, (0, 2, 4), real=True), fr)
    assert (J - J.grade(1)).norm() <= 1e-12 and J.is_real(1e-12)


def test_charge_conservation(fr):
    cfg = QEDConfig(m=1.0)
    Psi = even_field(boosted_wave(3, 1.0, boost((1, 1, 0), 0.6), fr).column_field(), fr)
    assert charge_conservation_residual(Psi, None, cfg, fr, X) <= 1e-7
    assert charge_conservation_residual(ConstantField(ONE), None, cfg, fr, X) == 0
    rng = np.random.default_rng(2)
    Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
    assert charge_conservation_residual(Psi, None, cfg, fr, X) > 1e-3


def test_maxwell_examples(fr):
    zero = ConstantField(MultiVector())
    Psi = ConstantField(ONE)
    r1, r2 = maxwell_residuals(zero, zero, Psi, QEDConfig(alpha=0.0), fr, X)
    assert r1.norm() == 0 and r2.norm() == 0
    _, r2 = maxwell_residuals(zero, zero, Psi, QEDConfig(alpha=2.0), fr, X)
    assert (r2 + basis_vector(0, 2.0 + 0j)).norm() == 0
    A = AnalyticForm({1: ExpPoly.coordinate(1)})
    F = ConstantField(e(0, 1, value=-1.0 + 0j))
    r1, _ = maxwell_residuals(A, F, Psi, QEDConfig(), fr, X)
    assert r1.norm() == 0


def test_gauge_examples(fr):
    Psi = rest_frame_even(1.0, fr)
    P0, A0 = gauge_transform(Psi, None, gauge_lambda("zero"), fr)
    assert (P0(X) - Psi(X)).norm() == 0 and A0(X).norm() == 0
    Pc, Ac = gauge_transform(Psi, None, gauge_lambda("constant", 0.4), fr)
    assert (Pc(X) - Psi(X) * exp_lambda_I(0.4, fr.gen.I)).norm() <= 1e-15 and Ac(X).norm() == 0
    Pl, Al = gauge_transform(Psi, None, gauge_lambda("linear", 0.3, 1), fr)
    assert (Al(X) + e(1, value=0.3 + 0j)).norm() <= 1e-15
    assert tensor_residual(Pl, Al, QEDConfig(m=1.0), fr, X).norm() <= 1e-9
    with pytest.raises(ValueError):
        gauge_lambda("quadratic")


@given(seeds)
def test_gauge_covariance(fr, seed):
    rng = np.random.default_rng(seed)
    Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
    A = random_analytic_form(rng, grades=(1,), real=True)
    lam = scalar_field(random_exppoly(rng, real=True))
    Psi2, A2 = gauge_transform(Psi, A, lam, fr)
    x = random_point(rng)
    cfg = QEDConfig(m=0.7)
    phase = exp_lambda_I(lam(x).coeffs[0], fr.gen.I)
    lhs = tensor_residual(Psi2, A2, cfg, fr, x)
    assert (lhs - tensor_residual(Psi, A, cfg, fr, x) * phase).norm() <= 1e-9
    assert (current(Psi2(x), fr) - current(Psi(x), fr)).norm() <= 1e-12


def test_exp_lambda_i_identities(fr):
    I = fr.gen.I
    u = exp_lambda_I(0.9, I)
    assert (star_conj(u) - exp_lambda_I(-0.9, I)).norm() <= 1e-15
    assert (u * exp_lambda_I(-0.9, I) - ONE).norm() <= 1e-15


def test_lagrangian_values(fr):
    # -1/2 from the exact expansion 1/4 Tr(H(-H - H)) with Q = -H
    assert lagrangian(ConstantField(ONE), None, QEDConfig(m=1.0), fr, X) == pytest.approx(-0.5, abs=1e-15)
    assert lagrangian(ConstantField(MultiVector()), None, QEDConfig(), fr, X) == 0
    for branch in (1, 2, 3, 4):
        Psi = even_field(rest_frame_wave(branch, 1.0).column_field(), fr)
        assert abs(lagrangian(Psi, None, QEDConfig(m=1.0), fr, X)) <= 1e-9


@given(seeds)
def test_lagrangian_is_real(fr, seed):
    rng = np.random.default_rng(seed)
    Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
    A = random_analytic_form(rng, grades=(1,), real=True)
    assert abs(lagrangian(Psi, A, QEDConfig(m=1.2), fr, random_point(rng)).imag) <= 1e-12


def test_wave_from_json(fr):
    wave, lam = wave_from_json({"mass": 2, "branch": 3, "rapidity": 0.5, "direction": [0, 0, 1], "gauge": {"kind": "constant", "c": 1.0}}, fr)
    assert wave.mass == 2.0
    assert wave.momentum[0] == pytest.approx(-2 * math.cosh(0.5))
    assert lam(X).coeffs[0] == 1.0
