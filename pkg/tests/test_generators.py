from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from kdirac.algebra import GRADE, MultiVector, e, volume_form
from kdirac.generators import (
    BASIS16_GRADES,
    GeneratorSet,
    InvalidGenerators,
    NotInIdealError,
    basis16,
    default_generators,
    even_map_real_rank,
    form_rank,
    from_components,
    ideal_components,
    ideal_dimension,
    idempotent,
    inner,
    solve_ideal_equation,
    validate_generators,
)
from kdirac.oracles import rational_spin
from kdirac.scalars import EXACT, FLOAT, QComplex

from oracles import matrix_image
from strategies import exact_multivectors

ONE = QComplex(1)
I_UNIT = QComplex(0, 1)
Q = Fraction(1, 4)


def E(*idx, c=1):
    return e(*idx, value=QComplex(c))


@pytest.fixture(scope="module")
def basis():
    return idempotent(default_generators())


def test_default_generators():
    g = default_generators()
    assert g.H == E(0)
    assert g.I == -E(1, 2)
    assert g.K == -E(1, 3)
    assert g.ell == volume_form(ONE)


def test_validate_examples():
    assert validate_generators(E(0), -E(1, 2), -E(1, 3)).passed
    bad = validate_generators(E(1), -E(1, 2), -E(1, 3))
    assert "H^2 = 1" in bad.failed()


def test_second_spatial_pair_is_valid():
    # I = -e12 and K = -e23 anticommute: they share exactly one index
    report = validate_generators(E(0), -E(1, 2), -E(2, 3))
    assert report.passed
    i_mat, k_mat = matrix_image(-E(1, 2)), matrix_image(-E(2, 3))
    assert np.allclose(i_mat @ k_mat + k_mat @ i_mat, 0)


def test_from_triple_rejects_invalid():
    with pytest.raises(InvalidGenerators) as info:
        GeneratorSet.from_triple(E(1), -E(1, 2), -E(1, 3))
    assert "H^2 = 1" in info.value.report.failed()


def test_wrong_grade_rejected():
    report = validate_generators(E(0) + E(1, 2), -E(1, 2), -E(1, 3))
    assert "H in grade 1" in report.failed()


def test_idempotent_expansion(basis):
    # frozen from the exact expansion of 1/4 (1 + e0)(1 + i e12)
    expected = MultiVector.from_dict({0: QComplex(Q), 1: QComplex(Q), 6: QComplex(0, Q), 7: QComplex(0, Q)})
    assert basis.t == expected


def test_idempotent_relations(basis):
    t, H, I = basis.t, basis.gen.H, basis.gen.I
    assert t * t == t
    assert H * t == t
    assert I * t == t * I_UNIT


def test_f_family(basis):
    g = basis.gen
    assert basis.F == (MultiVector.scalar(ONE), g.K, -(g.I * g.ell), -(g.K * g.I * g.ell))
    assert all(tk == f * basis.t for tk, f in zip(basis.tk, basis.F))


def test_orthonormal(basis):
    H = basis.gen.H
    for k, tk in enumerate(basis.tk):
        for n, tn in enumerate(basis.tk):
            assert inner(tk, tn, H) == (1 if k == n else 0)
    assert inner(basis.tk[2] * I_UNIT, basis.tk[2], H) == I_UNIT


def test_basis16(basis):
    forms = basis16(basis.gen)
    assert form_rank(forms) == 16
    for f, k in zip(forms, BASIS16_GRADES):
        assert f.grades() == {k}
    assert tuple(sorted(BASIS16_GRADES)) == tuple(sorted(GRADE))


def test_dimensions(basis):
    assert ideal_dimension(basis) == 4
    assert even_map_real_rank(basis) == 8


def test_components_examples(basis):
    assert ideal_components(basis.t, basis) == [1, 0, 0, 0]
    phi = basis.tk[1] * QComplex(2) + basis.tk[3] * I_UNIT
    assert ideal_components(phi, basis) == [0, 2, 0, I_UNIT]
    with pytest.raises(NotInIdealError):
        ideal_components(E(1), basis)


def test_solve_examples(basis):
    g = basis.gen
    assert solve_ideal_equation(basis.t, basis) == MultiVector.scalar(ONE)
    assert solve_ideal_equation(basis.t * I_UNIT, basis) == g.I
    assert solve_ideal_equation(basis.tk[1], basis) == g.K


@given(exact_multivectors(grades=(0, 2, 4), real=True))
def test_theorem2_round_trip(basis, psi):
    assert solve_ideal_equation(psi * basis.t, basis) == psi


@given(exact_multivectors())
def test_ideal_membership_and_positivity(basis, u):
    phi = u * basis.t
    assert basis.in_ideal(phi)
    assert from_components(ideal_components(phi, basis), basis) == phi
    val = EXACT.coerce(inner(phi, phi, basis.gen.H))
    assert val.im == 0
    assert (val.re > 0) == (phi != MultiVector())
    assert solve_ideal_equation(phi, basis) * basis.t == phi


@given(exact_multivectors(), exact_multivectors())
def test_inner_is_hermitian(basis, u, v):
    a, b = u * basis.t, v * basis.t
    H = basis.gen.H
    assert inner(a, b, H) == inner(b, a, H).conjugate()


def test_conjugated_generators_are_valid():
    rng = np.random.default_rng(3)
    g = default_generators()
    for _ in range(10):
        alt = g.conjugated(rational_spin(rng))
        b = idempotent(alt)
        assert b.t * b.t == b.t
        for k, tk in enumerate(b.tk):
            assert inner(tk, tk, alt.H) == 1


def test_float_backend_round_trip():
    rng = np.random.default_rng(1)
    b = idempotent(default_generators(FLOAT), FLOAT)
    from kdirac.algebra import random_multivector

    for _ in range(50):
        psi = random_multivector(rng, FLOAT, (0, 2, 4), real=True)
        assert (solve_ideal_equation(psi * b.t, b) - psi).norm() <= 1e-12
