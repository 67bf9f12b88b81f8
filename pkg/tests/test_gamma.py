import numpy as np
import pytest
from hypothesis import given

from kdirac.algebra import MultiVector, basis_vector, dagger, e
from kdirac.gamma import (
    DIRAC_MATRICES,
    conj_transpose,
    format_matrix,
    gamma,
    gamma_matrices,
    identity,
    matrices_equal,
    matrix_to_json,
    to_complex,
)
from kdirac.generators import default_generators, exact_rank, idempotent
from kdirac.oracles import rational_spin
from kdirac.scalars import FLOAT, QComplex

from oracles import GAMMA
from strategies import exact_multivectors

ONE = QComplex(1)


@pytest.fixture(scope="module")
def basis():
    return idempotent(default_generators())


def test_gamma_of_one_is_identity(basis):
    assert matrices_equal(gamma(MultiVector.scalar(ONE), basis), identity())


def test_displayed_matrices(basis):
    mats = gamma_matrices(default_generators())
    for mu in range(4):
        assert matrices_equal(mats[mu], DIRAC_MATRICES[mu])
        assert np.array_equal(to_complex(mats[mu]), GAMMA[mu])
    assert [int(x.re) for x in mats[1][0]] == [0, 0, 0, -1]
    assert mats[3][0, 2] == -1


def test_anticommutation_exact():
    mats = gamma_matrices(default_generators())
    for mu in range(4):
        for nu in range(4):
            g = (1 if mu == 0 else -1) if mu == nu else 0
            lhs = to_complex(mats[mu] @ mats[nu] + mats[nu] @ mats[mu])
            assert np.array_equal(lhs, 2 * g * np.eye(4))


def test_anticommutation_other_generators():
    rng = np.random.default_rng(5)
    gen = default_generators().conjugated(rational_spin(rng))
    mats = gamma_matrices(gen)
    for mu in range(4):
        for nu in range(4):
            g = (1 if mu == 0 else -1) if mu == nu else 0
            lhs = mats[mu] @ mats[nu] + mats[nu] @ mats[mu]
            assert all(
                lhs[i, j] == (2 * g if i == j else 0) for i in range(4) for j in range(4)
            )


@given(exact_multivectors(), exact_multivectors(), exact_multivectors(grades=(0,)))
def test_homomorphism_exact(basis, u, v, alpha):
    a = alpha.coeffs[0] or QComplex(0)
    gu, gv = gamma(u, basis), gamma(v, basis)
    assert matrices_equal(gamma(u * v, basis), gu @ gv)
    assert matrices_equal(gamma(u + v, basis), gu + gv)
    assert matrices_equal(gamma(u * a, basis), gu * a)


@given(exact_multivectors())
def test_dagger_compatibility(basis, u):
    assert matrices_equal(gamma(dagger(u, basis.gen.H), basis), conj_transpose(gamma(u, basis)))


def test_faithful_on_blades(basis):
    rows = [list(gamma(MultiVector.blade(m, ONE), basis).ravel()) for m in range(16)]
    assert exact_rank(rows) == 16


def test_float_backend_matches():
    b = idempotent(default_generators(FLOAT), FLOAT)
    for mu in range(4):
        assert np.allclose(gamma(basis_vector(mu, 1.0 + 0j), b), GAMMA[mu], atol=1e-15)


def test_serialization():
    g2 = gamma_matrices(default_generators())[2]
    js = matrix_to_json(g2)
    assert js[0][3] == [0.0, 1.0] and js[1][2] == [0.0, -1.0]
    text = format_matrix(g2)
    assert text.splitlines()[0].split() == ["0", "0", "0", "1i"]
