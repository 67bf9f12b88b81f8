import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from kdirac.algebra import (
    GRADE,
    HODGE,
    NBLADES,
    PRODUCT_SIGN,
    VOLUME,
    MultiVector,
    anticommutator,
    basis_vector,
    blade_indices,
    dagger,
    e,
    even_part,
    grade_project,
    hodge_star,
    odd_part,
    star_conj,
    trace,
    trace_product,
    volume_form,
    wedge,
)
from kdirac.generators import default_generators, idempotent
from kdirac.oracles import hodge_levi_civita, reduce_word
from kdirac.scalars import QComplex

from oracles import blade_matrix, hodge_tensor, matrix_image
from strategies import exact_multivectors, float_multivectors, homogeneous_exact

ONE = QComplex(1)
I_UNIT = QComplex(0, 1)


def E(*idx, c=1):
    return e(*idx, value=QComplex(c))


def S(c):
    return MultiVector.scalar(QComplex(c))


# -- tables against independent oracles -------------------------------------


@pytest.mark.parametrize("a", range(NBLADES))
def test_product_table_matches_matrix_oracle(a):
    for b in range(NBLADES):
        lhs = blade_matrix(a) @ blade_matrix(b)
        assert np.allclose(lhs, PRODUCT_SIGN[a][b] * blade_matrix(a ^ b))


@pytest.mark.parametrize("a", range(NBLADES))
def test_product_table_matches_word_rewriting(a):
    for b in range(NBLADES):
        sign, word = reduce_word(blade_indices(a) + blade_indices(b))
        assert sum(1 << i for i in word) == a ^ b
        assert sign == PRODUCT_SIGN[a][b]


@pytest.mark.parametrize("m", range(NBLADES))
def test_hodge_table_matches_tensor_formula(m):
    assert hodge_tensor(m) == {HODGE[m][0]: HODGE[m][1]}
    (key, val), = hodge_levi_civita(blade_indices(m)).items()
    assert (sum(1 << i for i in key), val) == HODGE[m]


def test_word_rewriting_examples():
    assert reduce_word((0, 1, 0, 1)) == (1, ())
    assert reduce_word((2, 1)) == (-1, (1, 2))
    assert reduce_word((3, 3)) == (-1, ())


# -- documented examples -----------------------------------------------------


def test_wedge_examples():
    assert wedge(E(1), E(2)) == E(1, 2)
    assert wedge(E(2), E(1)) == -E(1, 2)
    assert wedge(volume_form(ONE), E(0)) == MultiVector()


def test_central_product_examples():
    assert E(0) * E(0) == S(1)
    assert E(1) * E(2) == E(1, 2)
    assert E(0, 1) * E(0, 1) == S(1)
    assert E(1) * E(1) == S(-1)


def test_hodge_examples():
    assert hodge_star(S(1)) == volume_form(ONE)
    assert hodge_star(volume_form(ONE)) == S(-1)
    assert hodge_star(E(0)) == E(1, 2, 3)


def test_star_conj_examples():
    assert star_conj(E(0)) == E(0)
    assert star_conj(E(1, 2)) == -E(1, 2)
    assert star_conj(MultiVector.scalar(I_UNIT)) == MultiVector.scalar(-I_UNIT)


def test_dagger_examples():
    h = E(0)
    assert dagger(E(0), h) == E(0)
    assert dagger(E(1), h) == -E(1)
    t = idempotent(default_generators()).t
    assert dagger(t, h) == t


def test_dagger_rejects_non_unit_h():
    with pytest.raises(ValueError):
        dagger(E(0), E(1))


def test_trace_examples():
    assert trace(S(1)) == ONE
    assert trace(E(1, 2)) == 0
    assert trace(idempotent(default_generators()).t) == QComplex(Fraction(1, 4))


def test_grade_projection_examples():
    u = S(1) + E(0)
    assert grade_project(u, 0) == S(1)
    assert grade_project(u, 1) == E(0)
    t = idempotent(default_generators()).t
    assert even_part(t).grades() == {0, 2}
    assert even_part(t) == MultiVector.scalar(QComplex(Fraction(1, 4))) + e(1, 2, value=QComplex(0, Fraction(1, 4)))
    with pytest.raises(ValueError):
        grade_project(u, 5)
    with pytest.raises(ValueError):
        grade_project(u, -1)


def test_metric_determinant():
    from kdirac.algebra import METRIC

    assert math.prod(METRIC) == -1


def test_volume_form_square():
    ell = volume_form(ONE)
    assert ell * ell == S(-1)


# -- properties --------------------------------------------------------------


@given(exact_multivectors(), exact_multivectors(), exact_multivectors())
def test_associativity_exact(u, v, w):
    assert (u * v) * w == u * (v * w)


@given(float_multivectors(), float_multivectors(), float_multivectors())
def test_associativity_float(u, v, w):
    assert ((u * v) * w - u * (v * w)).norm() <= 1e-12


@given(exact_multivectors(), exact_multivectors())
def test_product_matches_matrix_image(u, v):
    assert np.allclose(matrix_image(u * v), matrix_image(u) @ matrix_image(v))


@given(exact_multivectors(), exact_multivectors(), exact_multivectors())
def test_distributivity(u, v, w):
    assert u * (v + w) == u * v + u * w
    assert wedge(u, v + w) == wedge(u, v) + wedge(u, w)


@given(exact_multivectors(), exact_multivectors())
def test_conjugation_laws(u, v):
    h = E(0)
    assert star_conj(u * v) == star_conj(v) * star_conj(u)
    assert star_conj(star_conj(u)) == u
    assert dagger(u * v, h) == dagger(v, h) * dagger(u, h)
    assert dagger(dagger(u, h), h) == u


@given(exact_multivectors(), exact_multivectors())
def test_trace_cyclic(u, v):
    assert trace(u * v - v * u) == 0
    assert trace_product(u, v) == trace(u * v)


@given(homogeneous_exact(1), exact_multivectors())
def test_uv_identity(u, v):
    assert u * v == wedge(u, v) - hodge_star(wedge(u, hodge_star(v)))


@pytest.mark.parametrize("k", range(5))
def test_star_star(k):
    for m in range(NBLADES):
        if GRADE[m] == k:
            u = MultiVector.blade(m, ONE)
            assert hodge_star(hodge_star(u)) == u * (-1) ** (k + 1)


@given(exact_multivectors())
def test_volume_form_parity(u):
    ell = volume_form(ONE)
    assert ell * even_part(u) == even_part(u) * ell
    assert ell * odd_part(u) == -(odd_part(u) * ell)


@given(exact_multivectors())
def test_grade_decomposition(u):
    parts = [grade_project(u, k) for k in range(5)]
    assert sum(parts[1:], parts[0]) == u
    for k, p in enumerate(parts):
        assert grade_project(p, k) == p
    assert even_part(u) + odd_part(u) == u


@given(homogeneous_exact(1), homogeneous_exact(2))
def test_graded_anticommutativity(u, v):
    assert wedge(u, v) == wedge(v, u)
    assert wedge(u, u) == MultiVector()


@given(exact_multivectors(real=True))
def test_reality(u):
    assert u.is_real()
    assert not (u * I_UNIT).is_real() or u == MultiVector()


def test_clifford_relation():
    for mu in range(4):
        for nu in range(4):
            g = (1 if mu == 0 else -1) if mu == nu else 0
            assert anticommutator(basis_vector(mu, ONE), basis_vector(nu, ONE)) == S(2 * g)


def test_multivector_is_immutable():
    u = E(0)
    with pytest.raises(AttributeError):
        u.coeffs = ()


def test_volume_mask():
    assert VOLUME == 15 and blade_indices(VOLUME) == (0, 1, 2, 3)
