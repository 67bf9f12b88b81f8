"""Hypothesis strategies for exact and float multivectors."""

from fractions import Fraction

from hypothesis import strategies as st

from kdirac.algebra import GRADE, NBLADES, MultiVector
from kdirac.scalars import QComplex

small_fraction = st.builds(Fraction, st.integers(-16, 16), st.integers(1, 16))
qcomplex = st.builds(QComplex, small_fraction, small_fraction)
float_complex = st.builds(
    complex,
    st.floats(-1, 1, allow_nan=False, allow_infinity=False),
    st.floats(-1, 1, allow_nan=False, allow_infinity=False),
)


def exact_multivectors(grades=range(5), real=False):
    coeff = st.builds(QComplex, small_fraction) if real else qcomplex
    grades = set(grades)
    return st.lists(coeff, min_size=NBLADES, max_size=NBLADES).map(
        lambda cs: MultiVector([c if GRADE[m] in grades else 0 for m, c in enumerate(cs)])
    )


def float_multivectors(grades=range(5)):
    grades = set(grades)
    return st.lists(float_complex, min_size=NBLADES, max_size=NBLADES).map(
        lambda cs: MultiVector([c if GRADE[m] in grades else 0 for m, c in enumerate(cs)])
    )


def homogeneous_exact(k):
    return exact_multivectors(grades=(k,))
