"""Exterior forms on Minkowski space R^{1,3} and their central product.

Blades are 4-bit masks: bit ``mu`` is set when ``e^mu`` is a factor, factors
are kept in ascending order, so ``0`` is the scalar ``1`` and ``15`` is the
volume form ``e^0^e^1^e^2^e^3``.  Coefficients are stored per blade, i.e.
the ``1/k!`` of the tensor-component notation is already absorbed.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

import numpy as np

from .scalars import FLOAT, Backend, QComplex

DIM = 4
NBLADES = 16
METRIC = (1, -1, -1, -1)

GRADE = tuple(bin(m).count("1") for m in range(NBLADES))
# Blades sorted by grade, then by index tuple: 1, e0..e3, e01, ..., e0123.
BLADE_ORDER = tuple(
    sorted(range(NBLADES), key=lambda m: (GRADE[m], [i for i in range(DIM) if m >> i & 1]))
)
EVEN_BLADES = tuple(m for m in BLADE_ORDER if GRADE[m] % 2 == 0)
ODD_BLADES = tuple(m for m in BLADE_ORDER if GRADE[m] % 2 == 1)
VOLUME = 15


def blade_indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(DIM) if mask >> i & 1)


def blade_name(mask: int) -> str:
    if mask == 0:
        return "1"
    return "e" + "".join(str(i) for i in blade_indices(mask))


def _reorder_sign(a: int, b: int) -> int:
    """Sign of moving the factors of ``b`` past those of ``a`` into ascending order."""
    swaps = 0
    for i in blade_indices(b):
        swaps += bin(a >> (i + 1)).count("1")
    return -1 if swaps % 2 else 1


def _metric_sign(mask: int) -> int:
    s = 1
    for i in blade_indices(mask):
        s *= METRIC[i]
    return s


def _build_tables():
    prod = [[0] * NBLADES for _ in range(NBLADES)]
    wedge = [[0] * NBLADES for _ in range(NBLADES)]
    for a in range(NBLADES):
        for b in range(NBLADES):
            s = _reorder_sign(a, b)
            prod[a][b] = s * _metric_sign(a & b)
            wedge[a][b] = s if a & b == 0 else 0
    return tuple(map(tuple, prod)), tuple(map(tuple, wedge))


# e^A e^B = PRODUCT_SIGN[A][B] * e^(A xor B)
PRODUCT_SIGN, WEDGE_SIGN = _build_tables()


def _build_hodge():
    table = []
    for a in range(NBLADES):
        comp = VOLUME ^ a
        # raised indices pick up g^{aa}; epsilon sign is that of e^A ^ e^Ac = +-l
        table.append((comp, _metric_sign(a) * WEDGE_SIGN[a][comp]))
    return tuple(table)


HODGE = _build_hodge()

REVERSE_SIGN = tuple(-1 if (GRADE[m] * (GRADE[m] - 1) // 2) % 2 else 1 for m in range(NBLADES))


class MultiVector:
    """An element of the complex exterior algebra with 16 blade coefficients.

    Instances are immutable.  ``*`` is the central (Clifford) product, ``^`` the
    exterior product; multiplication by a plain number scales coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = None):
        if coeffs is None:
            coeffs = (0,) * NBLADES
        coeffs = tuple(coeffs)
        if len(coeffs) != NBLADES:
            raise ValueError(f"expected {NBLADES} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("MultiVector is immutable")

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls) -> "MultiVector":
        return cls()

    @classmethod
    def scalar(cls, value) -> "MultiVector":
        c = [0] * NBLADES
        c[0] = value
        return cls(c)

    @classmethod
    def blade(cls, mask: int, value=1) -> "MultiVector":
        c = [0] * NBLADES
        c[mask] = value
        return cls(c)

    @classmethod
    def from_dict(cls, terms: dict) -> "MultiVector":
        c = [0] * NBLADES
        for mask, value in terms.items():
            c[mask] = c[mask] + value
        return cls(c)

    @classmethod
    def vector(cls, components: Iterable) -> "MultiVector":
        """1-form ``a_mu e^mu`` from its four lower-index components."""
        c = [0] * NBLADES
        for mu, a in enumerate(components):
            c[1 << mu] = a
        return cls(c)

    def with_backend(self, backend: Backend) -> "MultiVector":
        return MultiVector(backend.coerce(c) if c else 0 for c in self.coeffs)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiVector):
            other = MultiVector.scalar(other)
        return MultiVector(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return MultiVector(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, MultiVector):
            other = MultiVector.scalar(other)
        return MultiVector(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, MultiVector):
            return central_product(self, other)
        return MultiVector(c * other for c in self.coeffs)

    def __rmul__(self, other):
        return MultiVector(other * c for c in self.coeffs)

    def __truediv__(self, other):
        return MultiVector(c / other for c in self.coeffs)

    def __xor__(self, other):
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, MultiVector):
            if isinstance(other, (int, float, complex, QComplex)):
                other = MultiVector.scalar(other)
            else:
                return NotImplemented
        return all(a == b for a, b in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __getitem__(self, mask: int):
        return self.coeffs[mask]

    # helpers --------------------------------------------------------------
    def grade(self, k: int) -> "MultiVector":
        return grade_project(self, k)

    def even(self) -> "MultiVector":
        return even_part(self)

    def odd(self) -> "MultiVector":
        return odd_part(self)

    def star(self) -> "MultiVector":
        return star_conj(self)

    def conj(self) -> "MultiVector":
        """Complex conjugate of every coefficient (the bar operation)."""
        return MultiVector(_conj(c) for c in self.coeffs)

    def norm(self) -> float:
        return math.sqrt(sum(abs(complex(c)) ** 2 for c in self.coeffs))

    def grades(self, tol: float = 0.0) -> set[int]:
        return {GRADE[m] for m, c in enumerate(self.coeffs) if c and abs(complex(c)) > tol}

    def is_real(self, tol: float = 0.0) -> bool:
        for c in self.coeffs:
            if isinstance(c, QComplex):
                if c.im:
                    return False
            elif abs(complex(c).imag) > tol:
                return False
        return True

    def is_even(self, tol: float = 0.0) -> bool:
        return all(not c or abs(complex(c)) <= tol for c in odd_part(self).coeffs)

    def is_odd(self, tol: float = 0.0) -> bool:
        return all(not c or abs(complex(c)) <= tol for c in even_part(self).coeffs)

    def real_part(self) -> "MultiVector":
        return MultiVector(c.real if c else 0 for c in self.coeffs)

    def to_numpy(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    @classmethod
    def from_numpy(cls, arr) -> "MultiVector":
        return cls(complex(c) for c in arr)

    def map(self, fn: Callable) -> "MultiVector":
        return MultiVector(fn(c) for c in self.coeffs)

    def __str__(self):
        from .literal import format_multivector

        return format_multivector(self)

    def __repr__(self):
        return f"MultiVector({str(self)!r})"


def _conj(c):
    if not c:
        return c
    return c.conjugate()


def _nonzero(u: MultiVector):
    return [(m, c) for m, c in enumerate(u.coeffs) if c]


def central_product(u: MultiVector, v: MultiVector) -> MultiVector:
    """Central (Clifford) product ``UV``, using the precomputed blade table."""
    out = [0] * NBLADES
    vs = _nonzero(v)
    for a, ca in _nonzero(u):
        row = PRODUCT_SIGN[a]
        for b, cb in vs:
            term = ca * cb
            if row[b] < 0:
                out[a ^ b] = out[a ^ b] - term
            else:
                out[a ^ b] = out[a ^ b] + term
    return MultiVector(out)


def wedge(u: MultiVector, v: MultiVector) -> MultiVector:
    out = [0] * NBLADES
    vs = _nonzero(v)
    for a, ca in _nonzero(u):
        row = WEDGE_SIGN[a]
        for b, cb in vs:
            s = row[b]
            if s == 0:
                continue
            term = ca * cb
            out[a | b] = out[a | b] + term if s > 0 else out[a | b] - term
    return MultiVector(out)


def left_contract_vector(mu: int, v: MultiVector) -> MultiVector:
    """Interior product ``e^mu ⌋ V`` (removes ``e^mu``, with metric factor)."""
    bit = 1 << mu
    out = [0] * NBLADES
    for b, cb in _nonzero(v):
        if not b & bit:
            continue
        # e^mu e^B = sign * e^(B\mu); the grade-lowering part is all of it here
        s = PRODUCT_SIGN[bit][b]
        out[b ^ bit] = out[b ^ bit] + cb if s > 0 else out[b ^ bit] - cb
    return MultiVector(out)


def hodge_star(u: MultiVector) -> MultiVector:
    out = [0] * NBLADES
    for a, ca in _nonzero(u):
        comp, s = HODGE[a]
        out[comp] = ca if s > 0 else -ca
    return MultiVector(out)


def star_conj(u: MultiVector) -> MultiVector:
    """``U* = (-1)^{k(k-1)/2} conj(U)`` gradewise; an antiautomorphism."""
    return MultiVector(
        (_conj(c) if REVERSE_SIGN[m] > 0 else -_conj(c)) if c else 0
        for m, c in enumerate(u.coeffs)
    )


def dagger(u: MultiVector, h: MultiVector, tol: float = 1e-12) -> MultiVector:
    """Hermitian conjugation ``U† = H U* H``; ``H`` must square to one."""
    check_unit_square(h, tol)
    return h * star_conj(u) * h


def check_unit_square(h: MultiVector, tol: float = 1e-12) -> None:
    sq = h * h - MultiVector.scalar(1)
    if any(c and abs(complex(c)) > tol for c in sq.coeffs):
        raise ValueError(f"H must satisfy H*H = 1; got H*H = {h * h}")


def trace(u: MultiVector):
    """Scalar part: Tr(1) = 1, Tr of every other blade is 0."""
    return u.coeffs[0]


def trace_product(u: MultiVector, v: MultiVector):
    """``Tr(UV)`` without forming the full product."""
    total = 0
    vc = v.coeffs
    for m, c in enumerate(u.coeffs):
        if c and vc[m]:
            term = c * vc[m]
            total = total + term if PRODUCT_SIGN[m][m] > 0 else total - term
    return total


def grade_project(u: MultiVector, k: int) -> MultiVector:
    if not 0 <= k <= DIM:
        raise ValueError(f"grade must be in 0..{DIM}, got {k}")
    return MultiVector(c if GRADE[m] == k else 0 for m, c in enumerate(u.coeffs))


def even_part(u: MultiVector) -> MultiVector:
    return MultiVector(c if GRADE[m] % 2 == 0 else 0 for m, c in enumerate(u.coeffs))


def odd_part(u: MultiVector) -> MultiVector:
    return MultiVector(c if GRADE[m] % 2 else 0 for m, c in enumerate(u.coeffs))


def commutator(u: MultiVector, v: MultiVector) -> MultiVector:
    return u * v - v * u


def anticommutator(u: MultiVector, v: MultiVector) -> MultiVector:
    return u * v + v * u


def is_close(u: MultiVector, v: MultiVector, tol: float = 1e-12) -> bool:
    return (u - v).norm() <= tol


def basis_vector(mu: int, value=1) -> MultiVector:
    return MultiVector.blade(1 << mu, value)


def e(*indices: int, value=1) -> MultiVector:
    """Blade from strictly ascending indices, e.g. ``e(1, 2)`` is ``e^1^e^2``."""
    if list(indices) != sorted(set(indices)):
        raise ValueError(f"blade indices must be strictly ascending, got {indices}")
    mask = 0
    for i in indices:
        if not 0 <= i < DIM:
            raise ValueError(f"index {i} out of range")
        mask |= 1 << i
    return MultiVector.blade(mask, value)


def volume_form(value=1) -> MultiVector:
    return MultiVector.blade(VOLUME, value)


def random_multivector(
    rng: np.random.Generator,
    backend: Backend = FLOAT,
    grades: Iterable[int] = range(DIM + 1),
    real: bool = False,
) -> MultiVector:
    grades = set(grades)
    return MultiVector(
        backend.random_scalar(rng, real=real) if GRADE[m] in grades else 0
        for m in range(NBLADES)
    )


def coefficient_matrix(forms: Sequence[MultiVector]) -> np.ndarray:
    """Rows are the 16 blade coefficients of each form (float view)."""
    return np.array([f.to_numpy() for f in forms])
