"""Complex coefficient backends.

Two interchangeable coefficient types are supported:

* ``exact``: :class:`QComplex`, a Gaussian rational with :mod:`gmpy2` parts.
* ``float``: the builtin :class:`complex`.

Both support ``+ - *``, ``conjugate()`` and truth testing, which is all the
multivector kernel needs.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import gmpy2
import numpy as np

mpq = gmpy2.mpq
_MPQ = type(mpq(0))

Number = Union[int, float, complex, Fraction, "QComplex"]


def _as_mpq(x) -> "gmpy2.mpq":
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class QComplex:
    """Exact complex number ``re + i*im`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _as_mpq(re)
        self.im = _as_mpq(im)

    @classmethod
    def _raw(cls, re, im):
        z = object.__new__(cls)
        z.re = re
        z.im = im
        return z

    def _coerce(self, other):
        if isinstance(other, QComplex):
            return other
        if isinstance(other, (int, Fraction)) or type(other) is _MPQ:
            return QComplex._raw(_as_mpq(other), mpq(0))
        if isinstance(other, numbers.Complex):
            return None
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return complex(self) + other
        return QComplex._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return complex(self) - other
        return QComplex._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return other - complex(self)
        return QComplex._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return complex(self) * other
        return QComplex._raw(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            return complex(self) / other
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("QComplex division by zero")
        return QComplex._raw(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __neg__(self):
        return QComplex._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return QComplex._raw(self.re, -self.im)

    @property
    def real(self):
        return QComplex._raw(self.re, mpq(0))

    @property
    def imag(self):
        return QComplex._raw(self.im, mpq(0))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o is None:
            if isinstance(other, numbers.Complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __abs__(self):
        return abs(complex(self))

    def __repr__(self):
        if not self.im:
            return f"QComplex({self.re})"
        return f"QComplex({self.re}, {self.im})"


@dataclass(frozen=True)
class Backend:
    """Coefficient backend: how to build scalars and compare them."""

    name: str
    tolerance: float = 0.0

    @property
    def exact(self) -> bool:
        return self.name == "exact"

    def coerce(self, x):
        if self.exact:
            if isinstance(x, QComplex):
                return x
            if isinstance(x, (float, complex, np.floating, np.complexfloating)):
                z = complex(x)
                return QComplex(Fraction(z.real), Fraction(z.imag))
            return QComplex(x)
        return complex(x)

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def i(self):
        return QComplex(0, 1) if self.exact else 1j

    def is_zero(self, x) -> bool:
        if self.exact and isinstance(x, QComplex):
            return not x
        return abs(complex(x)) <= self.tolerance

    def random_scalar(self, rng: np.random.Generator, real: bool = True):
        """Uniform on [-1, 1] (float) or p/q with |p|, q <= 16 (exact)."""
        if self.exact:
            def part():
                return mpq(int(rng.integers(-16, 17)), int(rng.integers(1, 17)))
            return QComplex(part(), 0 if real else part())
        re = float(rng.uniform(-1.0, 1.0))
        im = 0.0 if real else float(rng.uniform(-1.0, 1.0))
        return complex(re, im)


EXACT = Backend("exact", 0.0)
FLOAT = Backend("float", 1e-12)


def get_backend(name: str, tolerance: float | None = None) -> Backend:
    if name not in ("exact", "float"):
        raise ValueError(f"unknown backend {name!r}")
    base = EXACT if name == "exact" else FLOAT
    if tolerance is None or name == "exact":
        return base
    return Backend(name, tolerance)


def to_complex(x) -> complex:
    return complex(x)


def real_part(x):
    """Real part keeping exactness."""
    if isinstance(x, QComplex):
        return x.real
    return complex(x).real


def imag_part(x):
    if isinstance(x, QComplex):
        return x.imag
    return complex(x).imag
