"""Fields on R^{1,3} and first-order operators ``d``, ``delta``, ``e^mu d_mu``.

A :class:`Field` maps a spacetime point to a value (a
:class:`~kdirac.algebra.MultiVector` or a length-4 spinor column) and knows
its partial derivatives as further fields.  Derivatives come from one of:

* :class:`AnalyticForm` / :class:`AnalyticSpinor`, built from
  :class:`ExpPoly` coefficient functions (exact symbolic derivatives);
* :class:`CallableField`, a closure with optional derivative closures,
  falling back to central differences;
* combinators (sums, products, linear maps, coordinate changes) that apply
  the sum, product and chain rules to their operands.
"""

from __future__ import annotations

import cmath
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import (
    DIM,
    NBLADES,
    MultiVector,
    basis_vector,
    central_product,
    hodge_star,
    left_contract_vector,
    star_conj,
    wedge,
)

DEFAULT_FD_STEP = 1e-3

_BASIS = tuple(basis_vector(mu, 1.0 + 0j) for mu in range(DIM))


def point(x) -> np.ndarray:
    """Coerce to a spacetime point ``(x^0, x^1, x^2, x^3)``."""
    arr = np.asarray(x, dtype=float)
    if arr.shape != (DIM,):
        raise ValueError(f"a spacetime point has 4 coordinates, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("spacetime point must be finite")
    return arr


# ---------------------------------------------------------------------------
# scalar exp-polynomials
# ---------------------------------------------------------------------------

_ZERO_W = (0j, 0j, 0j, 0j)
_ZERO_P = (0, 0, 0, 0)


class ExpPoly:
    """Finite sum ``sum c * x^a * exp(w . x)`` with complex ``c`` and ``w``.

    The family is closed under differentiation, products and complex
    conjugation, which is what the analytic fields need.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        # (w, powers) -> coefficient
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def constant(cls, c) -> "ExpPoly":
        return cls({(_ZERO_W, _ZERO_P): complex(c)})

    @classmethod
    def coordinate(cls, mu: int, c=1.0) -> "ExpPoly":
        p = [0] * DIM
        p[mu] = 1
        return cls({(_ZERO_W, tuple(p)): complex(c)})

    @classmethod
    def monomial(cls, powers: Sequence[int], c=1.0) -> "ExpPoly":
        return cls({(_ZERO_W, tuple(int(a) for a in powers)): complex(c)})

    @classmethod
    def exp(cls, w: Sequence[complex], c=1.0) -> "ExpPoly":
        return cls({(tuple(complex(v) for v in w), _ZERO_P): complex(c)})

    @classmethod
    def cos(cls, k: Sequence[float], phase: float = 0.0, c=1.0) -> "ExpPoly":
        """``c cos(k . x + phase)``."""
        k = [complex(v) for v in k]
        a = 0.5 * c * cmath.exp(1j * phase)
        b = 0.5 * c * cmath.exp(-1j * phase)
        return cls.exp([1j * v for v in k], a) + cls.exp([-1j * v for v in k], b)

    @classmethod
    def sin(cls, k: Sequence[float], phase: float = 0.0, c=1.0) -> "ExpPoly":
        """``c sin(k . x + phase)``."""
        return cls.cos(k, phase - np.pi / 2, c)

    def __call__(self, x) -> complex:
        total = 0j
        for (w, p), c in self.terms.items():
            val = c
            if p != _ZERO_P:
                for xi, ai in zip(x, p):
                    if ai:
                        val *= xi**ai
            if w != _ZERO_W:
                val *= cmath.exp(w[0] * x[0] + w[1] * x[1] + w[2] * x[2] + w[3] * x[3])
            total += val
        return total

    def partial(self, mu: int) -> "ExpPoly":
        out: dict = {}
        for (w, p), c in self.terms.items():
            if w[mu]:
                key = (w, p)
                out[key] = out.get(key, 0) + c * w[mu]
            if p[mu]:
                q = list(p)
                q[mu] -= 1
                key = (w, tuple(q))
                out[key] = out.get(key, 0) + c * p[mu]
        return ExpPoly(out)

    def conjugate(self) -> "ExpPoly":
        return ExpPoly(
            {(tuple(v.conjugate() for v in w), p): complex(c).conjugate() for (w, p), c in self.terms.items()}
        )

    def real(self) -> "ExpPoly":
        return (self + self.conjugate()) * 0.5

    def imag(self) -> "ExpPoly":
        return (self - self.conjugate()) * (-0.5j)

    def __add__(self, other):
        if not isinstance(other, ExpPoly):
            other = ExpPoly.constant(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return ExpPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, ExpPoly) else -complex(other))

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            c = complex(other)
            return ExpPoly({k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (w1, p1), c1 in self.terms.items():
            for (w2, p2), c2 in other.terms.items():
                key = (
                    tuple(a + b for a, b in zip(w1, w2)),
                    tuple(a + b for a, b in zip(p1, p2)),
                )
                out[key] = out.get(key, 0) + c1 * c2
        return ExpPoly(out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"ExpPoly({len(self.terms)} terms)"


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


class Field:
    """A smooth function of a spacetime point with a partial-derivative oracle."""

    kind = "analytic"

    def __call__(self, x):
        raise NotImplementedError

    def partial(self, mu: int) -> "Field":
        raise NotImplementedError

    def __add__(self, other):
        return SumField((self, _as_field(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return SumField((self, ScaledField(_as_field(other), -1.0)))

    def __neg__(self):
        return ScaledField(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return ScaledField(self, other)
        return ProductField(self, _as_field(other))

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex)):
            return ScaledField(self, other)
        return ProductField(_as_field(other), self)


def _as_field(obj) -> Field:
    if isinstance(obj, Field):
        return obj
    if isinstance(obj, MultiVector):
        return ConstantField(obj)
    if isinstance(obj, (int, float, complex)):
        return ConstantField(MultiVector.scalar(complex(obj)))
    if isinstance(obj, np.ndarray):
        return ConstantField(obj)
    raise TypeError(f"cannot use {type(obj).__name__} as a field")


def _zero_like(value):
    if isinstance(value, MultiVector):
        return MultiVector()
    return np.zeros_like(value)


class ConstantField(Field):
    def __init__(self, value):
        self.value = value

    def __call__(self, x):
        return self.value

    def partial(self, mu):
        return ConstantField(_zero_like(self.value))


class SumField(Field):
    def __init__(self, parts: Iterable[Field]):
        self.parts = tuple(parts)
        self.kind = _combined_kind(self.parts)

    def __call__(self, x):
        it = iter(self.parts)
        total = next(it)(x)
        for f in it:
            total = total + f(x)
        return total

    def partial(self, mu):
        return SumField(f.partial(mu) for f in self.parts)


class ScaledField(Field):
    def __init__(self, field: Field, factor: complex):
        self.field = field
        self.factor = factor
        self.kind = field.kind

    def __call__(self, x):
        return self.field(x) * self.factor

    def partial(self, mu):
        return ScaledField(self.field.partial(mu), self.factor)


class ProductField(Field):
    """Pointwise product (central product for multivectors); Leibniz rule."""

    def __init__(self, left: Field, right: Field, product: Callable | None = None):
        self.left = left
        self.right = right
        self.product = product or (lambda a, b: a * b)
        self.kind = _combined_kind((left, right))

    def __call__(self, x):
        return self.product(self.left(x), self.right(x))

    def partial(self, mu):
        terms = []
        if not isinstance(self.left, ConstantField):
            terms.append(ProductField(self.left.partial(mu), self.right, self.product))
        if not isinstance(self.right, ConstantField):
            terms.append(ProductField(self.left, self.right.partial(mu), self.product))
        if not terms:
            return ConstantField(_zero_like(self(np.zeros(DIM))))
        return terms[0] if len(terms) == 1 else SumField(terms)


class LinearMapField(Field):
    """``L(F(x))`` for a constant linear map ``L``; derivatives commute with ``L``."""

    def __init__(self, fn: Callable, field: Field):
        self.fn = fn
        self.field = field
        self.kind = field.kind

    def __call__(self, x):
        return self.fn(self.field(x))

    def partial(self, mu):
        return LinearMapField(self.fn, self.field.partial(mu))


class PointwiseField(Field):
    """``G(x) = op(x, F)`` where ``op`` reads ``F`` and its first partials at ``x``.

    ``op`` must have constant coefficients, so ``d_nu G = op(x, d_nu F)``.
    """

    def __init__(self, op: Callable, field: Field):
        self.op = op
        self.field = field
        self.kind = field.kind

    def __call__(self, x):
        return self.op(self.field, point(x))

    def partial(self, mu):
        return PointwiseField(self.op, self.field.partial(mu))


class ChangeOfCoordinates(Field):
    """``G(y) = L(F(Q y))`` for a constant 4x4 matrix ``Q`` (chain rule).

    ``dG/dy^mu = sum_nu Q[nu, mu] L(d_nu F)``.
    """

    def __init__(self, field: Field, q: np.ndarray, fn: Callable | None = None):
        self.field = field
        self.q = np.asarray(q, dtype=float)
        self.fn = fn or (lambda v: v)
        self.kind = field.kind

    def __call__(self, y):
        return self.fn(self.field(self.q @ point(y)))

    def partial(self, mu):
        parts = [
            ScaledField(ChangeOfCoordinates(self.field.partial(nu), self.q, self.fn), self.q[nu, mu])
            for nu in range(DIM)
            if self.q[nu, mu] != 0
        ]
        if not parts:
            return ConstantField(_zero_like(self(np.zeros(DIM))))
        return SumField(parts)


class CallableField(Field):
    """Closure-backed field.

    ``partials`` may supply ``d_mu F`` as closures (used to first order);
    anything not supplied is taken by central differences with step ``h``.
    """

    def __init__(self, fn: Callable, partials: Sequence[Callable] | None = None, h: float = DEFAULT_FD_STEP):
        self.fn = fn
        self.partials = partials
        self.h = h
        self.kind = "analytic" if partials is not None else "finite-difference"

    def __call__(self, x):
        return self.fn(point(x))

    def partial(self, mu):
        if self.partials is not None:
            return CallableField(self.partials[mu], None, self.h)
        return FiniteDifferenceField(self, mu, self.h)


class FiniteDifferenceField(Field):
    kind = "finite-difference"

    def __init__(self, field: Field, mu: int, h: float = DEFAULT_FD_STEP):
        if h <= 0:
            raise ValueError("finite-difference step must be positive")
        self.field = field
        self.mu = mu
        self.h = h

    def __call__(self, x):
        return finite_difference_partial(self.field, self.mu, x, self.h)

    def partial(self, mu):
        return FiniteDifferenceField(self, mu, self.h)


def finite_difference_partial(field: Field | Callable, mu: int, x, h: float = DEFAULT_FD_STEP):
    """Central difference ``(F(x + h e_mu) - F(x - h e_mu)) / 2h``."""
    if h <= 0:
        raise ValueError("finite-difference step must be positive")
    x = point(x)
    step = np.zeros(DIM)
    step[mu] = h
    return (field(x + step) - field(x - step)) * (1.0 / (2.0 * h))


def _combined_kind(fields) -> str:
    return "finite-difference" if any(f.kind == "finite-difference" for f in fields) else "analytic"


class AnalyticForm(Field):
    """Multivector field whose blade coefficients are :class:`ExpPoly`."""

    def __init__(self, components: dict[int, ExpPoly]):
        self.components = {m: c for m, c in components.items() if c}
        self._partials: dict[int, AnalyticForm] = {}

    @classmethod
    def from_multivector(cls, mv: MultiVector, coefficient: ExpPoly | None = None) -> "AnalyticForm":
        coefficient = coefficient if coefficient is not None else ExpPoly.constant(1)
        return cls({m: coefficient * complex(c) for m, c in enumerate(mv.coeffs) if c})

    def __call__(self, x):
        x = point(x)
        c = [0] * NBLADES
        for m, f in self.components.items():
            c[m] = f(x)
        return MultiVector(c)

    def partial(self, mu):
        if mu not in self._partials:
            self._partials[mu] = AnalyticForm({m: f.partial(mu) for m, f in self.components.items()})
        return self._partials[mu]

    def conjugate(self) -> "AnalyticForm":
        return AnalyticForm({m: f.conjugate() for m, f in self.components.items()})

    def __add__(self, other):
        if isinstance(other, AnalyticForm):
            out = dict(self.components)
            for m, f in other.components.items():
                out[m] = out[m] + f if m in out else f
            return AnalyticForm(out)
        return super().__add__(other)


class AnalyticSpinor(Field):
    """Spinor column field with :class:`ExpPoly` entries."""

    def __init__(self, entries: Sequence[ExpPoly]):
        if len(entries) != 4:
            raise ValueError("a spinor column has four entries")
        self.entries = tuple(entries)

    def __call__(self, x):
        x = point(x)
        return np.array([f(x) for f in self.entries], dtype=complex)

    def partial(self, mu):
        return AnalyticSpinor([f.partial(mu) for f in self.entries])


def scalar_field(f: ExpPoly) -> AnalyticForm:
    return AnalyticForm({0: f})


# ---------------------------------------------------------------------------
# operators
# ---------------------------------------------------------------------------


def differential(field: Field, x) -> MultiVector:
    """``dF = sum_mu e^mu ^ d_mu F``; raises every grade by one."""
    x = point(x)
    out = MultiVector()
    for mu in range(DIM):
        out = out + wedge(_BASIS[mu], field.partial(mu)(x))
    return out


def codifferential(field: Field, x) -> MultiVector:
    """``delta F = -sum_mu e^mu ⌋ d_mu F``; lowers every grade by one.

    This is the grade-lowering part of ``e^mu d_mu`` with a minus sign, so
    that ``e^mu d_mu = d - delta``.
    """
    x = point(x)
    out = MultiVector()
    for mu in range(DIM):
        out = out - left_contract_vector(mu, field.partial(mu)(x))
    return out


def codifferential_star(field: Field, x) -> MultiVector:
    """``delta F`` computed literally as ``star d star F``."""
    return hodge_star(differential(LinearMapField(hodge_star, field), x))


def dirac_operator(field: Field, x) -> MultiVector:
    """``e^mu d_mu F`` with the central product."""
    x = point(x)
    out = MultiVector()
    for mu in range(DIM):
        out = out + central_product(_BASIS[mu], field.partial(mu)(x))
    return out


def d(field: Field) -> Field:
    return PointwiseField(differential, field)


def delta(field: Field) -> Field:
    return PointwiseField(codifferential, field)


def delta_star(field: Field) -> Field:
    return PointwiseField(codifferential_star, field)


def dirac(field: Field) -> Field:
    return PointwiseField(dirac_operator, field)


def star_field(field: Field) -> Field:
    """Pointwise ``U -> U*`` (conjugation is real-linear, so it commutes with d_mu)."""
    return LinearMapField(star_conj, field)


# ---------------------------------------------------------------------------
# random analytic fields
# ---------------------------------------------------------------------------


def random_exppoly(rng: np.random.Generator, real: bool = False, n_trig: int = 1, degree: int = 2) -> ExpPoly:
    """A small random polynomial plus trigonometric exp-polynomial."""

    def coef():
        c = rng.uniform(-1, 1)
        return complex(c) if real else complex(c, rng.uniform(-1, 1))

    f = ExpPoly.constant(coef())
    for mu in range(DIM):
        f = f + ExpPoly.coordinate(mu, coef())
    if degree >= 2:
        for _ in range(2):
            powers = [0] * DIM
            powers[int(rng.integers(DIM))] += 1
            powers[int(rng.integers(DIM))] += 1
            f = f + ExpPoly.monomial(powers, coef())
    for _ in range(n_trig):
        k = rng.uniform(-1.5, 1.5, size=DIM)
        phase = rng.uniform(0, 2 * np.pi)
        amp = coef()
        trig = ExpPoly.cos(k, phase, 1.0)
        f = f + trig * amp
    return f


def random_analytic_form(
    rng: np.random.Generator, grades: Iterable[int] = range(DIM + 1), real: bool = False, n_trig: int = 1
) -> AnalyticForm:
    from .algebra import GRADE

    grades = set(grades)
    return AnalyticForm(
        {m: random_exppoly(rng, real=real, n_trig=n_trig) for m in range(NBLADES) if GRADE[m] in grades}
    )


def random_point(rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return rng.uniform(-scale, scale, size=DIM)
