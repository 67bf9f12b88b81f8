"""Invariant generators, the idempotent ``t`` and its left ideal.

A :class:`GeneratorSet` is a validated triple ``H, I, K`` (plus the fixed
volume form ``ell``).  From it :func:`idempotent` builds
``t = 1/4 (1 + H)(1 - iI)`` and the orthonormal ideal basis
``t_k = F_k t`` with ``F = (1, K, -I ell, -K I ell)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.matrices import DomainMatrix

from .algebra import (
    EVEN_BLADES,
    MultiVector,
    anticommutator,
    commutator,
    dagger,
    e,
    star_conj,
    trace,
    trace_product,
    volume_form,
)
from .scalars import EXACT, Backend, QComplex


class InvalidGenerators(ValueError):
    def __init__(self, report: "ValidationReport"):
        failed = ", ".join(c.name for c in report.conditions if not c.passed)
        super().__init__(f"generator conditions failed: {failed}")
        self.report = report


class NotInIdealError(ValueError):
    """Raised when a form is not a member of the left ideal I(t)."""


@dataclass(frozen=True)
class Condition:
    name: str
    passed: bool
    residual: float

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "residual": self.residual}


@dataclass(frozen=True)
class ValidationReport:
    conditions: tuple[Condition, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def failed(self) -> list[str]:
        return [c.name for c in self.conditions if not c.passed]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "conditions": [c.to_dict() for c in self.conditions]}


def _residual(mv: MultiVector) -> float:
    return mv.norm()


def validate_generators(
    h: MultiVector, i: MultiVector, k: MultiVector, tol: float = 0.0
) -> ValidationReport:
    """Check H^2 = 1, I^2 = K^2 = -1, [H,I] = [H,K] = {I,K} = 0 and grades."""
    one = MultiVector.scalar(1)
    conds = []

    def add(name, residual_mv=None, ok=None):
        if residual_mv is not None:
            r = _residual(residual_mv)
            conds.append(Condition(name, r <= tol, r))
        else:
            conds.append(Condition(name, bool(ok), 0.0 if ok else 1.0))

    add("H in grade 1", ok=h.grades(tol) <= {1} and h.grades(tol))
    add("I in grade 2", ok=i.grades(tol) <= {2} and i.grades(tol))
    add("K in grade 2", ok=k.grades(tol) <= {2} and k.grades(tol))
    add("H, I, K real", ok=h.is_real(tol) and i.is_real(tol) and k.is_real(tol))
    add("H^2 = 1", h * h - one)
    add("I^2 = -1", i * i + one)
    add("K^2 = -1", k * k + one)
    add("[H,I] = 0", commutator(h, i))
    add("[H,K] = 0", commutator(h, k))
    add("{I,K} = 0", anticommutator(i, k))
    return ValidationReport(tuple(conds))


@dataclass(frozen=True)
class GeneratorSet:
    """Constant invariant generators ``ell, H, I, K``.

    Use :meth:`from_triple` or :func:`default_generators`; the constructor
    does not validate.
    """

    H: MultiVector
    I: MultiVector
    K: MultiVector
    ell: MultiVector
    tolerance: float = 0.0

    @classmethod
    def from_triple(cls, h, i, k, tol: float = 0.0) -> "GeneratorSet":
        report = validate_generators(h, i, k, tol)
        if not report.passed:
            raise InvalidGenerators(report)
        return cls(h, i, k, volume_form(_unit_like(h)), tol)

    def conjugated(self, s: MultiVector, tol: float | None = None) -> "GeneratorSet":
        """Generators ``S* H S, S* I S, S* K S`` for a Spin element ``S``."""
        ss = star_conj(s)
        tol = self.tolerance if tol is None else tol
        return GeneratorSet.from_triple(ss * self.H * s, ss * self.I * s, ss * self.K * s, tol)

    def with_backend(self, backend: Backend) -> "GeneratorSet":
        return GeneratorSet(
            self.H.with_backend(backend),
            self.I.with_backend(backend),
            self.K.with_backend(backend),
            self.ell.with_backend(backend),
            backend.tolerance,
        )


def default_generators(backend: Backend = EXACT) -> GeneratorSet:
    """``H = e^0``, ``I = -e^1^e^2``, ``K = -e^1^e^3``."""
    one = backend.one()
    return GeneratorSet.from_triple(
        e(0, value=one), e(1, 2, value=-one), e(1, 3, value=-one), backend.tolerance
    )


def basis16(gen: GeneratorSet) -> list[MultiVector]:
    """The 16 products of generators, listed grade by grade (0, 1, 2, 3, 4)."""
    H, I, K, l = gen.H, gen.I, gen.K, gen.ell
    one = MultiVector.scalar(_unit_like(H))
    return [
        one,
        H, l * H * I, l * H * K, l * H * I * K,
        I, K, I * K, l * I, l * K, l * I * K,
        H * I, H * K, H * I * K, l * H,
        l,
    ]


BASIS16_GRADES = (0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4)


@dataclass(frozen=True)
class IdealBasis:
    gen: GeneratorSet
    t: MultiVector
    F: tuple[MultiVector, ...]
    tk: tuple[MultiVector, ...]
    backend: Backend = field(default=EXACT)
    # H t_k* H, so that (Phi, t_k) = 4 Tr(Phi * dual_k)
    duals: tuple[MultiVector, ...] = field(default=(), repr=False)

    def in_ideal(self, u: MultiVector, tol: float | None = None) -> bool:
        tol = self.backend.tolerance if tol is None else tol
        return (u * self.t - u).norm() <= tol


def idempotent(gen: GeneratorSet, backend: Backend = EXACT) -> IdealBasis:
    """Build ``t``, ``F_k`` and ``t_k = F_k t`` for the given generators."""
    gen = gen.with_backend(backend) if backend.exact != _is_exact(gen.H) else gen
    one = MultiVector.scalar(backend.one())
    quarter = backend.coerce(QComplex(1, 0) / 4) if backend.exact else 0.25
    H, I, K, l = gen.H, gen.I, gen.K, gen.ell
    t = quarter * ((one + H) * (one - backend.i() * I))
    F = (one, K, -(I * l), -(K * I * l))
    tk = tuple(f * t for f in F)
    duals = tuple(H * star_conj(x) * H for x in tk)
    return IdealBasis(gen, t, F, tk, backend, duals)


def _is_exact(mv: MultiVector) -> bool:
    return any(isinstance(c, QComplex) for c in mv.coeffs)


def _unit_like(mv: MultiVector):
    return QComplex(1) if _is_exact(mv) else 1.0 + 0j


def inner(u: MultiVector, v: MultiVector, h: MultiVector, tol: float = 1e-12):
    """Hermitian scalar product ``(U, V) = 4 Tr(U V†)``."""
    return 4 * trace(u * dagger(v, h, tol))


def ideal_components(phi: MultiVector, basis: IdealBasis, tol: float | None = None) -> list:
    """Coordinates ``psi^k = (Phi, t_k)`` of ``Phi`` in the orthonormal basis."""
    tol = basis.backend.tolerance if tol is None else tol
    residual = (phi * basis.t - phi).norm()
    if residual > tol:
        raise NotInIdealError(f"form is not in I(t): |Phi t - Phi| = {residual:.3g}")
    return components_unchecked(phi, basis)


def components_unchecked(phi: MultiVector, basis: IdealBasis) -> list:
    return [basis.backend.coerce(4 * trace_product(phi, dual)) for dual in basis.duals]


def from_components(psi: Sequence, basis: IdealBasis) -> MultiVector:
    out = MultiVector()
    for c, tk in zip(psi, basis.tk):
        out = out + tk * c
    return out


def solve_ideal_equation(phi: MultiVector, basis: IdealBasis, tol: float | None = None) -> MultiVector:
    """The unique even real ``Psi`` with ``Psi t = Phi``: ``F_k (a^k + b^k I)``."""
    psi = ideal_components(phi, basis, tol)
    return even_from_components(psi, basis)


def even_from_components(psi: Sequence, basis: IdealBasis) -> MultiVector:
    I = basis.gen.I
    out = MultiVector()
    for c, f in zip(psi, basis.F):
        a, b = _re(c), _im(c)
        out = out + f * (MultiVector.scalar(a) + I * b)
    return out


def _re(c):
    if isinstance(c, QComplex):
        return c.real
    return complex(c).real


def _im(c):
    if isinstance(c, QComplex):
        return c.imag
    return complex(c).imag


# linear-algebra checks --------------------------------------------------------

def _to_qq_i(c):
    if isinstance(c, QComplex):
        return QQ_I(QQ(int(c.re.numerator), int(c.re.denominator)), QQ(int(c.im.numerator), int(c.im.denominator)))
    if c == 0:
        return QQ_I(0, 0)
    if isinstance(c, int):
        return QQ_I(c, 0)
    raise TypeError(f"exact rank needs exact coefficients, got {type(c).__name__}")


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q(i) of a matrix of exact scalars (Gaussian elimination)."""
    data = [[_to_qq_i(c) for c in row] for row in rows]
    return DomainMatrix(data, (len(data), len(data[0])), QQ_I).rank()


def form_rank(forms: Sequence[MultiVector]) -> int:
    return exact_rank([f.coeffs for f in forms])


def ideal_dimension(basis: IdealBasis) -> int:
    """Complex dimension of span{e^A t : A} over all 16 blades."""
    forms = [MultiVector.blade(m, QComplex(1)) * basis.t for m in range(16)]
    return form_rank(forms)


def even_map_real_rank(basis: IdealBasis) -> int:
    """Real rank of the map Psi -> Psi t from real Lambda_ev (dim 8)."""
    rows = []
    for m in EVEN_BLADES:
        img = MultiVector.blade(m, QComplex(1)) * basis.t
        row = []
        for c in img.coeffs:
            c = c if isinstance(c, QComplex) else QComplex(0)
            row.extend([c.re, c.im])
        rows.append([QComplex(x) for x in row])
    return exact_rank(rows)
