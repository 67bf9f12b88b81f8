"""The Dirac-type tensor equation and its matrix counterpart.

Tensor side, for an even real field ``Psi``::

    (d - delta) Psi + A Psi I + m Psi H I = 0

Matrix side, for a spinor column ``psi``::

    gamma^mu (d_mu psi + i a_mu psi) + i m psi = 0

The two are linked pointwise by ``Psi t = psi^k t_k``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import DIM, MultiVector, basis_vector, star_conj, trace
from .fields import (
    AnalyticSpinor,
    CallableField,
    ConstantField,
    ExpPoly,
    Field,
    LinearMapField,
    ProductField,
    codifferential,
    d,
    differential,
    point,
)
from .gamma import gamma, gamma_matrices, to_complex
from .generators import (
    GeneratorSet,
    IdealBasis,
    components_unchecked,
    even_from_components,
    idempotent,
)
from .scalars import FLOAT


class OddContaminationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class QEDConfig:
    """Constants of the coupled system plus numerical settings."""

    m: float = 1.0
    alpha: float = 1.0
    tolerance: float = 1e-9
    fd_step: float = 1e-3
    seed: int = 0

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("mass must be nonnegative")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.fd_step <= 0:
            raise ValueError("fd_step must be positive")


@dataclass
class Frame:
    """Float generators with their ideal basis and gamma matrices, built once."""

    gen: GeneratorSet
    basis: IdealBasis = field(init=False)
    gammas: tuple = field(init=False)

    def __post_init__(self):
        self.gen = self.gen.with_backend(FLOAT)
        self.basis = idempotent(self.gen, FLOAT)
        self.gammas = tuple(
            to_complex(gamma(basis_vector(mu, 1.0 + 0j), self.basis)) for mu in range(DIM)
        )
        self.HI = self.gen.H * self.gen.I
        self.Ht = self.gen.H * self.basis.t


def frame(gen: GeneratorSet | Frame) -> Frame:
    return gen if isinstance(gen, Frame) else Frame(gen)


def _warn_odd(value: MultiVector, tol: float = 1e-12) -> None:
    odd = value.odd().norm()
    if odd > tol:
        warnings.warn(f"Psi has odd-grade part of norm {odd:.3g}", OddContaminationWarning, stacklevel=3)


def _a_value(A: Field | None, x) -> MultiVector:
    return MultiVector() if A is None else A(x)


def _a_components(A: Field | None, x) -> np.ndarray:
    if A is None:
        return np.zeros(DIM, dtype=complex)
    a = A(x)
    return np.array([complex(a.coeffs[1 << mu]) for mu in range(DIM)])


# ---------------------------------------------------------------------------
# residuals
# ---------------------------------------------------------------------------


def tensor_residual(psi: Field, A: Field | None, cfg: QEDConfig, gen, x) -> MultiVector:
    """``(d - delta) Psi + A Psi I + m Psi H I`` at ``x``."""
    fr = frame(gen)
    x = point(x)
    value = psi(x)
    _warn_odd(value)
    I = fr.gen.I
    return (
        differential(psi, x)
        - codifferential(psi, x)
        + _a_value(A, x) * value * I
        + value * fr.HI * cfg.m
    )


def dirac_residual(psi: Field, A: Field | None, cfg: QEDConfig, gammas: Sequence[np.ndarray], x) -> np.ndarray:
    """``gamma^mu (d_mu psi + i a_mu psi) + i m psi`` at ``x``."""
    x = point(x)
    val = np.asarray(psi(x), dtype=complex)
    a = _a_components(A, x)
    out = 1j * cfg.m * val
    for mu in range(DIM):
        out = out + np.asarray(gammas[mu], dtype=complex) @ (psi.partial(mu)(x) + 1j * a[mu] * val)
    return out


# ---------------------------------------------------------------------------
# correspondence Psi t = psi^k t_k
# ---------------------------------------------------------------------------


def column_from_even(value: MultiVector, gen) -> np.ndarray:
    """``psi^k`` with ``Psi t = psi^k t_k`` for an even ``Psi``."""
    fr = frame(gen)
    _warn_odd(value)
    return np.array([complex(c) for c in components_unchecked(value * fr.basis.t, fr.basis)])


def even_from_column(psi: Sequence[complex], gen) -> MultiVector:
    """The unique even real ``Psi`` with ``Psi t = psi^k t_k``."""
    fr = frame(gen)
    return even_from_components([complex(c) for c in psi], fr.basis)


def column_field(psi: Field, gen) -> Field:
    fr = frame(gen)
    return LinearMapField(lambda v: column_from_even(v, fr), psi)


def even_field(psi: Field, gen) -> Field:
    """Even real form field of a spinor column field; derivatives follow psi's."""
    fr = frame(gen)
    return LinearMapField(lambda v: even_from_column(v, fr), psi)


def intertwined_components(residual: MultiVector, gen) -> np.ndarray:
    """Ideal components of ``residual * H t``."""
    fr = frame(gen)
    return np.array([complex(c) for c in components_unchecked(residual * fr.Ht, fr.basis)])


@dataclass
class PointResult:
    x: list
    tensor_norm: float
    dirac_norm: float
    intertwining_error: float


@dataclass
class EquivalenceReport:
    points: list[PointResult]
    tolerance: float
    first_failure: int | None

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    @property
    def max_intertwining_error(self) -> float:
        return max((p.intertwining_error for p in self.points), default=0.0)

    @property
    def max_tensor_norm(self) -> float:
        return max((p.tensor_norm for p in self.points), default=0.0)

    @property
    def max_dirac_norm(self) -> float:
        return max((p.dirac_norm for p in self.points), default=0.0)


def equivalence_check(
    Psi: Field, A: Field | None, cfg: QEDConfig, gen, points: Iterable, psi: Field | None = None
) -> EquivalenceReport:
    """Compare both residuals at each point.

    ``psi`` defaults to the column field of ``Psi``.  A point fails when
    exactly one residual vanishes, or when the components of
    ``tensor_residual * H t`` differ from the Dirac residual.
    """
    fr = frame(gen)
    psi = psi if psi is not None else column_field(Psi, fr)
    results = []
    first = None
    for i, x in enumerate(points):
        x = point(x)
        r = tensor_residual(Psi, A, cfg, fr, x)
        rd = dirac_residual(psi, A, cfg, fr.gammas, x)
        err = float(np.abs(intertwined_components(r, fr) - rd).max())
        pr = PointResult(x.tolist(), r.norm(), float(np.linalg.norm(rd)), err)
        results.append(pr)
        same_side = (pr.tensor_norm <= cfg.tolerance) == (pr.dirac_norm <= cfg.tolerance)
        if first is None and (err > cfg.tolerance or not same_side):
            first = i
    return EquivalenceReport(results, cfg.tolerance, first)


# ---------------------------------------------------------------------------
# current, Maxwell, gauge, Lagrangian
# ---------------------------------------------------------------------------


def current(value: MultiVector, gen) -> MultiVector:
    """``J = Psi H Psi*``."""
    H = gen.H if isinstance(gen, GeneratorSet) else gen.gen.H
    return value * H * star_conj(value)


def current_field(Psi: Field, gen, analytic: bool = False, h: float = 1e-3) -> Field:
    """``J`` as a field: product rule when ``analytic``, else central differences."""
    fr = frame(gen)
    H = fr.gen.H
    if analytic:
        return ProductField(ProductField(Psi, ConstantField(H)), LinearMapField(star_conj, Psi))
    return CallableField(lambda x: current(Psi(x), fr.gen), None, h)


def charge_conservation_residual(Psi: Field, A: Field | None, cfg: QEDConfig, gen, x) -> float:
    """``|delta J|`` at ``x`` with ``J`` differentiated numerically (step ``cfg.fd_step``)."""
    J = current_field(Psi, gen, analytic=False, h=cfg.fd_step)
    return codifferential(J, x).norm()


def maxwell_residuals(A: Field, F: Field, Psi: Field, cfg: QEDConfig, gen, x) -> tuple[MultiVector, MultiVector]:
    """``(dA - F, delta F - alpha J)`` at ``x``."""
    fr = frame(gen)
    x = point(x)
    J = current(Psi(x), fr.gen)
    return differential(A, x) - F(x), codifferential(F, x) - J * cfg.alpha


def exp_lambda_I(lam: float | complex, I: MultiVector) -> MultiVector:
    """``exp(lambda I) = cos(lambda) + I sin(lambda)``."""
    lam = complex(lam).real
    return MultiVector.scalar(complex(math.cos(lam))) + I * math.sin(lam)


class GaugePhaseField(Field):
    """``x -> exp(lambda(x) I)`` with ``d_mu exp(lambda I) = (d_mu lambda) I exp(lambda I)``."""

    def __init__(self, lam: Field, I: MultiVector):
        self.lam = lam
        self.I = I
        self.kind = lam.kind

    def __call__(self, x):
        return exp_lambda_I(self.lam(x).coeffs[0], self.I)

    def partial(self, mu):
        return ProductField(ProductField(self.lam.partial(mu), ConstantField(self.I)), self)


def gauge_transform(Psi: Field, A: Field | None, lam: Field, gen) -> tuple[Field, Field]:
    """``(Psi exp(lambda I), A - d lambda)``."""
    fr = frame(gen)
    psi2 = ProductField(Psi, GaugePhaseField(lam, fr.gen.I))
    dl = d(lam)
    A2 = (-dl) if A is None else A - dl
    return psi2, A2


def gauge_lambda(kind: str, c: float = 0.0, mu: int = 0) -> Field:
    """Catalog of gauge functions: ``zero``, ``constant`` c, ``linear`` c x^mu."""
    from .fields import scalar_field

    if kind == "zero":
        return scalar_field(ExpPoly())
    if kind == "constant":
        return scalar_field(ExpPoly.constant(c))
    if kind == "linear":
        return scalar_field(ExpPoly.coordinate(mu, c))
    raise ValueError(f"unknown gauge kind {kind!r}; expected zero, constant or linear")


def lagrangian_Q(Psi: Field, A: Field | None, cfg: QEDConfig, gen, x) -> MultiVector:
    """``Q = (d - delta) Psi I - A Psi - m Psi H``."""
    fr = frame(gen)
    x = point(x)
    value = Psi(x)
    dpsi = differential(Psi, x) - codifferential(Psi, x)
    return dpsi * fr.gen.I - _a_value(A, x) * value - value * fr.gen.H * cfg.m


def lagrangian(Psi: Field, A: Field | None, cfg: QEDConfig, gen, x) -> complex:
    """``L = 1/4 Tr(H (Psi* Q + Q* Psi))`` (returned as complex; it is real)."""
    fr = frame(gen)
    x = point(x)
    value = Psi(x)
    Q = lagrangian_Q(Psi, A, cfg, fr, x)
    inner = star_conj(value) * Q + star_conj(Q) * value
    return complex(trace(fr.gen.H * inner)) / 4


# ---------------------------------------------------------------------------
# plane-wave solutions
# ---------------------------------------------------------------------------

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class PlaneWaveSpec:
    """``psi(x) = amplitude * exp(-i p_mu x^mu)`` with ``p_mu p^mu = m^2``."""

    amplitude: tuple
    momentum: tuple
    mass: float

    def __post_init__(self):
        p = np.asarray(self.momentum, dtype=float)
        mass_shell = float(p @ METRIC @ p)
        if abs(mass_shell - self.mass**2) > 1e-9 * max(1.0, self.mass**2):
            raise ValueError(f"dispersion violated: p.p = {mass_shell} but m^2 = {self.mass**2}")

    def column_field(self) -> AnalyticSpinor:
        w = [-1j * pm for pm in self.momentum]
        return AnalyticSpinor([ExpPoly.exp(w, complex(a)) for a in self.amplitude])


def rest_frame_wave(branch: int, m: float) -> PlaneWaveSpec:
    """Basis column ``branch`` (1..4) times ``exp(-+ i m x^0)``.

    Branches 1, 2 sit in the +1 eigenspace of gamma^0 (positive frequency),
    3, 4 in the -1 eigenspace.
    """
    if branch not in (1, 2, 3, 4):
        raise ValueError("branch must be 1, 2, 3 or 4")
    u = [0j] * 4
    u[branch - 1] = 1 + 0j
    energy = m if branch <= 2 else -m
    return PlaneWaveSpec(tuple(u), (energy, 0.0, 0.0, 0.0), m)


def boosted_wave(branch: int, m: float, s: MultiVector, gen) -> PlaneWaveSpec:
    """Rest-frame wave carried to new coordinates by a Spin element.

    With ``P = vector_rep(S)``, ``Q = P^-1`` and ``R = gamma(S)``, the column
    ``y -> R psi(Q y)`` solves the Dirac equation again.
    """
    from .spin import vector_rep

    fr = frame(gen)
    rest = rest_frame_wave(branch, m)
    L = vector_rep(s)
    R = to_complex(gamma(s, fr.basis))
    amp = R @ np.asarray(rest.amplitude)
    # p_mu x^mu evaluated at x = Q y  ->  (p Q)_nu y^nu
    p = np.asarray(rest.momentum) @ L.Q
    return PlaneWaveSpec(tuple(complex(a) for a in amp), tuple(float(v) for v in p), m)


def solution_family(m: float, gen, boosts: Sequence[MultiVector] = ()) -> list[PlaneWaveSpec]:
    waves = [rest_frame_wave(b, m) for b in (1, 2, 3, 4)]
    for i, s in enumerate(boosts):
        waves.append(boosted_wave(i % 4 + 1, m, s, gen))
    return waves


def wave_from_json(doc: dict, gen) -> tuple[PlaneWaveSpec, Field]:
    """Build a plane wave and gauge function from a small JSON document.

    Keys: ``mass`` (default 1), ``branch`` (1..4, default 1), optional
    ``rapidity`` with ``direction`` (3-vector) for a boost, optional
    ``gauge``: ``{"kind": "zero"|"constant"|"linear", "c": float, "mu": int}``.
    """
    from .spin import boost

    mass = float(doc.get("mass", 1.0))
    branch = int(doc.get("branch", 1))
    rapidity = float(doc.get("rapidity", 0.0))
    if rapidity:
        direction = doc.get("direction", [1.0, 0.0, 0.0])
        wave = boosted_wave(branch, mass, boost(direction, rapidity), gen)
    else:
        wave = rest_frame_wave(branch, mass)
    g = doc.get("gauge", {"kind": "zero"})
    lam = gauge_lambda(g.get("kind", "zero"), float(g.get("c", 0.0)), int(g.get("mu", 0)))
    return wave, lam
