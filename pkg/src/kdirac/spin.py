"""Spin(1,3): even unit forms and their action on 1-forms.

``S* e^mu S = p^mu_nu e^nu`` defines the Lorentz matrix ``P = vector_rep(S)``;
the assignment is multiplicative, ``vector_rep(S1 S2) = P1 @ P2``, and two
elements ``+-S`` share every ``P``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.transform import Rotation

from .algebra import (
    DIM,
    GRADE,
    NBLADES,
    MultiVector,
    basis_vector,
    blade_indices,
    e,
    star_conj,
)

G = np.diag([1.0, -1.0, -1.0, -1.0])
SERIES_TERMS = 24


class NotSpinError(ValueError):
    pass


class LorentzError(ValueError):
    """A matrix fails one of P^T g P = g, det P = 1, p^0_0 > 0."""

    def __init__(self, failed: list[str], P: np.ndarray):
        super().__init__("not a proper orthochronous Lorentz matrix: " + "; ".join(failed))
        self.failed = failed
        self.P = P


@dataclass(frozen=True)
class LorentzMatrix:
    """``P = ||p^mu_nu||`` (row mu) with its inverse ``Q``."""

    P: np.ndarray
    Q: np.ndarray

    @classmethod
    def from_matrix(cls, P) -> "LorentzMatrix":
        P = np.asarray(P, dtype=float)
        # P^{-1} = g P^T g for Lorentz matrices
        return cls(P, G @ P.T @ G)

    def conditions(self) -> dict[str, float]:
        """Residual of each defining condition (p00 reported as its value)."""
        return {
            "P^T g P = g": float(np.abs(self.P.T @ G @ self.P - G).max()),
            "det P = 1": float(abs(np.linalg.det(self.P) - 1.0)),
            "p^0_0 > 0": float(self.P[0, 0]),
            "QP = Id": float(np.abs(self.Q @ self.P - np.eye(DIM)).max()),
        }

    def to_json(self) -> list:
        return self.P.tolist()


def check_lorentz(P, tol: float = 1e-10) -> list[str]:
    """Names of the failing conditions (empty when ``P`` is in SO+(1,3))."""
    P = np.asarray(P, dtype=float)
    failed = []
    if P.shape != (DIM, DIM):
        return [f"shape {P.shape} is not 4x4"]
    r = np.abs(P.T @ G @ P - G).max()
    if r > tol:
        failed.append(f"P^T g P = g (residual {r:.3g})")
    dt = np.linalg.det(P)
    if abs(dt - 1.0) > tol:
        failed.append(f"det P = 1 (det = {dt:.6g})")
    if not P[0, 0] > 0:
        failed.append(f"p^0_0 > 0 (p^0_0 = {P[0, 0]:.6g})")
    return failed


def _unit(x=1.0):
    return complex(x)


def _is_real_bivector(b: MultiVector, tol: float) -> bool:
    return b.grades(tol) <= {2} and b.is_real(tol)


def exp_series(b: MultiVector, terms: int = SERIES_TERMS) -> tuple[MultiVector, float]:
    """Truncated power series of ``exp(b)``; returns the sum and a remainder bound.

    The bound uses ``|b^n| <= c^n`` with ``c`` the operator norm of left
    multiplication by ``b`` on the 16 blade coefficients.
    """
    out = MultiVector.scalar(_unit())
    term = MultiVector.scalar(_unit())
    for n in range(1, terms):
        term = (term * b) / n
        out = out + term
    c = _left_mult_norm(b)
    bound = c**terms / math.factorial(terms) * math.exp(c)
    return out, bound


def _left_mult_norm(b: MultiVector) -> float:
    mat = np.array([(b * MultiVector.blade(m, _unit())).to_numpy() for m in range(NBLADES)]).T
    return float(np.linalg.norm(mat, 2))


def exp_bivector(b: MultiVector, theta: float = 1.0, tol: float = 1e-12) -> MultiVector:
    """``exp(theta/2 * B)`` for a real bivector ``B``.

    Closed forms when ``B^2 = -1`` (rotation plane) or ``B^2 = +1`` (boost
    plane); other bivectors use the truncated series.
    """
    if not _is_real_bivector(b, tol):
        raise ValueError("exp_bivector needs a real grade-2 form")
    b = b.map(lambda c: complex(c) if c else 0)
    sq = b * b
    rest = (sq - MultiVector.scalar(sq.coeffs[0])).norm()
    half = theta / 2.0
    if rest <= tol and abs(complex(sq.coeffs[0]) + 1) <= tol:
        return MultiVector.scalar(_unit(math.cos(half))) + b * math.sin(half)
    if rest <= tol and abs(complex(sq.coeffs[0]) - 1) <= tol:
        return MultiVector.scalar(_unit(math.cosh(half))) + b * math.sinh(half)
    s, bound = exp_series(b * half)
    if bound > tol:
        raise ValueError(f"series remainder bound {bound:.3g} exceeds tolerance; bivector too large")
    return s


def is_spin(s: MultiVector, tol: float = 1e-12) -> bool:
    """``S`` even, real and ``S* S = 1``."""
    if not s.is_even(tol) or not s.is_real(tol):
        return False
    return (star_conj(s) * s - MultiVector.scalar(1)).norm() <= tol


def conjugate_by(s: MultiVector, u: MultiVector) -> MultiVector:
    """``S* U S``."""
    return star_conj(s) * u * s


def vector_rep(s: MultiVector, tol: float = 1e-10) -> LorentzMatrix:
    """Lorentz matrix of ``S``: ``S* e^mu S = p^mu_nu e^nu``."""
    if not is_spin(s, tol):
        raise NotSpinError("S is not in Spin(1,3)")
    P = np.zeros((DIM, DIM))
    for mu in range(DIM):
        img = conjugate_by(s, basis_vector(mu, _unit()))
        leak = (img - img.grade(1)).norm()
        if leak > tol:
            raise NotSpinError(f"S* e^{mu} S leaves grade 1 (leak {leak:.3g})")
        if not img.is_real(tol):
            raise NotSpinError(f"S* e^{mu} S is not real")
        for nu in range(DIM):
            P[mu, nu] = complex(img.coeffs[1 << nu]).real
    return LorentzMatrix.from_matrix(P)


def grade_leakage(s: MultiVector) -> float:
    """Largest off-grade part of ``S* e^A S`` over the 16 basis blades."""
    worst = 0.0
    for m in range(NBLADES):
        img = conjugate_by(s, MultiVector.blade(m, _unit()))
        worst = max(worst, (img - img.grade(GRADE[m])).norm())
    return worst


def rotation_bivector(axis: Sequence[float]) -> MultiVector:
    """Unit bivector of the plane orthogonal to ``axis``; right-handed about it."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    return e(2, 3, value=_unit(n[0])) + e(1, 3, value=_unit(-n[1])) + e(1, 2, value=_unit(n[2]))


def boost_bivector(direction: Sequence[float]) -> MultiVector:
    n = np.asarray(direction, dtype=float)
    n = n / np.linalg.norm(n)
    return sum((e(0, i, value=_unit(n[i - 1])) for i in range(1, DIM)), MultiVector())


def rotation(axis: Sequence[float], angle: float) -> MultiVector:
    return exp_bivector(rotation_bivector(axis), angle)


def boost(direction: Sequence[float], rapidity: float) -> MultiVector:
    """Spin element whose Lorentz matrix has first row (cosh r, sinh r * n)."""
    return exp_bivector(boost_bivector(direction), rapidity)


def normalize_sign(s: MultiVector, tol: float = 1e-12) -> MultiVector:
    """Representative of ``+-S`` whose first nonzero coefficient is positive."""
    for c in s.coeffs:
        if c and abs(complex(c)) > tol:
            return s if complex(c).real > 0 else -s
    return s


def spin_from_lorentz(P, tol: float = 1e-10) -> tuple[MultiVector, MultiVector]:
    """The pair ``(S, -S)`` with ``vector_rep(S) = P`` (``S`` sign-normalized).

    ``P = R B`` with ``B`` the pure boost carrying ``e^0`` to row 0 of ``P``
    and ``R`` a spatial rotation; then ``S = S_R S_B``.
    """
    P = np.asarray(P, dtype=float)
    failed = check_lorentz(P, tol)
    if failed:
        raise LorentzError(failed, P)
    row = P[0]
    spatial = row[1:]
    k = float(np.linalg.norm(spatial))
    if k > 0:
        rapidity = math.asinh(k)
        s_b = boost(spatial / k, rapidity)
    else:
        s_b = MultiVector.scalar(_unit())
    b_mat = vector_rep(s_b, tol).P
    r_mat = P @ (G @ b_mat.T @ G)
    rot3 = r_mat[1:, 1:]
    # polar cleanup of rounding before axis-angle extraction
    u, _, vt = np.linalg.svd(rot3)
    rot3 = u @ vt
    rotvec = Rotation.from_matrix(rot3).as_rotvec()
    angle = float(np.linalg.norm(rotvec))
    if angle > 0:
        s_r = rotation(rotvec / angle, angle)
    else:
        s_r = MultiVector.scalar(_unit())
    s = normalize_sign(s_r * s_b)
    return s, -s


def random_spin(rng: np.random.Generator, max_factors: int = 4) -> MultiVector:
    """Product of 1..max_factors exponentials of random real bivectors."""
    n = int(rng.integers(1, max_factors + 1))
    s = MultiVector.scalar(_unit())
    planes = [(i, j) for i in range(DIM) for j in range(i + 1, DIM)]
    for _ in range(n):
        kind = rng.integers(3)
        if kind == 0:
            s = s * rotation(rng.normal(size=3), float(rng.uniform(-np.pi, np.pi)))
        elif kind == 1:
            s = s * boost(rng.normal(size=3), float(rng.uniform(-1.0, 1.0)))
        else:
            # general (non-simple) bivector through the series
            b = sum(
                (e(i, j, value=_unit(rng.uniform(-0.5, 0.5))) for i, j in planes), MultiVector()
            )
            s = s * exp_bivector(b, 1.0)
    return s


def exterior_power(P: np.ndarray) -> np.ndarray:
    """16x16 matrix ``E`` with column A holding ``e'^A`` in the e-basis,
    where ``e'^mu = p^mu_nu e^nu``."""
    from .algebra import wedge

    E = np.zeros((NBLADES, NBLADES), dtype=complex)
    primed = [MultiVector.vector([complex(P[mu, nu]) for nu in range(DIM)]) for mu in range(DIM)]
    for m in range(NBLADES):
        mv = MultiVector.scalar(_unit())
        for mu in blade_indices(m):
            mv = wedge(mv, primed[mu])
        E[:, m] = mv.to_numpy()
    return E


# ---------------------------------------------------------------------------
# covariance of the correspondence under x -> P x
# ---------------------------------------------------------------------------


@dataclass
class CovarianceReport:
    """Worst residual of each reading over the sampled points.

    ``a``: gamma matrices transform, ``psi`` invariant (R^-1 gamma R form).
    ``b``: gamma invariant, column transforms as ``R psi``.
    ``c``: tensor residual computed in primed components equals the original.
    """

    a: float
    b: float
    c: float
    tolerance: float
    worst_points: dict

    @property
    def failed(self) -> list[str]:
        return [k for k in ("a", "b", "c") if getattr(self, k) > self.tolerance]

    @property
    def passed(self) -> bool:
        return not self.failed

    def to_dict(self) -> dict:
        return {
            "a_gamma_transforms": self.a,
            "b_spinor_transforms": self.b,
            "c_tensor_invariant": self.c,
            "tolerance": self.tolerance,
            "failed": self.failed,
            "worst_points": self.worst_points,
        }


def covariance_check(s: MultiVector, psi, A, cfg, gen, points) -> CovarianceReport:
    """Check the Dirac equation for ``psi`` in coordinates ``x' = P x``.

    ``points`` are given in the new coordinates.  ``psi`` must solve the
    Dirac equation with potential ``A`` in the old coordinates.
    """
    from .dirac import Frame, dirac_residual, even_field, frame, tensor_residual
    from .fields import ChangeOfCoordinates, point
    from .gamma import gamma, to_complex
    from .generators import GeneratorSet

    fr = frame(gen)
    L = vector_rep(s)
    P, Q = L.P, L.Q
    R = to_complex(gamma(s, fr.basis))
    R_inv = to_complex(gamma(star_conj(s), fr.basis))
    gam = fr.gammas
    primed_gammas = [R_inv @ gam[mu] @ R for mu in range(DIM)]
    # gamma(e'^mu) computed directly must agree with R^-1 gamma^mu R
    gamma_mismatch = max(
        float(np.abs(primed_gammas[mu] - sum(P[mu, nu] * gam[nu] for nu in range(DIM))).max())
        for mu in range(DIM)
    )

    def a_comps(x):
        if A is None:
            return np.zeros(DIM, dtype=complex)
        a = A(x)
        return np.array([complex(a.coeffs[1 << nu]) for nu in range(DIM)])

    E = exterior_power(P)
    E_inv = np.linalg.inv(E)

    def to_primed(mv: MultiVector) -> MultiVector:
        return MultiVector.from_numpy(E_inv @ mv.to_numpy())

    phi = ChangeOfCoordinates(psi, Q, lambda v: R @ v)
    A_primed = None if A is None else ChangeOfCoordinates(A, Q, to_primed)
    Psi = even_field(psi, fr)
    Psi_primed = ChangeOfCoordinates(Psi, Q, to_primed)
    g = fr.gen
    gen_primed = GeneratorSet(to_primed(g.H), to_primed(g.I), to_primed(g.K), to_primed(g.ell))
    fr_primed = Frame(gen_primed)

    worst = {"a": 0.0, "b": 0.0, "c": 0.0}
    where = {}
    for y in points:
        y = point(y)
        x = Q @ y
        val = psi(x)
        dpsi = [psi.partial(nu)(x) for nu in range(DIM)]
        a = a_comps(x)
        res_a = 1j * cfg.m * val
        for mu in range(DIM):
            d_primed = sum(Q[nu, mu] * dpsi[nu] for nu in range(DIM))
            a_primed = sum(Q[nu, mu] * a[nu] for nu in range(DIM))
            res_a = res_a + primed_gammas[mu] @ (d_primed + 1j * a_primed * val)
        ra = float(np.linalg.norm(res_a)) + gamma_mismatch

        rb = float(np.linalg.norm(dirac_residual(phi, A_primed, cfg, gam, y)))

        r_old = tensor_residual(Psi, A, cfg, fr, x)
        r_new = tensor_residual(Psi_primed, A_primed, cfg, fr_primed, y)
        rc = float(np.linalg.norm(E @ r_new.to_numpy() - r_old.to_numpy()))

        for key, r in (("a", ra), ("b", rb), ("c", rc)):
            if r >= worst[key]:
                worst[key] = r
                where[key] = y.tolist()
    return CovarianceReport(worst["a"], worst["b"], worst["c"], cfg.tolerance, where)


def double_cover_demo(axis: Sequence[float] = (0.0, 0.0, 1.0)) -> dict:
    """Rotation by pi applied twice: ``S^2 = -1`` while its Lorentz matrix is Id."""
    s = rotation(axis, math.pi)
    s2 = s * s
    full = rotation(axis, 2 * math.pi)
    return {
        "S_pi": s,
        "S_pi_squared": s2,
        "S_2pi": full,
        "P_of_S_pi_squared": vector_rep(s2).P,
        "P_of_S_2pi": vector_rep(full).P,
        "sign_flip": (s2 + MultiVector.scalar(1.0 + 0j)).norm() < 1e-12
        and (full + MultiVector.scalar(1.0 + 0j)).norm() < 1e-12,
        "P_is_identity": bool(np.allclose(vector_rep(full).P, np.eye(DIM), atol=1e-12)),
    }
