"""Verification batteries behind ``kdirac verify``.

Each suite is a function ``(RunConfig) -> list[Check]``.  Algebraic suites
honour the configured backend; field suites always evaluate in floating
point with fixed tolerance tiers (one analytic derivative, finite
differences, solution families).
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, replace
from typing import Callable

import numpy as np

from .algebra import (
    BLADE_ORDER,
    DIM,
    GRADE,
    HODGE,
    METRIC,
    NBLADES,
    PRODUCT_SIGN,
    MultiVector,
    anticommutator,
    basis_vector,
    blade_indices,
    dagger,
    e,
    hodge_star,
    random_multivector,
    star_conj,
    trace,
    volume_form,
    wedge,
)
from .dirac import (
    Frame,
    QEDConfig,
    column_field,
    column_from_even,
    current,
    dirac_residual,
    equivalence_check,
    even_field,
    even_from_column,
    exp_lambda_I,
    gauge_lambda,
    gauge_transform,
    charge_conservation_residual,
    lagrangian,
    maxwell_residuals,
    rest_frame_wave,
    boosted_wave,
    tensor_residual,
)
from .fields import (
    AnalyticForm,
    ConstantField,
    ExpPoly,
    codifferential,
    codifferential_star,
    differential,
    dirac_operator,
    d,
    delta,
    finite_difference_partial,
    random_analytic_form,
    random_exppoly,
    random_point,
    scalar_field,
)
from .gamma import DIRAC_MATRICES, conj_transpose, gamma, gamma_matrices, identity, to_complex
from .generators import (
    GeneratorSet,
    basis16,
    default_generators,
    from_components,
    idempotent,
    ideal_dimension,
    even_map_real_rank,
    form_rank,
    inner,
    solve_ideal_equation,
    validate_generators,
)
from .oracles import hodge_levi_civita, rational_spin, reduce_word
from .report import Check, Report
from .scalars import EXACT, FLOAT, Backend, QComplex, get_backend
from .spin import (
    G,
    boost,
    check_lorentz,
    covariance_check,
    double_cover_demo,
    exp_bivector,
    grade_leakage,
    is_spin,
    random_spin,
    rotation,
    spin_from_lorentz,
    vector_rep,
)

ANALYTIC_TOL = 1e-9
FD_TOL = 1e-7
SOLUTION_TOL = 1e-8
LAGRANGIAN_REAL_TOL = 1e-12

SUITES = ("algebra", "generators", "gamma", "fields", "equivalence", "gauge", "conservation", "spin")
ALGEBRAIC_SUITES = ("algebra", "generators", "gamma")


@dataclass(frozen=True)
class RunConfig:
    backend: str = "exact"
    tolerance: float = 1e-12
    fd_step: float = 1e-3
    seed: int = 0
    # overrides every per-check sample count when set
    samples: int | None = None
    report_format: str = "json"

    def __post_init__(self):
        if self.backend not in ("exact", "float"):
            raise ValueError(f"backend must be 'exact' or 'float', got {self.backend!r}")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        if not self.fd_step > 0:
            raise ValueError("fd_step must be > 0")
        if self.samples is not None and self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.report_format not in ("json", "markdown"):
            raise ValueError(f"format must be 'json' or 'markdown', got {self.report_format!r}")

    @property
    def exact(self) -> bool:
        return self.backend == "exact"

    def scalar_backend(self) -> Backend:
        return get_backend(self.backend, self.tolerance)

    def n(self, default: int) -> int:
        return default if self.samples is None else self.samples

    def rng(self, salt: int) -> np.random.Generator:
        # independent stream per check so that adding checks never shifts others
        return np.random.default_rng([self.seed, salt])

    def to_dict(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _mv_residual(mv: MultiVector) -> float:
    r = mv.norm()
    if r == 0 and any(mv.coeffs):
        return 5e-324
    return r


def _mat_residual(a, b) -> float:
    if a.dtype == object or b.dtype == object:
        diffs = [x - y for x, y in zip(a.ravel(), b.ravel())]
        if all(not dv for dv in diffs):
            return 0.0
        return max(max(abs(complex(dv)) for dv in diffs), 5e-324)
    return float(np.abs(a - b).max())


class _Battery:
    """Collects checks for a suite with the config-dependent comparison mode."""

    def __init__(self, cfg: RunConfig, exact: bool | None = None):
        self.cfg = cfg
        self.exact = cfg.exact if exact is None else exact
        self.backend = EXACT if self.exact else get_backend("float", cfg.tolerance)
        self.checks: list[Check] = []

    def one(self):
        return self.backend.one()

    def algebraic(self, cid, ref, residual, **detail):
        self.checks.append(Check(cid, ref, float(residual), self.cfg.tolerance, self.exact, detail))

    def exact_check(self, cid, ref, residual, **detail):
        self.checks.append(Check(cid, ref, float(residual), 0.0, True, detail))

    def tol(self, cid, ref, residual, tol, **detail):
        self.checks.append(Check(cid, ref, float(residual), tol, False, detail))


def _rand(rng, backend, grades=range(DIM + 1), real=False):
    return random_multivector(rng, backend, grades, real)


def _random_generators(rng, gen, exact: bool):
    s = rational_spin(rng) if exact else random_spin(rng)
    return gen.conjugated(s, tol=0.0 if exact else 1e-12)


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------


def suite_algebra(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg)
    one = b.one()
    ev = [basis_vector(mu, one) for mu in range(DIM)]

    worst = 0.0
    for mu in range(DIM):
        for nu in range(DIM):
            g = MultiVector.scalar(one * (2 * METRIC[mu] if mu == nu else 0))
            worst = max(worst, _mv_residual(ev[mu] * ev[nu] + ev[nu] * ev[mu] - g))
    b.algebraic("algebra.clifford_relation", "e^mu e^nu + e^nu e^mu = 2 g^{mu nu}", worst, pairs=16)

    table_errors = 0
    for a in range(NBLADES):
        for c in range(NBLADES):
            sign, word = reduce_word(blade_indices(a) + blade_indices(c))
            if sum(1 << i for i in word) != a ^ c or sign != PRODUCT_SIGN[a][c]:
                table_errors += 1
    b.exact_check(
        "algebra.product_table_vs_rewriting",
        "closure of the central product under the rewriting rules",
        table_errors,
        pairs=256,
    )

    hodge_errors = 0
    for m in range(NBLADES):
        (k, v), = hodge_levi_civita(blade_indices(m)).items()
        if sum(1 << i for i in k) != HODGE[m][0] or v != HODGE[m][1]:
            hodge_errors += 1
    b.exact_check("algebra.hodge_vs_levi_civita", "Hodge star from the Levi-Civita symbol", hodge_errors)

    worst = 0.0
    for m in range(NBLADES):
        u = MultiVector.blade(m, one)
        k = GRADE[m]
        worst = max(worst, _mv_residual(hodge_star(hodge_star(u)) - u * ((-1) ** (k + 1))))
    b.algebraic("algebra.star_star", "star star U = (-1)^(k+1) U", worst, blades=16)

    rng = cfg.rng(101)
    n = cfg.n(1000)
    basis = [MultiVector.blade(m, one) for m in range(NBLADES)]
    worst = 0.0
    for _ in range(n):
        u = _rand(rng, b.backend, grades=(1,))
        for v in basis:
            worst = max(worst, _mv_residual(u * v - (wedge(u, v) - hodge_star(wedge(u, hodge_star(v))))))
    b.algebraic("algebra.uv_identity", "UV = U^V - star(U^star V) for U in Lambda_1", worst, samples=n)

    rng = cfg.rng(102)
    n = cfg.n(200)
    worst = 0.0
    for _ in range(n):
        u, v, w = (_rand(rng, b.backend) for _ in range(3))
        worst = max(worst, _mv_residual((u * v) * w - u * (v * w)))
    b.algebraic("algebra.associativity", "(UV)W = U(VW)", worst, samples=n)

    rng = cfg.rng(103)
    ell = volume_form(one)
    worst = 0.0
    for _ in range(n):
        u = _rand(rng, b.backend)
        ue, uo = u.even(), u.odd()
        worst = max(worst, _mv_residual(ell * ue - ue * ell), _mv_residual(ell * uo + uo * ell))
    b.algebraic("algebra.volume_form_parity", "l commutes with even forms, anticommutes with odd", worst, samples=n)

    rng = cfg.rng(104)
    h = ev[0]
    worst_star = worst_dag = 0.0
    for _ in range(n):
        u, v = _rand(rng, b.backend), _rand(rng, b.backend)
        worst_star = max(
            worst_star,
            _mv_residual(star_conj(u * v) - star_conj(v) * star_conj(u)),
            _mv_residual(star_conj(star_conj(u)) - u),
        )
        worst_dag = max(
            worst_dag,
            _mv_residual(dagger(u * v, h) - dagger(v, h) * dagger(u, h)),
            _mv_residual(dagger(dagger(u, h), h) - u),
        )
    b.algebraic("algebra.star_conjugation", "(UV)* = V*U*, U** = U", worst_star, samples=n)
    b.algebraic("algebra.dagger", "(UV)+ = V+U+, U++ = U with U+ = H U* H", worst_dag, samples=n)

    rng = cfg.rng(105)
    worst = 0.0
    for _ in range(n):
        u, v = _rand(rng, b.backend), _rand(rng, b.backend)
        diff = trace(u * v - v * u)
        worst = max(worst, abs(complex(diff)) if diff else 0.0)
    b.algebraic("algebra.trace_cyclicity", "Tr(UV - VU) = 0", worst, samples=n)

    trace_errors = int(trace(MultiVector.scalar(one)) != one) + sum(
        1 for m in range(1, NBLADES) if trace(MultiVector.blade(m, one))
    )
    b.exact_check("algebra.trace_basis", "Tr(1) = 1, Tr(blade of grade > 0) = 0", trace_errors)

    rng = cfg.rng(106)
    worst = 0.0
    for _ in range(n):
        u = _rand(rng, b.backend)
        parts = [u.grade(k) for k in range(DIM + 1)]
        total = sum(parts[1:], parts[0])
        worst = max(worst, _mv_residual(total - u), *(_mv_residual(p.grade(k) - p) for k, p in enumerate(parts)))
    b.algebraic("algebra.grade_projection", "Lambda = Lambda_0 + ... + Lambda_4", worst, samples=n)
    return b.checks


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def _ideal_checks(b: _Battery, gen: GeneratorSet, prefix: str, rng, n_roundtrip: int, n_positive: int):
    basis = idempotent(gen, b.backend)
    one = MultiVector.scalar(b.one())
    t, H, I = basis.t, basis.gen.H, basis.gen.I
    i_unit = b.backend.i()
    r = max(_mv_residual(t * t - t), _mv_residual(H * t - t), _mv_residual(I * t - t * i_unit))
    b.algebraic(f"{prefix}.idempotent", "t^2 = t, Ht = t, It = it", r)

    worst = 0.0
    for k, tk in enumerate(basis.tk):
        for m, tn in enumerate(basis.tk):
            val = b.backend.coerce(inner(tk, tn, H, 1e-12)) - (1 if k == m else 0)
            worst = max(worst, abs(complex(val)) if val else 0.0)
    b.algebraic(f"{prefix}.orthonormal", "(t_k, t_n) = delta_kn", worst)

    worst = 0.0
    for _ in range(n_roundtrip):
        psi = _rand(rng, b.backend, grades=(0, 2, 4), real=True)
        worst = max(worst, _mv_residual(solve_ideal_equation(psi * t, basis) - psi))
    b.algebraic(f"{prefix}.solve_roundtrip", "Psi t = Phi has the unique even solution Psi", worst, samples=n_roundtrip)

    worst_imag = 0.0
    nonpositive = 0
    for _ in range(n_positive):
        col = [b.backend.random_scalar(rng, real=False) for _ in range(4)]
        phi = from_components(col, basis)
        if phi.norm() == 0:
            continue
        val = complex(inner(phi, phi, H, 1e-12))
        worst_imag = max(worst_imag, abs(val.imag))
        nonpositive += val.real <= 0
    b.algebraic(f"{prefix}.positivity_imag", "(Phi, Phi) is real", worst_imag, samples=n_positive)
    b.exact_check(f"{prefix}.positivity_sign", "(Phi, Phi) > 0 for Phi != 0", nonpositive, samples=n_positive)
    return basis


def suite_generators(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg)
    gen = default_generators(b.backend)
    rep = validate_generators(gen.H, gen.I, gen.K, 0.0 if b.exact else cfg.tolerance)
    b.algebraic(
        "generators.conditions_default",
        "H^2 = 1, I^2 = K^2 = -1, [H,I] = [H,K] = {I,K} = 0",
        0.0 if rep.passed else max(max(c.residual for c in rep.conditions), 5e-324),
        failed=rep.failed(),
    )

    rng = cfg.rng(201)
    n = cfg.n(100)
    worst = 0.0
    failures = 0
    for _ in range(n):
        s = rational_spin(rng) if b.exact else random_spin(rng)
        ss = star_conj(s)
        rep = validate_generators(ss * gen.H * s, ss * gen.I * s, ss * gen.K * s, 0.0 if b.exact else cfg.tolerance)
        worst = max(worst, *(c.residual for c in rep.conditions))
        failures += not rep.passed
    b.algebraic(
        "generators.conditions_spin_conjugated",
        "S* H S, S* I S, S* K S satisfy the generator conditions",
        worst if failures or not b.exact else 0.0,
        samples=n,
        failures=failures,
    )

    _ideal_checks(b, gen, "generators.default", cfg.rng(202), cfg.n(1000), cfg.n(1000))

    exact_basis = idempotent(default_generators(EXACT), EXACT)
    b.exact_check("generators.ideal_dimension", "dim_C I(t) = 4", abs(ideal_dimension(exact_basis) - 4))
    b.exact_check(
        "generators.even_map_injective",
        "Psi -> Psi t injective on real Lambda_ev",
        abs(even_map_real_rank(exact_basis) - 8),
    )
    forms = basis16(default_generators(EXACT))
    b.exact_check("generators.basis16_rank", "16 products of 1, H, I, K, l span Lambda", abs(form_rank(forms) - 16))

    rng = cfg.rng(203)
    alt = _random_generators(rng, gen, b.exact)
    _ideal_checks(b, alt, "generators.conjugated", rng, cfg.n(100), cfg.n(100))
    return b.checks


# ---------------------------------------------------------------------------
# gamma
# ---------------------------------------------------------------------------


def suite_gamma(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg)
    gen = default_generators(b.backend)
    basis = idempotent(gen, b.backend)
    gammas = gamma_matrices(gen, b.backend)

    def as_matrix(m):
        return m if b.exact else to_complex(m)

    worst = max(_mat_residual(as_matrix(g), as_matrix(p)) for g, p in zip(gammas, DIRAC_MATRICES))
    b.algebraic("gamma.dirac_matrices", "gamma(e^mu) equals the displayed Dirac matrices", worst)

    b.algebraic(
        "gamma.identity",
        "gamma(1) = Id",
        _mat_residual(gamma(MultiVector.scalar(b.one()), basis), identity(b.exact) if b.exact else np.eye(4)),
    )

    def anticomm_residual(gs):
        worst = 0.0
        for mu in range(DIM):
            for nu in range(DIM):
                lhs = gs[mu] @ gs[nu] + gs[nu] @ gs[mu]
                rhs = np.eye(4) * (2 * METRIC[mu] if mu == nu else 0)
                if lhs.dtype == object:
                    rhs = np.vectorize(lambda x: QComplex(int(x.real)), otypes=[object])(rhs)
                worst = max(worst, _mat_residual(lhs, rhs))
        return worst

    b.algebraic("gamma.anticommutation", "gamma^mu gamma^nu + gamma^nu gamma^mu = 2 g^{mu nu} Id", anticomm_residual(gammas))

    rng = cfg.rng(301)
    alt = _random_generators(rng, gen, b.exact)
    b.algebraic(
        "gamma.anticommutation_conjugated",
        "anticommutation for Spin-conjugated generators",
        anticomm_residual(gamma_matrices(alt, b.backend)),
    )

    rng = cfg.rng(302)
    n = cfg.n(500)
    worst_hom = worst_lin = 0.0
    for _ in range(n):
        u, v = _rand(rng, b.backend), _rand(rng, b.backend)
        alpha = b.backend.random_scalar(rng, real=False)
        gu, gv = gamma(u, basis), gamma(v, basis)
        worst_hom = max(worst_hom, _mat_residual(gamma(u * v, basis), gu @ gv))
        worst_lin = max(
            worst_lin,
            _mat_residual(gamma(u + v, basis), gu + gv),
            _mat_residual(gamma(u * alpha, basis), gu * alpha),
        )
    b.algebraic("gamma.homomorphism", "gamma(UV) = gamma(U) gamma(V)", worst_hom, samples=n)
    b.algebraic("gamma.linearity", "gamma(U+V) = gamma(U)+gamma(V), gamma(aU) = a gamma(U)", worst_lin, samples=n)

    exact_basis = idempotent(default_generators(EXACT), EXACT)
    from .generators import exact_rank

    rows = [list(gamma(MultiVector.blade(m, QComplex(1)), exact_basis).ravel()) for m in range(NBLADES)]
    b.exact_check("gamma.faithful", "gamma of the 16 blades spans M(4,C)", abs(exact_rank(rows) - 16))

    rng = cfg.rng(303)
    n = cfg.n(200)
    worst = 0.0
    for _ in range(n):
        u = _rand(rng, b.backend)
        worst = max(worst, _mat_residual(gamma(dagger(u, gen.H), basis), conj_transpose(gamma(u, basis))))
    b.algebraic(
        "gamma.dagger_compatibility",
        "gamma(U+) = gamma(U)^H (empirical, not stated as a theorem)",
        worst,
        samples=n,
        empirical=True,
    )
    return b.checks


# ---------------------------------------------------------------------------
# fields
# ---------------------------------------------------------------------------


def _x0_e0() -> AnalyticForm:
    return AnalyticForm({1: ExpPoly.coordinate(0)})


def suite_fields(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg, exact=False)
    rng = cfg.rng(401)
    n = cfg.n(200)
    points_per_field = 10
    w_id = w_dd = w_del = w_star = w_grade = w_fd = w_mixed = 0.0
    for _ in range(n):
        F = random_analytic_form(rng)
        dF, deltaF = d(F), delta(F)
        k = int(rng.integers(0, DIM + 1))
        Fk = random_analytic_form(rng, grades=(k,))
        for _ in range(points_per_field):
            x = random_point(rng)
            w_id = max(w_id, (dirac_operator(F, x) - (dF(x) - deltaF(x))).norm())
            w_dd = max(w_dd, differential(dF, x).norm())
            w_del = max(w_del, codifferential(deltaF, x).norm())
            w_star = max(w_star, (deltaF(x) - codifferential_star(F, x)).norm())
            dk, deltak = differential(Fk, x), codifferential(Fk, x)
            up = dk - (dk.grade(k + 1) if k < DIM else MultiVector())
            down = deltak - (deltak.grade(k - 1) if k > 0 else MultiVector())
            w_grade = max(w_grade, up.norm(), down.norm())
        x = random_point(rng)
        mu, nu = (int(v) for v in rng.integers(0, DIM, size=2))
        w_mixed = max(w_mixed, (F.partial(mu).partial(nu)(x) - F.partial(nu).partial(mu)(x)).norm())
        exact_partial = F.partial(mu)(x)
        approx = finite_difference_partial(F, mu, x, cfg.fd_step)
        w_fd = max(w_fd, (approx - exact_partial).norm() / max(1.0, exact_partial.norm()))
    detail = {"fields": n, "points_per_field": points_per_field}
    b.tol("fields.operator_identity", "e^mu d_mu F = dF - delta F", w_id, ANALYTIC_TOL, **detail)
    b.tol("fields.d_squared", "d^2 = 0", w_dd, ANALYTIC_TOL, **detail)
    b.tol("fields.delta_squared", "delta^2 = 0", w_del, ANALYTIC_TOL, **detail)
    b.tol("fields.delta_vs_star_d_star", "delta = star d star (sign fixed by the operator identity)", w_star, ANALYTIC_TOL, **detail)
    b.tol("fields.grade_discipline", "d raises and delta lowers grade by one", w_grade, ANALYTIC_TOL, **detail)
    b.tol("fields.mixed_partials", "d_mu d_nu F = d_nu d_mu F", w_mixed, ANALYTIC_TOL, fields=n)
    b.tol("fields.fd_vs_analytic", "central difference agrees with analytic partial (relative)", w_fd, 1e-5, fields=n, fd_step=cfg.fd_step)

    x = np.array([0.3, -0.2, 0.5, 0.7])
    F = _x0_e0()
    one = MultiVector.scalar(1.0 + 0j)
    r = max(
        differential(F, x).norm(),
        (codifferential(F, x) + one).norm(),
        (dirac_operator(F, x) - one).norm(),
        (differential(scalar_field(ExpPoly.coordinate(0)), x) - basis_vector(0, 1.0 + 0j)).norm(),
    )
    b.tol("fields.examples", "d(x^0 e^0) = 0, delta(x^0 e^0) = -1, d x^0 = e^0", r, ANALYTIC_TOL)

    const = ConstantField(random_multivector(cfg.rng(402), FLOAT))
    r = max(max(differential(const, x).norm(), codifferential(const, x).norm(), dirac_operator(const, x).norm()), 0.0)
    b.tol("fields.constant", "constant fields have vanishing derivatives", r, 0.0)
    return b.checks


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------


def _random_potential(rng) -> AnalyticForm:
    return random_analytic_form(rng, grades=(1,), real=True)


def _boost_samples(rng, count: int) -> list[MultiVector]:
    out = []
    for i in range(count):
        if i % 2 == 0:
            out.append(boost(rng.normal(size=3), float(rng.uniform(-1.0, 1.0))))
        else:
            out.append(random_spin(rng, max_factors=3))
    return out


def _family(cfg: RunConfig, fr: Frame, m: float = 1.0, boosted: int = 20):
    rng = cfg.rng(590)
    waves = [rest_frame_wave(k, m) for k in (1, 2, 3, 4)]
    waves += [boosted_wave(i % 4 + 1, m, s, fr) for i, s in enumerate(_boost_samples(rng, boosted))]
    return waves


def suite_equivalence(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg, exact=False)
    fr = Frame(default_generators(FLOAT))
    qcfg = QEDConfig(m=1.0, tolerance=ANALYTIC_TOL, fd_step=cfg.fd_step, seed=cfg.seed)

    rng = cfg.rng(501)
    n = cfg.n(200)
    worst = 0.0
    small_residuals = 0
    for _ in range(n):
        Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
        A = _random_potential(rng)
        pts = [random_point(rng) for _ in range(3)]
        rep = equivalence_check(Psi, A, qcfg, fr, pts)
        worst = max(worst, rep.max_intertwining_error)
        small_residuals += min(min(p.tensor_norm, p.dirac_norm) for p in rep.points) <= 0.1
    b.tol(
        "equivalence.intertwining",
        "components of (tensor residual) Ht equal the Dirac residual",
        worst,
        ANALYTIC_TOL,
        fields=n,
        points_per_field=3,
    )
    b.exact_check(
        "equivalence.nonsolutions_detected",
        "random non-solutions have both residuals > 0.1",
        small_residuals,
        fields=n,
    )

    rng = cfg.rng(502)
    n = cfg.n(1000)
    worst = 0.0
    for _ in range(n):
        value = random_multivector(rng, FLOAT, grades=(0, 2, 4), real=True)
        col = column_from_even(value, fr)
        worst = max(worst, (even_from_column(col, fr) - value).norm())
        col2 = rng.uniform(-1, 1, 4) + 1j * rng.uniform(-1, 1, 4)
        worst = max(worst, float(np.abs(column_from_even(even_from_column(col2, fr), fr) - col2).max()))
    b.algebraic("equivalence.correspondence_inverse", "Psi t = psi^k t_k is a bijection", worst, samples=n)

    fam = _family(cfg, fr)
    rng = cfg.rng(503)
    pts = [random_point(rng, 2.0) for _ in range(10)]
    worst_rest = worst_boost = 0.0
    for i, wave in enumerate(fam):
        psi = wave.column_field()
        Psi = even_field(psi, fr)
        rep = equivalence_check(Psi, None, QEDConfig(m=wave.mass, tolerance=SOLUTION_TOL), fr, pts, psi=psi)
        r = max(rep.max_tensor_norm, rep.max_dirac_norm, rep.max_intertwining_error)
        if i < 4:
            worst_rest = max(worst_rest, r)
        else:
            worst_boost = max(worst_boost, r)
    b.tol("equivalence.rest_frame_family", "rest-frame plane waves solve both equations", worst_rest, SOLUTION_TOL, members=4)
    b.tol("equivalence.boosted_family", "boosted plane waves solve both equations", worst_boost, SOLUTION_TOL, members=len(fam) - 4)

    x = random_point(rng)
    zero_mass = QEDConfig(m=0.0)
    const = ConstantField(MultiVector.scalar(1.0 + 0j))
    r = max(
        tensor_residual(const, None, zero_mass, fr, x).norm(),
        (tensor_residual(const, None, qcfg, fr, x) - fr.HI).norm(),
    )
    b.tol("equivalence.constant_examples", "Psi = 1: residual m HI, zero when m = 0", r, ANALYTIC_TOL)
    return b.checks


# ---------------------------------------------------------------------------
# gauge
# ---------------------------------------------------------------------------


def _rational_phase(rng) -> tuple[MultiVector, MultiVector, MultiVector]:
    """exp(lam I), exp(-lam I) for lam with rational cos and sin."""
    from .oracles import pythagorean_pair

    I = default_generators(EXACT).I
    c, s = pythagorean_pair(rng, hyperbolic=False)
    one = MultiVector.scalar(QComplex(1))
    plus = one * QComplex(c) + I * QComplex(s)
    minus = one * QComplex(c) - I * QComplex(s)
    return plus, minus, I


def suite_gauge(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg, exact=False)
    fr = Frame(default_generators(FLOAT))
    qcfg = QEDConfig(m=1.0, tolerance=ANALYTIC_TOL, fd_step=cfg.fd_step, seed=cfg.seed)

    rng = cfg.rng(601)
    n = cfg.n(100)
    worst = worst_l = 0.0
    for _ in range(n):
        Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
        A = _random_potential(rng)
        lam = scalar_field(random_exppoly(rng, real=True))
        Psi2, A2 = gauge_transform(Psi, A, lam, fr)
        for _ in range(3):
            x = random_point(rng)
            phase = exp_lambda_I(lam(x).coeffs[0], fr.gen.I)
            lhs = tensor_residual(Psi2, A2, qcfg, fr, x)
            rhs = tensor_residual(Psi, A, qcfg, fr, x) * phase
            worst = max(worst, (lhs - rhs).norm())
            worst_l = max(worst_l, abs(lagrangian(Psi2, A2, qcfg, fr, x) - lagrangian(Psi, A, qcfg, fr, x)))
    b.tol("gauge.residual_covariance", "residual(Psi', A') = residual(Psi, A) exp(lam I)", worst, ANALYTIC_TOL, fields=n)
    b.tol("gauge.lagrangian_invariance", "L(Psi', A') = L(Psi, A)", worst_l, ANALYTIC_TOL, fields=n)

    rng = cfg.rng(602)
    n_exact = cfg.n(200)
    gen_e = default_generators(EXACT)
    current_errors = 0
    u1_errors = 0
    one = MultiVector.scalar(QComplex(1))
    for _ in range(n_exact):
        plus, minus, _ = _rational_phase(rng)
        u1_errors += star_conj(plus) != minus
        u1_errors += plus * minus != one
        value = random_multivector(rng, EXACT, grades=(0, 2, 4), real=True)
        current_errors += current(value * plus, gen_e) != current(value, gen_e)
    b.exact_check("gauge.current_invariance", "Psi' H Psi'* = Psi H Psi*", current_errors, samples=n_exact)
    b.exact_check("gauge.u1_identities", "exp(lam I)* = exp(-lam I) = exp(lam I)^-1", u1_errors, samples=n_exact)

    wave = rest_frame_wave(1, 1.0)
    Psi = even_field(wave.column_field(), fr)
    lam = gauge_lambda("linear", 0.3, 1)
    Psi2, A2 = gauge_transform(Psi, None, lam, fr)
    rng = cfg.rng(603)
    worst = worst_a = 0.0
    for _ in range(10):
        x = random_point(rng, 2.0)
        worst = max(worst, tensor_residual(Psi2, A2, qcfg, fr, x).norm())
        worst_a = max(worst_a, (A2(x) + e(1, value=0.3 + 0j)).norm())
    b.tol("gauge.rest_frame_linear", "gauge-transformed rest-frame wave solves with A' = -0.3 e^1", max(worst, worst_a), ANALYTIC_TOL)

    x = random_point(rng)
    Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
    P0, A0 = gauge_transform(Psi, None, gauge_lambda("zero"), fr)
    c = 0.7
    Pc, Ac = gauge_transform(Psi, None, gauge_lambda("constant", c), fr)
    r = max(
        (P0(x) - Psi(x)).norm(),
        A0(x).norm(),
        (Pc(x) - Psi(x) * exp_lambda_I(c, fr.gen.I)).norm(),
        Ac(x).norm(),
    )
    b.algebraic("gauge.catalog_examples", "lam = 0 is the identity; constant lam leaves A unchanged", r)

    fam = _family(cfg, fr)
    rng = cfg.rng(604)
    worst = 0.0
    for wave in fam:
        Psi = even_field(wave.column_field(), fr)
        for _ in range(5):
            x = random_point(rng, 2.0)
            worst = max(worst, abs(lagrangian(Psi, None, QEDConfig(m=wave.mass), fr, x)))
    b.tol("gauge.lagrangian_on_shell", "L = 0 on solutions", worst, ANALYTIC_TOL, members=len(fam))

    rng = cfg.rng(605)
    n = cfg.n(200)
    worst = 0.0
    for _ in range(n):
        Psi = random_analytic_form(rng, grades=(0, 2, 4), real=True)
        A = _random_potential(rng)
        worst = max(worst, abs(lagrangian(Psi, A, qcfg, fr, random_point(rng)).imag))
    b.tol("gauge.lagrangian_real", "L is real", worst, LAGRANGIAN_REAL_TOL, samples=n)

    # constant field value, compared with an independent exact expansion
    gen_e = default_generators(EXACT)
    Q = -(gen_e.H)  # (d - delta)1 = 0, A = 0, m = 1
    expected = trace(gen_e.H * (Q + star_conj(Q))) / 4
    measured = lagrangian(ConstantField(MultiVector.scalar(1.0 + 0j)), None, QEDConfig(m=1.0), fr, np.zeros(4))
    b.tol(
        "gauge.lagrangian_constant_field",
        "L for Psi = 1, A = 0, m = 1 (value recorded)",
        abs(measured - complex(expected)),
        LAGRANGIAN_REAL_TOL,
        value=measured.real,
        exact_expansion=str(expected.re),
    )
    return b.checks


# ---------------------------------------------------------------------------
# conservation
# ---------------------------------------------------------------------------


def suite_conservation(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg, exact=False)
    fr = Frame(default_generators(FLOAT))
    qcfg = QEDConfig(m=1.0, tolerance=FD_TOL, fd_step=cfg.fd_step, seed=cfg.seed)

    fam = _family(cfg, fr)
    rng = cfg.rng(701)
    worst = 0.0
    for wave in fam:
        Psi = even_field(wave.column_field(), fr)
        for _ in range(5):
            worst = max(worst, charge_conservation_residual(Psi, None, qcfg, fr, random_point(rng, 2.0)))
    b.tol("conservation.delta_j", "delta J = 0 on solutions (finite differences)", worst, FD_TOL, members=len(fam), fd_step=cfg.fd_step)

    rng = cfg.rng(702)
    n = cfg.n(10000)
    worst = 0.0
    for _ in range(n):
        value = random_multivector(rng, FLOAT, grades=(0, 2, 4), real=True)
        J = current(value, fr.gen)
        imag = max(abs(complex(c).imag) for c in J.coeffs) if any(J.coeffs) else 0.0
        worst = max(worst, (J - J.grade(1)).norm(), imag)
    b.algebraic("conservation.current_real_vector", "J = Psi H Psi* is a real 1-form", worst, samples=n)

    x = random_point(rng)
    wave = rest_frame_wave(1, 1.0)
    Psi = even_field(wave.column_field(), fr)
    r = max((current(Psi(x), fr.gen) - basis_vector(0, 1.0 + 0j)).norm(), 0.0)
    const_one = ConstantField(MultiVector.scalar(1.0 + 0j))
    r = max(r, charge_conservation_residual(const_one, None, qcfg, fr, x))
    b.tol("conservation.current_examples", "rest-frame wave and Psi = 1 both give J = e^0", r, ANALYTIC_TOL)

    rng = cfg.rng(703)
    n = cfg.n(100)
    worst = 0.0
    for _ in range(n):
        s = random_spin(rng)
        J = current(s, fr.gen)
        worst = max(worst, (J * J - MultiVector.scalar(1.0 + 0j)).norm())
    b.algebraic("conservation.current_spin_timelike", "J of a Spin element has J.J = 1", worst, samples=n)

    alpha = 0.5
    mcfg = replace(qcfg, alpha=alpha)
    zero = ConstantField(MultiVector())
    r1a, r1b = maxwell_residuals(zero, zero, const_one, replace(qcfg, alpha=0.0), fr, x)
    r2a, r2b = maxwell_residuals(zero, zero, const_one, mcfg, fr, x)
    A = AnalyticForm({1: ExpPoly.coordinate(1)})
    F = ConstantField(e(0, 1, value=-1.0 + 0j))
    r3a, _ = maxwell_residuals(A, F, const_one, mcfg, fr, x)
    r = max(
        r1a.norm(),
        r1b.norm(),
        r2a.norm(),
        (r2b + basis_vector(0, alpha + 0j)).norm(),
        r3a.norm(),
    )
    b.tol("conservation.maxwell_examples", "dA - F and delta F - alpha J on closed-form inputs", r, ANALYTIC_TOL)
    return b.checks


# ---------------------------------------------------------------------------
# spin
# ---------------------------------------------------------------------------


def suite_spin(cfg: RunConfig) -> list[Check]:
    b = _Battery(cfg, exact=False)
    tol = cfg.tolerance
    rng = cfg.rng(801)
    n = cfg.n(500)
    w_metric = w_det = w_round = 0.0
    bad_p00 = 0
    for _ in range(n):
        s = random_spin(rng)
        P = vector_rep(s).P
        w_metric = max(w_metric, float(np.abs(P.T @ G @ P - G).max()))
        w_det = max(w_det, abs(np.linalg.det(P) - 1))
        bad_p00 += P[0, 0] <= 0
        s1, s2 = spin_from_lorentz(P)
        w_round = max(w_round, min((s1 - s).norm(), (s2 - s).norm()))
    b.tol("spin.lorentz_metric", "P^T g P = g", w_metric, tol, samples=n)
    b.tol("spin.lorentz_det", "det P = 1", w_det, tol, samples=n)
    b.exact_check("spin.lorentz_orthochronous", "p^0_0 > 0", bad_p00, samples=n)
    b.tol("spin.reconstruction", "spin_from_lorentz(vector_rep(S)) contains S", w_round, 1e-10, samples=n)

    rng = cfg.rng(802)
    n = cfg.n(200)
    w_hom = w_closure = 0.0
    for _ in range(n):
        s1, s2 = random_spin(rng), random_spin(rng)
        w_hom = max(w_hom, float(np.abs(vector_rep(s1 * s2).P - vector_rep(s1).P @ vector_rep(s2).P).max()))
        prod = s1 * s2
        w_closure = max(w_closure, (star_conj(prod) * prod - MultiVector.scalar(1.0 + 0j)).norm(), prod.odd().norm())
    b.tol("spin.homomorphism", "vector_rep(S1 S2) = vector_rep(S1) vector_rep(S2)", w_hom, tol, samples=n)
    b.tol("spin.closure", "products of Spin elements are Spin elements", w_closure, tol, samples=n)

    rng = cfg.rng(803)
    n = cfg.n(100)
    worst = max(grade_leakage(random_spin(rng)) for _ in range(n))
    b.tol("spin.grade_preservation", "S* U S stays in Lambda_k", worst, tol, samples=n)

    theta = 0.7
    Pr = vector_rep(exp_bivector(e(1, 2, value=1.0 + 0j), theta)).P
    c, s = math.cos(theta), math.sin(theta)
    rot = np.eye(4)
    rot[1:3, 1:3] = [[c, -s], [s, c]]
    phi = 0.5
    Pb = vector_rep(exp_bivector(e(0, 1, value=1.0 + 0j), phi)).P
    r = max(
        float(np.abs(Pr - rot).max()),
        abs(Pb[0, 0] - math.cosh(phi)),
        float(np.abs(vector_rep(MultiVector.scalar(1.0 + 0j)).P - np.eye(4)).max()),
        max((x - y).norm() for x, y in zip(spin_from_lorentz(np.eye(4)), (MultiVector.scalar(1.0 + 0j), MultiVector.scalar(-1.0 + 0j)))),
    )
    b.tol("spin.closed_forms", "rotation and boost matrices; Id lifts to +-1", r, tol, rotation_det=float(np.linalg.det(rot)))

    demo = double_cover_demo()
    b.exact_check(
        "spin.double_cover",
        "2 pi rotation gives S = -1 with P = Id",
        int(not demo["sign_flip"]) + int(not demo["P_is_identity"]),
    )

    fr = Frame(default_generators(FLOAT))
    rng = cfg.rng(804)
    elements = [
        ("identity", MultiVector.scalar(1.0 + 0j)),
        ("boost_x", boost((1.0, 0.0, 0.0), 0.5)),
        ("rotation_z", rotation((0.0, 0.0, 1.0), 1.1)),
    ] + [(f"random_{i}", random_spin(rng, max_factors=3)) for i in range(cfg.n(5))]
    qcfg = QEDConfig(m=1.0, tolerance=SOLUTION_TOL)
    worst = {"a": 0.0, "b": 0.0, "c": 0.0}
    for i, (_, s) in enumerate(elements):
        psi = rest_frame_wave(i % 4 + 1, 1.0).column_field()
        pts = [random_point(rng, 2.0) for _ in range(5)]
        rep = covariance_check(s, psi, None, qcfg, fr, pts)
        for key in worst:
            worst[key] = max(worst[key], getattr(rep, key))
    names = {"a": "gamma transforms, column invariant", "b": "gamma invariant, column R psi", "c": "tensor residual invariant"}
    for key, label in names.items():
        b.tol(f"spin.covariance_{key}", f"covariance reading ({key}): {label}", worst[key], SOLUTION_TOL, elements=len(elements))
    return b.checks


SUITE_FUNCTIONS: dict[str, Callable[[RunConfig], list[Check]]] = {
    "algebra": suite_algebra,
    "generators": suite_generators,
    "gamma": suite_gamma,
    "fields": suite_fields,
    "equivalence": suite_equivalence,
    "gauge": suite_gauge,
    "conservation": suite_conservation,
    "spin": suite_spin,
}


def run_suite(name: str, cfg: RunConfig) -> Report:
    """Run one suite, or every suite for ``all``."""
    if name == "all":
        start = time.perf_counter()
        sections = []
        for sub in SUITES:
            backend = "exact" if sub in ALGEBRAIC_SUITES else "float"
            sections.append(run_suite(sub, replace(cfg, backend=backend)))
        return Report("all", [], cfg.to_dict(), time.perf_counter() - start, sections)
    if name not in SUITE_FUNCTIONS:
        raise KeyError(name)
    start = time.perf_counter()
    checks = SUITE_FUNCTIONS[name](cfg)
    config = cfg.to_dict()
    if name not in ALGEBRAIC_SUITES:
        config["field_backend"] = "float"
    return Report(name, checks, config, time.perf_counter() - start)
