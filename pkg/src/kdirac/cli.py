"""Command-line driver: ``kdirac verify <suite>`` and ``kdirac demo <what>``.

Exit codes: 0 every check passed, 1 some check failed, 2 usage or
configuration error.  Every flag may also be set through an environment
variable ``KDIRAC_<FLAG>`` (for example ``KDIRAC_SEED=7``); explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from .suites import SUITES, RunConfig, run_suite

ENV_PREFIX = "KDIRAC_"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEMOS = ("gamma-matrices", "plane-wave", "boost", "gauge")
DEMO_POINTS = ((0.0, 0.0, 0.0, 0.0), (0.4, -0.3, 0.8, 1.1), (-1.2, 0.5, 0.1, -0.7))
DEMO_TOL = 1e-10


class UsageError(Exception):
    pass


def _env(name: str, cast, default):
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise UsageError(f"invalid {ENV_PREFIX}{name.upper()}={raw!r}: {exc}") from None


def _common(p: argparse.ArgumentParser, formats=("json", "markdown")) -> None:
    p.add_argument("--backend", choices=("exact", "float"), default=_env("backend", str, "exact"))
    p.add_argument("--tolerance", type=float, default=_env("tolerance", float, 1e-12))
    p.add_argument("--fd-step", type=float, default=_env("fd_step", float, 1e-3))
    p.add_argument("--seed", type=int, default=_env("seed", int, 0))
    p.add_argument("--samples", type=int, default=_env("samples", int, None))
    p.add_argument("--out", default=_env("out", str, None), help="write output here instead of stdout")
    p.add_argument("--format", choices=formats, default=_env("format", str, formats[0]))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kdirac", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    _common(v)

    dm = sub.add_parser("demo", help="print worked examples")
    dm.add_argument("what", choices=DEMOS)
    _common(dm, formats=("text", "json"))
    dm.add_argument("--mass", type=float, default=_env("mass", float, 1.0))
    dm.add_argument("--branch", type=int, choices=(1, 2, 3, 4), default=_env("branch", int, 1))
    dm.add_argument("--rapidity", type=float, default=_env("rapidity", float, 0.0))
    dm.add_argument("--direction", type=float, nargs=3, default=(1.0, 0.0, 0.0), metavar=("X", "Y", "Z"))
    dm.add_argument("--gauge", choices=("zero", "constant", "linear"), default="linear")
    dm.add_argument("--c", type=float, default=0.3, help="gauge constant")
    dm.add_argument("--mu", type=int, choices=range(4), default=1, help="coordinate of a linear gauge")
    dm.add_argument("--spec", default=None, help="JSON field spec: a path or an inline document")
    return parser


def _config(args) -> RunConfig:
    fmt = "json" if args.format == "text" else args.format
    try:
        return RunConfig(args.backend, args.tolerance, args.fd_step, args.seed, args.samples, fmt)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    cfg = _config(args)
    report = run_suite(args.suite, cfg)
    _emit(report.render(cfg.report_format), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# demos
# ---------------------------------------------------------------------------


def _load_spec(text: str | None) -> dict | None:
    if text is None:
        return None
    try:
        if os.path.exists(text):
            with open(text, encoding="utf-8") as fh:
                return json.load(fh)
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read field spec: {exc}") from None


def _matrix_text(mat) -> str:
    from .gamma import format_matrix

    return format_matrix(mat)


def demo_gamma_matrices(args) -> tuple[dict, str, bool]:
    from .gamma import DIRAC_MATRICES, gamma_matrices, matrices_equal, matrix_to_json
    from .generators import default_generators
    from .scalars import get_backend

    backend = get_backend(args.backend)
    mats = gamma_matrices(default_generators(backend), backend)
    match = [matrices_equal(m, p) if backend.exact else bool(np.allclose(m, np.array(p, dtype=complex))) for m, p in zip(mats, DIRAC_MATRICES)]
    doc = {
        "demo": "gamma-matrices",
        "matrices": {f"gamma{mu}": matrix_to_json(m) for mu, m in enumerate(mats)},
        "matches_dirac_representation": match,
    }
    lines = []
    for mu, m in enumerate(mats):
        lines += [f"gamma^{mu}:", _matrix_text(m), ""]
    lines.append(f"matches Dirac representation: {all(match)}")
    return doc, "\n".join(lines) + "\n", all(match)


def _wave_and_gauge(args, fr):
    from .dirac import boosted_wave, gauge_lambda, rest_frame_wave, wave_from_json
    from .spin import boost

    doc = _load_spec(args.spec)
    try:
        if doc is not None:
            return wave_from_json(doc, fr)
        if args.mass < 0:
            raise ValueError("mass must be nonnegative")
        if args.rapidity:
            wave = boosted_wave(args.branch, args.mass, boost(args.direction, args.rapidity), fr)
        else:
            wave = rest_frame_wave(args.branch, args.mass)
        return wave, gauge_lambda(args.gauge, args.c, args.mu)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def demo_plane_wave(args) -> tuple[dict, str, bool]:
    from .dirac import Frame, QEDConfig, dirac_residual, even_field, tensor_residual
    from .generators import default_generators
    from .scalars import FLOAT

    fr = Frame(default_generators(FLOAT))
    wave, _ = _wave_and_gauge(args, fr)
    cfg = QEDConfig(m=wave.mass)
    psi = wave.column_field()
    Psi = even_field(psi, fr)
    rows = []
    for x in DEMO_POINTS:
        rt = tensor_residual(Psi, None, cfg, fr, x).norm()
        rd = float(np.linalg.norm(dirac_residual(psi, None, cfg, fr.gammas, x)))
        rows.append({"x": list(x), "tensor_residual": rt, "dirac_residual": rd})
    ok = all(r["tensor_residual"] <= DEMO_TOL and r["dirac_residual"] <= DEMO_TOL for r in rows)
    doc = {
        "demo": "plane-wave",
        "mass": wave.mass,
        "momentum": list(wave.momentum),
        "amplitude": [[a.real, a.imag] for a in map(complex, wave.amplitude)],
        "points": rows,
        "tolerance": DEMO_TOL,
        "passed": ok,
    }
    lines = [
        f"mass {wave.mass:g}, momentum p = ({', '.join(f'{p:.6g}' for p in wave.momentum)})",
        f"amplitude = ({', '.join(f'{complex(a):.6g}' for a in wave.amplitude)})",
        "",
        "| x | tensor residual | Dirac residual |",
        "|---|---|---|",
    ]
    lines += [f"| {tuple(r['x'])} | {r['tensor_residual']:.3e} | {r['dirac_residual']:.3e} |" for r in rows]
    lines.append(f"\nboth residuals <= {DEMO_TOL:g}: {ok}")
    return doc, "\n".join(lines) + "\n", ok


def demo_boost(args) -> tuple[dict, str, bool]:
    from .spin import LorentzError, boost, check_lorentz, spin_from_lorentz, vector_rep

    if np.linalg.norm(args.direction) == 0:
        raise UsageError("direction must be nonzero")
    s = boost(args.direction, args.rapidity)
    L = vector_rep(s)
    failed = check_lorentz(L.P)
    s1, _ = spin_from_lorentz(L.P)
    roundtrip = min((s1 - s).norm(), (s1 + s).norm())
    expected = math.cosh(args.rapidity)
    ok = not failed and abs(L.P[0, 0] - expected) <= 1e-12 and roundtrip <= 1e-10
    doc = {
        "demo": "boost",
        "rapidity": args.rapidity,
        "direction": list(args.direction),
        "spin_element": str(s),
        "P": L.to_json(),
        "p00": float(L.P[0, 0]),
        "cosh_rapidity": expected,
        "lorentz_conditions": L.conditions(),
        "reconstruction_error": roundtrip,
        "passed": ok,
    }
    with np.printoptions(precision=6, suppress=True):
        text = (
            f"S = {s}\n\nP =\n{L.P}\n\n"
            f"p^0_0 = {L.P[0, 0]:.6f} (cosh {args.rapidity:g} = {expected:.6f})\n"
            f"reconstruction error = {roundtrip:.3e}\n"
        )
    return doc, text, ok


def demo_gauge(args) -> tuple[dict, str, bool]:
    from .dirac import Frame, QEDConfig, current, even_field, gauge_transform, tensor_residual
    from .generators import default_generators
    from .scalars import FLOAT

    fr = Frame(default_generators(FLOAT))
    wave, lam = _wave_and_gauge(args, fr)
    cfg = QEDConfig(m=wave.mass)
    Psi = even_field(wave.column_field(), fr)
    Psi2, A2 = gauge_transform(Psi, None, lam, fr)
    rows = []
    for x in DEMO_POINTS:
        rows.append(
            {
                "x": list(x),
                "residual_before": tensor_residual(Psi, None, cfg, fr, x).norm(),
                "residual_after": tensor_residual(Psi2, A2, cfg, fr, x).norm(),
                "current_change": (current(Psi2(x), fr) - current(Psi(x), fr)).norm(),
                "A_prime": str(A2(x)),
            }
        )
    ok = all(max(r["residual_before"], r["residual_after"], r["current_change"]) <= 1e-9 for r in rows)
    doc = {"demo": "gauge", "points": rows, "passed": ok}
    lines = ["| x | residual | residual after gauge | change of J | A' |", "|---|---|---|---|---|"]
    lines += [
        f"| {tuple(r['x'])} | {r['residual_before']:.3e} | {r['residual_after']:.3e} | {r['current_change']:.3e} | {r['A_prime']} |"
        for r in rows
    ]
    return doc, "\n".join(lines) + "\n", ok


DEMO_FUNCTIONS = {
    "gamma-matrices": demo_gamma_matrices,
    "plane-wave": demo_plane_wave,
    "boost": demo_boost,
    "gauge": demo_gauge,
}


def cmd_demo(args) -> int:
    _config(args)
    doc, text, ok = DEMO_FUNCTIONS[args.what](args)
    if args.format == "json":
        from .report import _jsonable

        text = json.dumps(_jsonable(doc), indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = build_parser()
    except UsageError as exc:
        print(f"kdirac: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "verify":
            return cmd_verify(args)
        return cmd_demo(args)
    except UsageError as exc:
        print(f"kdirac: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
