"""Command line driver.

Loads geometry, automorphism, and one-form files, dispatches the checks,
and emits reports.  Exit code 0 means every check passed, 1 means at
least one failed, 2 means the input could not be used (unknown command,
missing or malformed file, dimension mismatch).

Reports print as text by default; ``--report json`` emits the full
precision record instead.  JSON output is deterministic for fixed inputs
(the wall time appears only in the text form).  The default relative
tolerance can be overridden by the NCT_TOL environment variable, and per
run by ``--tol``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from .clifford import MAX_M, charge_conjugation, gamma, grading_product
from .fluct import TwistedOneForm, verify_fluctuated
from .matlin import DEFAULT_TOL, Tolerance, anticommutator, dagger, fro
from .mintwist import (
    free_dirac_pointwise,
    gamma_tilde_diagnostics,
    twist_by_grading,
    uniqueness_engine,
)
from .report import Report
from .serialize import (
    automorphism_from_json,
    dump_json,
    geometry_from_json,
    load_json,
    matrix_from_json,
    matrix_to_json,
    one_form_from_json,
    twisted_from_json,
    twisted_marker_to_json,
)
from .sm import (
    DEFAULT_MAJORANA,
    DEFAULT_YUKAWAS,
    generalized_minimal_twist_check,
    label_swap_check,
    lean_generators,
    sm_first_order_residuals,
    sm_order_zero_residual,
    twisted_sm_geometry,
    verify_sm_twisted,
)
from .triple import verify_spectral_triple
from .twist import TwistedGeometry, verify_twisted


def _tolerance(args) -> Tolerance:
    rel = args.tol
    if rel is None:
        rel = float(os.environ.get("NCT_TOL", DEFAULT_TOL.rel))
    return Tolerance(rel=rel, abs=DEFAULT_TOL.abs)


def _emit(report: Report, args, started: float, artifact_out: bool = False) -> int:
    """Print the report and map it to an exit code.

    ``artifact_out`` marks subcommands whose --out writes a constructed
    object instead of the report file.
    """
    report.info["command"] = " ".join(args.command_echo)
    payload = report.to_json()
    if args.out and not artifact_out:
        with open(args.out, "w") as fh:
            fh.write(payload)
            fh.write("\n")
    if args.report == "json":
        print(payload)
    else:
        print(report.format_text())
        print(f"wall time: {time.perf_counter() - started:.3f}s")
    return 0 if report.ok else 1


def _gamma_report(m: int, tol: Tolerance) -> Report:
    data = gamma(m)
    rep = Report(f"gamma matrices, m={m} (dimension {data.dim})")
    n = data.dim
    eye = np.eye(n)
    r_sa = max(fro(g - dagger(g)) for g in data.gammas)
    rep.check("each gamma self-adjoint", r_sa, tol, 1.0)
    r_sq = max(fro(g @ g - eye) for g in data.gammas)
    rep.check("each gamma squares to one", r_sq, tol, 1.0)
    r_ac = 0.0
    for i, gi in enumerate(data.gammas):
        for gj in data.gammas[i + 1 :]:
            r_ac = max(r_ac, fro(anticommutator(gi, gj)))
    rep.check("distinct gammas anticommute", r_ac, tol, 1.0)
    rep.check(
        "grading is the signed product of the gammas",
        fro(data.grading - grading_product(data)),
        tol,
        1.0,
    )
    rep.check(
        "grading anticommutes with every gamma",
        max(fro(anticommutator(data.grading, g)) for g in data.gammas),
        tol,
        1.0,
    )
    if m <= 3:
        cc = charge_conjugation(m, tol)
        rep.add(
            "charge conjugation signs",
            True,
            0.0,
            0.0,
            note=f"eps={cc.eps}, eps''={cc.eps_dblprime}, branch {cc.branch()}",
        )
    return rep


def cmd_gamma(args) -> int:
    started = time.perf_counter()
    tol = _tolerance(args)
    data = gamma(args.m)
    rep = _gamma_report(args.m, tol)
    if args.report == "text":
        names = [f"gamma^{i + 1}" for i in range(2 * args.m)] + ["grading"]
        mats = list(data.gammas) + [data.grading]
        for name, mat in zip(names, mats):
            print(f"{name} =")
            print(np.array2string(mat, precision=3, suppress_small=True))
    if args.out:
        dump_json(
            {
                "m": args.m,
                "gammas": [matrix_to_json(g) for g in data.gammas],
                "grading": matrix_to_json(data.grading),
            },
            args.out,
        )
        rep.info["written"] = args.out
    return _emit(rep, args, started, artifact_out=True)


def cmd_verify(args) -> int:
    started = time.perf_counter()
    tol = _tolerance(args)
    obj = load_json(args.geometry)
    if obj.get("kind") == "twist-by-grading":
        if args.rho:
            raise ValueError("twisted geometry files carry their own twist; drop --rho")
        rep = verify_twisted(twisted_from_json(obj), tol)
    elif args.rho is not None:
        g = geometry_from_json(obj)
        rho = automorphism_from_json(load_json(args.rho))
        rep = verify_twisted(TwistedGeometry(g, rho), tol)
    elif args.twisted:
        raise ValueError("--twisted needs --rho or a twist-by-grading file")
    else:
        rep = verify_spectral_triple(geometry_from_json(obj), tol)
    return _emit(rep, args, started)


def cmd_twist_by_grading(args) -> int:
    started = time.perf_counter()
    tol = _tolerance(args)
    g = geometry_from_json(load_json(args.geometry))
    tg = twist_by_grading(g, tol)
    rep = verify_twisted(tg, tol)
    rep.info["u_rho_attached"] = tg.rho.u_rho is not None
    if args.out:
        dump_json(twisted_marker_to_json(g), args.out)
        rep.info["written"] = args.out
    return _emit(rep, args, started, artifact_out=True)


def cmd_fluctuate(args) -> int:
    started = time.perf_counter()
    tol = _tolerance(args)
    obj = load_json(args.geometry)
    if obj.get("kind") == "twist-by-grading":
        tg = twisted_from_json(obj)
    else:
        if args.rho is None:
            raise ValueError("fluctuate needs --rho unless the file carries a twist")
        tg = TwistedGeometry(
            geometry_from_json(obj), automorphism_from_json(load_json(args.rho))
        )
    terms = one_form_from_json(tg.algebra, load_json(args.form))
    form = TwistedOneForm.of(*terms)
    rep = verify_fluctuated(tg, form, tol)
    return _emit(rep, args, started)


def cmd_uniqueness(args) -> int:
    started = time.perf_counter()
    rep = uniqueness_engine(args.m, _tolerance(args))
    return _emit(rep, args, started)


def cmd_free_dirac(args) -> int:
    started = time.perf_counter()
    tol = _tolerance(args)
    if args.samples:
        mat = matrix_from_json(load_json(args.samples))
        if mat.shape != (2 * args.m, 2):
            raise ValueError(
                f"samples must be {2 * args.m}x2 (one (f, g) pair per direction), "
                f"got {mat.shape[0]}x{mat.shape[1]}"
            )
        samples = mat
    else:
        rng = np.random.default_rng(args.seed)
        samples = rng.standard_normal((2 * args.m, 2)) + 1j * rng.standard_normal(
            (2 * args.m, 2)
        )
    rep = free_dirac_pointwise(args.m, samples, tol)
    return _emit(rep, args, started)


def cmd_gamma_tilde(args) -> int:
    started = time.perf_counter()
    tol = _tolerance(args)
    tg = twisted_from_json(load_json(args.twisted))
    diag = gamma_tilde_diagnostics(tg, tol=tol)
    rep = Report("doubling involution of a twisted geometry")
    rep.add(
        "self-adjoint involution", diag.is_selfadjoint_involution, 0.0, 0.0
    )
    scale = max(1.0, fro(diag.gamma_tilde)) ** 2
    rep.check(
        "commutes with the represented algebra", diag.commutes_with_rep, tol, scale
    )
    rep.add(
        "anticommutes with D (is a grading)",
        diag.is_grading,
        diag.anticommutator_with_dirac,
        tol.rel * max(1.0, fro(tg.geometry.dirac)) * scale + tol.abs,
    )
    rep.add(
        "equals the grading of the input geometry",
        diag.equals_input_grading,
        0.0,
        0.0,
        note="exact for a twist by grading",
    )
    return _emit(rep, args, started)


def _parse_complex_list(text: str, count: int, what: str) -> list[complex]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"{what} needs {count} comma-separated values")
    try:
        return [complex(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad {what} value: {exc}") from exc


def cmd_sm(args) -> int:
    started = time.perf_counter()
    tol = _tolerance(args)
    yukawas = dict(DEFAULT_YUKAWAS)
    if args.yukawa:
        y_nu, y_e, y_u, y_d = _parse_complex_list(args.yukawa, 4, "--yukawa")
        yukawas = {"nu": y_nu, "e": y_e, "up": y_u, "down": y_d}
    majorana = DEFAULT_MAJORANA
    if args.majorana:
        majorana = complex(args.majorana)

    tg = twisted_sm_geometry(yukawas, majorana)
    if args.check == "all":
        rep = verify_sm_twisted(tg, tol)
    elif args.check == "zero-order":
        rep = Report("twisted standard model: order zero")
        gens = lean_generators(tg.algebra)
        scale = max([1.0] + [fro(tg.pi(a)) for a in gens]) ** 2
        rep.check(
            "order zero: algebra commutes with opposite",
            sm_order_zero_residual(tg, gens),
            tol,
            scale,
        )
    elif args.check == "first-order":
        rep = Report("twisted standard model: order one")
        gens = lean_generators(tg.algebra)
        scale = max([1.0] + [fro(tg.pi(a)) for a in gens]) ** 2
        d_scale = scale * max(1.0, fro(tg.geometry.dirac))
        for convention in ("flip", "display"):
            res = sm_first_order_residuals(tg, convention, gens)
            for form in ("primary", "symmetric"):
                if convention == "display":
                    rep.check(
                        f"order one (display convention, {form} form)",
                        res[form],
                        tol,
                        d_scale,
                    )
                else:
                    rep.add(
                        f"order one (flip convention, {form} form)",
                        True,
                        res[form],
                        float("inf"),
                        note="measured only",
                    )
            rep.info[f"order_one_{convention}"] = res
    else:  # recovery
        rep = generalized_minimal_twist_check(tg, tol)
        rep.merge(label_swap_check(tol), prefix="labels: ")
    return _emit(rep, args, started)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="relative tolerance")
    common.add_argument(
        "--report", choices=("text", "json"), default="text", help="output format"
    )
    common.add_argument("--out", default=None, help="write output to this file")
    common.add_argument("--seed", type=int, default=0, help="seed for random draws")

    parser = argparse.ArgumentParser(
        prog="nctwist", description="twisted finite geometry toolbox"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gamma", parents=[common], help="build gamma matrices")
    p.add_argument("--m", type=int, required=True, help=f"half-dimension, 1..{MAX_M}")
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("verify", parents=[common], help="verify a geometry file")
    p.add_argument("geometry", help="geometry JSON file")
    p.add_argument("--twisted", action="store_true", help="run the twisted checks")
    p.add_argument("--rho", default=None, help="automorphism JSON file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser(
        "twist-by-grading", parents=[common], help="double and twist a geometry"
    )
    p.add_argument("geometry", help="geometry JSON file (graded)")
    p.set_defaults(func=cmd_twist_by_grading)

    p = sub.add_parser(
        "fluctuate", parents=[common], help="fluctuate by a twisted one-form"
    )
    p.add_argument("geometry", help="geometry JSON file")
    p.add_argument("--rho", default=None, help="automorphism JSON file")
    p.add_argument("--form", required=True, help="one-form JSON file")
    p.set_defaults(func=cmd_fluctuate)

    p = sub.add_parser(
        "uniqueness", parents=[common], help="dimension of the gamma intertwiner space"
    )
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_uniqueness)

    p = sub.add_parser(
        "free-dirac", parents=[common], help="pointwise free Dirac twist analysis"
    )
    p.add_argument("--m", type=int, required=True, help="half-dimension, 1..3")
    p.add_argument("--samples", default=None, help="2m x 2 coefficient matrix JSON")
    p.set_defaults(func=cmd_free_dirac)

    p = sub.add_parser(
        "gamma-tilde", parents=[common], help="doubling involution diagnostics"
    )
    p.add_argument("twisted", help="twist-by-grading JSON file")
    p.set_defaults(func=cmd_gamma_tilde)

    p = sub.add_parser(
        "sm", parents=[common], help="standard model finite and twisted checks"
    )
    p.add_argument("--yukawa", default=None, help="y_nu,y_e,y_u,y_d (complex)")
    p.add_argument("--majorana", default=None, help="y_R (complex)")
    p.add_argument(
        "--check",
        choices=("all", "zero-order", "first-order", "recovery"),
        default="all",
    )
    p.set_defaults(func=cmd_sm)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, 0 on --help; keep its code
        return int(exc.code or 0)
    args.command_echo = ["nctwist"] + argv
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
