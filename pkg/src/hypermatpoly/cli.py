"""Command-line front end.

Model files are JSON objects::

    {"n": 1, "ell": 2, "name": "f", "coefficients": [[[[-1, 0]]], [[[0, 0]]], [[[1, 0]]]]}

``coefficients`` lists ``L_0 .. L_ell``; each is an ``n x n`` array of
``[re, im]`` pairs.  For ``n = 1`` a coefficient may also be given as a bare
``[re, im]`` pair or a ``[[re, im]]`` row.

Reports go to stdout (canonical JSON with ``--json``, ``key: value`` lines
otherwise) and are byte-identical for identical inputs and seed.  Wall time
is kept out of the report and printed to stderr with ``--verbose``.

Exit codes: 0 holds, 1 fails, 2 parse error, 3 validation error,
4 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import math
import sys
import time
from dataclasses import replace
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

import numpy as np

from .config import DEFAULT_ALPHA_GRID, DEFAULT_T_GRID, DEFAULT_TOLERANCES, Tolerances
from .errors import ConvergenceError, HyperbolicError, NonRealRootError, NotMonicError, ShapeError
from .horn import HornTriple, horn_triples, theorem24_sweep
from .hyperbolicity import condition_star, is_hyperbolic, is_weakly_hyperbolic, verify_coincidence
from .interlacing import build_diagonal_pencil_pair, build_symmetric_pair, obreschkoff_report
from .polycore import MatrixPolynomial, ScalarPolynomial, companion, det_poly, poly_roots
from .sdpcheck import feasibility_realization, feasibility_symmetrizer, minimal_realization
from .zones import convex_combination_hyperbolic, zone_estimates, zones_consistent

log = logging.getLogger("hypermatpoly")

EXIT_HOLDS, EXIT_FAILS, EXIT_PARSE, EXIT_VALIDATION, EXIT_CONVERGENCE = 0, 1, 2, 3, 4


class ParseError(Exception):
    pass


class ValidationError(Exception):
    pass


# --------------------------------------------------------------------------
# model files
# --------------------------------------------------------------------------


def _entry(v, where: str) -> complex:
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(_is_number(x) for x in v):
        return complex(float(v[0]), float(v[1]))
    raise ParseError(f"{where}: expected a [re, im] pair, got {v!r}")


def _is_number(x) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool)


def _matrix(raw, n: int, where: str) -> np.ndarray:
    if n == 1 and isinstance(raw, list) and len(raw) == 2 and all(_is_number(x) for x in raw):
        raw = [[raw]]
    if n == 1 and isinstance(raw, list) and len(raw) == 1 and isinstance(raw[0], list) and len(raw[0]) == 2 \
            and all(_is_number(x) for x in raw[0]):
        raw = [raw]
    if not isinstance(raw, list) or any(not isinstance(row, list) for row in raw):
        raise ParseError(f"{where}: expected a list of rows")
    widths = {len(row) for row in raw}
    if len(widths) > 1:
        raise ParseError(f"{where}: ragged matrix (row lengths {sorted(widths)})")
    M = np.array([[_entry(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(raw)],
                 dtype=complex)
    if M.shape != (n, n):
        raise ValidationError(f"{where}: shape {M.shape}, expected ({n}, {n})")
    return M


def parse_model(doc: Any) -> MatrixPolynomial:
    """Build a polynomial from a decoded model document."""
    if not isinstance(doc, dict):
        raise ParseError("model must be a JSON object")
    for key in ("n", "ell", "coefficients"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    n, ell, coeffs = doc["n"], doc["ell"], doc["coefficients"]
    if not (isinstance(n, int) and isinstance(ell, int)) or isinstance(n, bool) or isinstance(ell, bool):
        raise ParseError("n and ell must be integers")
    if n < 1 or ell < 1:
        raise ValidationError("n and ell must be positive")
    if not isinstance(coeffs, list):
        raise ParseError("coefficients must be a list")
    if len(coeffs) != ell + 1:
        raise ValidationError(f"expected {ell + 1} coefficients, got {len(coeffs)}")
    stack = np.array([_matrix(c, n, f"coefficients[{j}]") for j, c in enumerate(coeffs)])
    if np.abs(stack[-1] - np.eye(n)).max() > 1e-12:
        raise ValidationError("leading coefficient is not the identity")
    try:
        return MatrixPolynomial(stack)
    except (NotMonicError, ShapeError) as exc:
        raise ValidationError(str(exc)) from exc


def load_model(path) -> MatrixPolynomial:
    """Read a model file; raises ``ParseError`` or ``ValidationError``."""
    return parse_model(_load_json(path))


def _load_json(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def model_document(L: MatrixPolynomial, name: Optional[str] = None) -> dict:
    doc = {
        "n": L.n,
        "ell": L.ell,
        "coefficients": [[[[float(v.real), float(v.imag)] for v in row] for row in C] for C in L.coeffs],
    }
    if name is not None:
        doc["name"] = name
    return doc


def save_model(L: MatrixPolynomial, path, name: Optional[str] = None) -> None:
    Path(path).write_text(json.dumps(model_document(L, name)) + "\n", encoding="utf-8")


def _scalar(L: MatrixPolynomial, label: str) -> ScalarPolynomial:
    if L.n != 1:
        raise ValidationError(f"{label} must be a scalar model (n = 1)")
    return ScalarPolynomial(L.coeffs[:, 0, 0])


def _real_scalar(L: MatrixPolynomial, label: str) -> ScalarPolynomial:
    f = _scalar(L, label)
    if not f.is_real(0.0):
        raise ValidationError(f"{label} must have real coefficients")
    return ScalarPolynomial(f.real_coeffs)


# --------------------------------------------------------------------------
# report serialization
# --------------------------------------------------------------------------


def _plain(x):
    """Convert numpy and complex values to JSON-safe builtins; non-finite floats become strings."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [_plain(float(x.real)), _plain(float(x.imag))]
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else str(x)
    return x


def render(report: dict, as_json: bool) -> str:
    report = _plain(report)
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = []

    def walk(prefix, v):
        if isinstance(v, dict):
            for k in sorted(v):
                walk(f"{prefix}.{k}" if prefix else k, v[k])
        else:
            lines.append(f"{prefix}: {json.dumps(v, sort_keys=True)}")

    walk("", report)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def _tolerances(args) -> Tolerances:
    return replace(DEFAULT_TOLERANCES, root=args.tol) if args.tol is not None else DEFAULT_TOLERANCES


def _alpha_grid(args) -> tuple[float, ...]:
    return args.alpha_grid if args.alpha_grid is not None else DEFAULT_ALPHA_GRID


def cmd_check_weak(args, tols):
    L = load_model(args.L)
    holds = is_weakly_hyperbolic(L, tols.root)
    roots = poly_roots(det_poly(L))
    return holds, {"det_roots": sorted(roots.tolist(), key=lambda z: (z.real, z.imag))}


def cmd_check_hyperbolic(args, tols):
    L = load_model(args.L)
    v = is_hyperbolic(L, args.samples, args.seed, tols.root)
    return v.hyperbolic, {"reason": v.reason, "vectors_tested": v.samples, "witness": v.witness}


def cmd_star(args, tols):
    L, M = load_model(args.L), load_model(args.M)
    r = condition_star(L, M, _alpha_grid(args), tols.root)
    return r.verdict, {
        "alpha_grid": r.alpha_grid,
        "failing_alphas": [a for a, _ in r.failures],
        "leading_diff_spectrum": r.leading_diff_spectrum,
        "leading_diff_real": r.leading_diff_real,
    }


def cmd_interlace(args, tols):
    f, h = _real_scalar(load_model(args.f), "f"), _real_scalar(load_model(args.h), "h")
    r = obreschkoff_report(f, h, tols.simple, tols.root, tols.residue, tols.coprime)
    return r.unanimous is True, {
        "cond1_direction_pencil": r.cond1,
        "cond2_affine_pencil": r.cond2,
        "cond3_residue_signs": r.cond3,
        "cond4_root_interlacing": r.cond4,
        "unanimous": r.unanimous,
        "details": r.details,
    }


def _certificate_payload(c):
    return {
        "feasible": c.feasible,
        "min_eig": c.min_eig,
        "constraint_residual": c.constraint_residual,
        "subspace_dim": c.subspace_dim,
        "P": c.P,
    }


def cmd_sdp(args, tols):
    f, h = _real_scalar(load_model(args.f), "f"), _real_scalar(load_model(args.h), "h")
    R = minimal_realization(f, h, tols.coprime)
    cr = feasibility_realization(R, tols.pd_margin, tols.eq_tol, args.seed)
    Cf = companion(MatrixPolynomial.from_scalar(f)).real
    Ch = companion(MatrixPolynomial.from_scalar(h)).real
    cs = feasibility_symmetrizer(Cf, Ch, tols.pd_margin, tols.eq_tol, args.seed)
    payload = {
        "realization": {**_certificate_payload(cr), "sign": cr.sign},
        "symmetrizer": _certificate_payload(cs),
        "forms_agree": cr.feasible == cs.feasible,
    }
    return cr.feasible and cs.feasible, payload


def cmd_build_pair(args, tols):
    if args.f and args.h:
        f, h = _real_scalar(load_model(args.f), "f"), _real_scalar(load_model(args.h), "h")
        pair = build_symmetric_pair(f, h, tols.simple, tols.root, tols.residue)
        A, B, kind = pair.A, pair.B, "rank-one"
    elif args.L and args.M:
        L, M = load_model(args.L), load_model(args.M)
        A, B = build_diagonal_pencil_pair(L, M, coincidence_tol=tols.coincidence)
        kind = "diagonal"
    else:
        raise ValidationError("build-pair needs --f/--h or --L/--M")
    if args.out:
        Path(args.out).write_text(json.dumps(_plain({"A": A, "B": B})) + "\n", encoding="utf-8")
    return True, {"construction": kind, "A": A, "B": B}


def cmd_zones(args, tols):
    L = load_model(args.L)
    z = zone_estimates(L, args.samples, args.refine_iters, args.seed, tols.root, tols.zone)
    return zones_consistent(z), {"intervals": z.intervals, "sample_count": z.sample_count, "refined": z.refined}


def cmd_prop23(args, tols):
    L, M = load_model(args.L), load_model(args.M)
    v = convex_combination_hyperbolic(L, M, args.samples, args.refine_iters, args.seed, tols.root, tols.zone)
    return v.holds, {"binding_j": v.binding_j, "margins": v.margins, "boundary": v.boundary}


def _parse_triple(text: str, m: int) -> HornTriple:
    parts = text.split(";")
    if len(parts) != 3:
        raise ParseError(f"triple {text!r} must look like 'U;S;T' with comma-separated indices")
    try:
        sets = [[int(i) for i in p.split(",") if i.strip()] for p in parts]
    except ValueError as exc:
        raise ParseError(f"triple {text!r}: {exc}") from exc
    try:
        return HornTriple(*sets, m=m)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def cmd_horn_verify(args, tols):
    L, M = load_model(args.L), load_model(args.M)
    m = L.n * L.ell
    if args.all_triples:
        triples = sorted(horn_triples(m))
    elif args.triple:
        triples = [_parse_triple(t, m) for t in args.triple]
    else:
        raise ValidationError("horn-verify needs --all-triples or --triple")
    alphas = (args.alpha,) if args.alpha is not None else _alpha_grid(args)
    failures = theorem24_sweep(L, M, alphas, triples, tols.horn, tols.root)
    return not failures, {
        "m": m,
        "alphas": alphas,
        "triples_checked": len(triples),
        "failures": [{"alpha": a, "triple": t.as_lists(), "lhs": v.lhs, "rhs": v.rhs} for a, t, v in failures],
    }


def cmd_coincide(args, tols):
    L, M = load_model(args.L), load_model(args.M)
    doc = _load_json(args.pair)
    if not isinstance(doc, dict) or "A" not in doc or "B" not in doc:
        raise ParseError("pair file must be a JSON object with fields A and B")
    try:
        A, B = np.array(doc["A"], dtype=float), np.array(doc["B"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"pair file: {exc}") from exc
    if A.ndim != 2 or not np.allclose(A, A.T) or not np.allclose(B, B.T):
        raise ValidationError("A and B must be symmetric matrices")
    r = verify_coincidence(L, M, A, B, _alpha_grid(args), tols.coincidence, tols.root)
    return r.verdict, {"alpha_grid": r.alpha_grid, "max_mismatch": r.max_mismatch, "per_alpha": r.per_alpha}


COMMANDS: dict[str, tuple[Callable, str]] = {
    "check-weak": (cmd_check_weak, "weak hyperbolicity: det L has only real roots"),
    "check-hyperbolic": (cmd_check_hyperbolic, "sampled hyperbolicity of every section <L(z)x,x>"),
    "star": (cmd_star, "weak hyperbolicity of all affine combinations on an alpha grid"),
    "interlace": (cmd_interlace, "four interlacing criteria for a scalar pair"),
    "sdp": (cmd_sdp, "both semidefinite feasibility programs for a scalar pair"),
    "build-pair": (cmd_build_pair, "symmetric A, B for a scalar or diagonal pair"),
    "zones": (cmd_zones, "spectral zone estimates"),
    "prop23": (cmd_prop23, "zone criterion for convex combinations"),
    "horn-verify": (cmd_horn_verify, "Horn inequalities on determinant roots"),
    "coincide": (cmd_coincide, "compare combination roots with eig(alpha A + (1-alpha) B)"),
}


def _float_list(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="real-root tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--alpha-grid", type=_float_list, default=None, help="comma-separated alphas")
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--verbose", action="store_true", help="human summary on stderr")

    parser = _Parser(prog="hypermatpoly", description="Analyses of hyperbolic matrix polynomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        if name in ("check-weak", "check-hyperbolic", "zones"):
            p.add_argument("--L", required=True)
        if name in ("star", "prop23", "horn-verify", "coincide"):
            p.add_argument("--L", required=True)
            p.add_argument("--M", required=True)
        if name in ("interlace", "sdp"):
            p.add_argument("--f", required=True)
            p.add_argument("--h", required=True)
        if name == "build-pair":
            for flag in ("--f", "--h", "--L", "--M"):
                p.add_argument(flag)
            p.add_argument("--out", help="also write {A, B} to this file")
        if name in ("zones", "prop23"):
            p.add_argument("--refine-iters", type=int, default=50)
        if name == "horn-verify":
            p.add_argument("--alpha", type=float)
            p.add_argument("--all-triples", action="store_true")
            p.add_argument("--triple", action="append", help="'U;S;T', e.g. '1,2;1,3;2,3'")
        if name == "coincide":
            p.add_argument("--pair", required=True, help="JSON file with symmetric A and B")
    return parser


_DEFAULT_SAMPLES = {"check-hyperbolic": 200, "zones": 500, "prop23": 500}


def _digest(args) -> str:
    h = hashlib.sha256()
    for flag in ("f", "h", "L", "M", "pair"):
        path = getattr(args, flag, None)
        if path:
            h.update(flag.encode() + b"\0")
            try:
                h.update(Path(path).read_bytes())
            except OSError:
                pass
    return h.hexdigest()


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    """Parse ``argv``, run the command, print the report; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_PARSE
    if args.samples is None:
        args.samples = _DEFAULT_SAMPLES.get(args.command, 200)
    tols = _tolerances(args)
    func = COMMANDS[args.command][0]
    report = {
        "command": args.command,
        "inputs_sha256": _digest(args),
        "seed": args.seed,
        "samples": args.samples,
        "tolerances": tols.as_dict(),
    }
    t0 = time.perf_counter()
    try:
        holds, payload = func(args, tols)
        code = EXIT_HOLDS if holds else EXIT_FAILS
        report.update(verdict=bool(holds), payload=payload)
    except ParseError as exc:
        code, report["error"] = EXIT_PARSE, f"parse error: {exc}"
    except ValidationError as exc:
        code, report["error"] = EXIT_VALIDATION, f"validation error: {exc}"
    except ConvergenceError as exc:
        code, report["error"] = EXIT_CONVERGENCE, f"non-convergence: {exc}"
    except NonRealRootError as exc:
        # a hypothesis of the analysis fails on this input: a negative verdict
        code = EXIT_FAILS
        report.update(verdict=False, payload={"reason": str(exc), "witness": getattr(exc, "witness", None)})
    except (HyperbolicError, ValueError) as exc:
        code, report["error"] = EXIT_VALIDATION, f"validation error: {exc}"
    report["exit_code"] = code
    stdout.write(render(report, args.json))
    if args.verbose:
        status = {0: "holds", 1: "fails"}.get(code, report.get("error", "error"))
        stderr.write(f"{args.command}: {status} ({time.perf_counter() - t0:.3f} s)\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
