"""Command line entry point.

Every subcommand reads tensors from JSON files, writes a JSON report to
stdout, and keeps human-readable notes on stderr, so the output composes
in pipelines.  Exit codes: 0 success, 1 verification failure, 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__
from .core import Tensor
from .datasets import load_example
from .opnorms import bound_report, estimate_norm, f_norm_bounds, general_upper_bound, t_norm_bounds
from .spectral import find_h_eigenpairs, find_z_eigenpairs, verify_eigen_bounds
from .structure import (
    classify,
    membership_diagnostics,
    random_b0_tensor,
    random_b_tensor,
    random_tensor,
    semipositivity_certificate,
)
from .tcp import TcpInstance, solution_lower_bounds, solve, verify_solution_bounds
from .tcp import residual as tcp_residual
from .tensorio import dumps_tensor, load_tensor

GOLDEN_TOL = 1e-9


def _default_seed(value) -> int:
    if value is not None:
        return int(value)
    env = os.environ.get("BTENSOR_SEED")
    return int(env) if env else 0


def _load(path: str) -> Tensor:
    return load_tensor(path)


def _parse_vector(text: str, dim: int) -> np.ndarray:
    try:
        values = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"vector is not valid JSON: {exc.msg}") from exc
    vec = np.asarray(values, dtype=float)
    if vec.shape != (dim,):
        raise ValueError(f"vector must have length {dim}, got shape {vec.shape}")
    return vec


def _norm_value(args) -> float:
    if args.norm == "inf":
        return math.inf
    return float(args.p)


def _emit(payload: dict, note: str = "") -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, allow_nan=False))
    if note:
        print(note, file=sys.stderr)


def _write_manifest(args, payload: dict, started: float, inputs: list[str]) -> None:
    if not getattr(args, "manifest", None):
        return
    hashes = {}
    for path in inputs:
        with open(path, "rb") as handle:
            hashes[path] = hashlib.sha256(handle.read()).hexdigest()
    manifest = {
        "command": " ".join(args._argv),
        "input_hashes": hashes,
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "wall_clock_ms": round(1000.0 * (time.perf_counter() - started), 3),
        "payload": payload,
    }
    with open(args.manifest, "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")


def _cmd_classify(args) -> tuple[int, dict]:
    tensor = _load(args.file)
    report = classify(tensor, tol=args.tol)
    payload = report.to_dict()
    if report.verdict != "Neither":
        diagnostics = membership_diagnostics(tensor, strict=report.verdict == "B")
        payload["diagnostics"] = diagnostics.to_dict()
    _emit(payload, f"verdict: {report.verdict}")
    return 0, payload


def _cmd_semipositive(args) -> tuple[int, dict]:
    tensor = _load(args.file)
    certificate = semipositivity_certificate(tensor, mode=args.mode, resolution=args.grid)
    note = "violated" if certificate.violated else "no violation found"
    _emit(certificate.to_dict(), f"{args.mode} semi-positivity at grid {args.grid}: {note}")
    return (1 if certificate.violated else 0), certificate.to_dict()


def _cmd_bounds(args) -> tuple[int, dict]:
    tensor = _load(args.file)
    p = _norm_value(args)
    if args.estimate:
        report = bound_report(
            tensor, args.op, p, samples=args.samples, ascent_steps=args.steps, seed=args.seed
        )
        payload = report.to_dict()
    else:
        verdict = classify(tensor).verdict
        variant = "B" if verdict == "B" else "B0"
        lower, upper = (
            t_norm_bounds(tensor, p, variant) if args.op == "T" else f_norm_bounds(tensor, p, variant)
        )
        payload = {
            "operator": args.op,
            "norm": "inf" if p == math.inf else p,
            "variant": variant,
            "strict": variant == "B",
            "general_upper": general_upper_bound(tensor, args.op, p),
            "b_lower": lower,
            "b_upper": upper,
            "empirical_estimate": None,
            "estimate_witness": None,
        }
    if args.format == "csv":
        fields = [
            "operator",
            "norm",
            "variant",
            "strict",
            "general_upper",
            "b_lower",
            "b_upper",
            "empirical_estimate",
        ]
        print(",".join(fields))
        print(",".join("" if payload[f] is None else str(payload[f]) for f in fields))
    else:
        _emit(payload)
    return 0, payload


def _cmd_eigen(args) -> tuple[int, dict]:
    tensor = _load(args.file)
    if args.kind == "h":
        pairs = find_h_eigenpairs(tensor, starts=args.starts, seed=args.seed)
    else:
        pairs = find_z_eigenpairs(tensor, starts=args.starts, seed=args.seed)
    payload = {"kind": args.kind, "pairs": [pair.to_dict() for pair in pairs]}
    exit_code = 0
    if args.verify_bounds:
        verdict = classify(tensor).verdict
        variant = "B" if verdict == "B" else "B0"
        report = verify_eigen_bounds(tensor, pairs, variant)
        payload["bound_report"] = report.to_dict()
        if not report.all_within:
            exit_code = 1
    _emit(payload, f"found {len(pairs)} {args.kind}-pairs")
    return exit_code, payload


def _cmd_tcp(args) -> tuple[int, dict]:
    tensor = _load(args.file)
    q = _parse_vector(args.q, tensor.dim)
    instance = TcpInstance(tensor, q)
    if args.tcp_command == "solve":
        outcome = solve(instance, starts=args.starts, tol=args.tol, seed=args.seed)
        payload = outcome.to_dict()
        _emit(payload, f"converged: {outcome.converged} (residual {outcome.residual:.3e})")
        return (0 if outcome.converged else 1), payload
    if args.tcp_command == "bounds":
        certificate = solution_lower_bounds(tensor, q)
        payload = certificate.to_dict()
        _emit(payload)
        return 0, payload
    x = _parse_vector(args.x, tensor.dim)
    res, w = tcp_residual(instance, x)
    from .tcp import TcpOutcome

    outcome = TcpOutcome(x=x, w=w, residual=res, converged=res <= args.tol, starts_used=0)
    certificate = verify_solution_bounds(tensor, q, outcome)
    payload = certificate.to_dict()
    payload["residual"] = res
    _emit(payload, f"bounds hold: {certificate.holds}")
    return (0 if certificate.holds else 1), payload


def _cmd_gen(args) -> tuple[int, dict]:
    rng = np.random.default_rng(args.seed)
    kind = args.kind
    if kind == "diagonal":
        tensor = Tensor.diagonal_tensor(args.m, args.n)
    elif kind == "random":
        tensor = random_tensor(args.m, args.n, rng)
    else:
        expected = "B" if kind == "B" else "B0"
        tensor = None
        for _ in range(100):
            candidate = (
                random_b_tensor(args.m, args.n, rng)
                if kind == "B"
                else random_b0_tensor(args.m, args.n, rng)
            )
            if classify(candidate).verdict == expected:
                tensor = candidate
                break
        if tensor is None:
            print(f"could not generate a {expected} tensor in 100 tries", file=sys.stderr)
            return 1, {}
    text = dumps_tensor(tensor)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
            handle.write("\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(text)
    return 0, {}


def _paper_claims(seed: int):
    """Golden checks for the two bundled tensors; returns (name, ok, detail) triples."""
    ex41 = load_example("ex41")
    ex42 = load_example("ex42")
    claims = []

    def claim(name, ok, detail):
        claims.append({"name": name, "ok": bool(ok), "detail": detail})

    report41 = classify(ex41)
    claim("ex41-classification", report41.verdict == "B", f"verdict={report41.verdict}")
    target41 = np.array([57.0, 55.5, 54.5])
    err = float(np.max(np.abs(report41.row_sums - target41)))
    claim("ex41-row-sums", err <= GOLDEN_TOL, f"max_err={err:.3e}")
    beta_ok = bool(np.array_equal(report41.beta, np.array([2.0, 2.0, 2.0])))
    claim("ex41-offdiag-caps", beta_ok, f"beta={report41.beta.tolist()}")

    general41 = general_upper_bound(ex41, "T", math.inf)
    _, upper41 = t_norm_bounds(ex41, math.inf, "B")
    ok = abs(upper41 - 54.0) <= GOLDEN_TOL and abs(general41 - 57.0) <= GOLDEN_TOL and upper41 < general41
    claim("ex41-T-inf-upper-tighter", ok, f"b_upper={upper41}, general={general41}")

    _, f_upper41 = f_norm_bounds(ex41, 1.0, "B")
    f_general41 = general_upper_bound(ex41, "F", 1.0)
    claim(
        "ex41-F-1-upper-tighter",
        f_upper41 < f_general41,
        f"b_upper={f_upper41:.6f}, general={f_general41:.6f}",
    )

    estimate41, _ = estimate_norm(ex41, "T", math.inf, samples=64, ascent_steps=25, seed=seed)
    lower41, _ = t_norm_bounds(ex41, math.inf, "B")
    ok = lower41 <= estimate41 <= min(general41, upper41) + GOLDEN_TOL
    claim("ex41-T-inf-sandwich", ok, f"{lower41:.6f} <= {estimate41:.6f} <= {min(general41, upper41)}")

    report42 = classify(ex42)
    claim("ex42-classification", report42.verdict == "B", f"verdict={report42.verdict}")
    target42 = np.array([65.7, 65.5, 64.5, 65.1])
    err = float(np.max(np.abs(report42.row_sums - target42)))
    claim("ex42-row-sums", err <= GOLDEN_TOL, f"max_err={err:.3e}")

    for p in (1.0, 2.0, 4.0):
        _, upper42 = t_norm_bounds(ex42, p, "B")
        general42 = general_upper_bound(ex42, "T", p)
        floor = 64.0 * 4.0 ** (3.0 / p)
        ok = abs(upper42 - 48.0) <= GOLDEN_TOL and general42 >= floor - GOLDEN_TOL and upper42 < general42
        claim(
            f"ex42-T-p{p:g}-upper-48",
            ok,
            f"b_upper={upper42:.9f}, general={general42:.4f}, floor={floor:.4f}",
        )

    h_pairs = find_h_eigenpairs(ex41, starts=16, seed=seed)
    z_pairs = find_z_eigenpairs(ex41, starts=16, seed=seed)
    eigen_report = verify_eigen_bounds(ex41, h_pairs + z_pairs, "B")
    claim(
        "ex41-eigen-bounds",
        eigen_report.all_within and eigen_report.pairs_checked > 0,
        f"pairs={eigen_report.pairs_checked}, max|h|={eigen_report.max_abs_h:.4f} "
        f"< {eigen_report.h_bound:.4f}, max|z|={eigen_report.max_abs_z:.4f} < {eigen_report.z_bound}",
    )

    q = np.array([-1.0, -1.0, -1.0])
    outcome = solve(TcpInstance(ex41, q), seed=seed)
    ok = outcome.converged and outcome.residual <= 1e-8
    detail = f"converged={outcome.converged}, residual={outcome.residual:.3e}"
    if ok:
        certificate = verify_solution_bounds(ex41, q, outcome)
        ok = bool(certificate.holds)
        detail += f", bounds_hold={certificate.holds}"
    claim("ex41-tcp-lower-bounds", ok, detail)

    rng_a = np.random.default_rng(seed)
    rng_b = np.random.default_rng(seed)
    bytes_a = dumps_tensor(random_b_tensor(4, 3, rng_a))
    bytes_b = dumps_tensor(random_b_tensor(4, 3, rng_b))
    claim("generator-determinism", bytes_a == bytes_b, f"identical={bytes_a == bytes_b}")
    return claims


def _cmd_verify_paper(args) -> tuple[int, dict]:
    claims = _paper_claims(args.seed)
    failures = sum(1 for c in claims if not c["ok"])
    for c in claims:
        status = "PASS" if c["ok"] else "FAIL"
        print(f"{status} {c['name']}: {c['detail']}", file=sys.stderr)
    print(f"done: {len(claims)} claims, {failures} failures", file=sys.stderr)
    payload = {"claims": claims, "failures": failures, "seed": args.seed}
    print(json.dumps(payload, indent=2, sort_keys=True, allow_nan=False))
    return (1 if failures else 0), payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="btensor", description=__doc__)
    parser.add_argument("--manifest", help="write a run manifest (inputs, seed, payload) to this file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classification report for a tensor file")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=0.0, help="margin required on strict inequalities")
    p.set_defaults(func=_cmd_classify, inputs=lambda a: [a.file])

    p = sub.add_parser("semipositive", help="sampled semi-positivity certificate")
    p.add_argument("file")
    p.add_argument("--mode", choices=("strict", "weak"), default="strict")
    p.add_argument("--grid", type=int, default=8, help="simplex lattice resolution")
    p.set_defaults(func=_cmd_semipositive, inputs=lambda a: [a.file])

    p = sub.add_parser("bounds", help="operator norm bounds, optionally with an empirical estimate")
    p.add_argument("file")
    p.add_argument("--op", choices=("T", "F"), required=True)
    p.add_argument("--norm", choices=("inf", "p"), default="inf")
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--estimate", action="store_true")
    p.add_argument("--samples", type=int, default=1024)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_bounds, inputs=lambda a: [a.file])

    p = sub.add_parser("eigen", help="multistart eigenpair search")
    p.add_argument("file")
    p.add_argument("--kind", choices=("h", "z"), required=True)
    p.add_argument("--starts", type=int, default=64)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--verify-bounds", action="store_true")
    p.set_defaults(func=_cmd_eigen, inputs=lambda a: [a.file])

    p = sub.add_parser("tcp", help="complementarity solving and solution bounds")
    tcp_sub = p.add_subparsers(dest="tcp_command", required=True)
    for name in ("solve", "bounds", "verify"):
        sp = tcp_sub.add_parser(name)
        sp.add_argument("file")
        sp.add_argument("--q", required=True, help="JSON vector, e.g. \"[-1,-1,-1]\"")
        sp.add_argument("--starts", type=int, default=16)
        sp.add_argument("--tol", type=float, default=1e-8)
        sp.add_argument("--seed", type=int, default=None)
        if name == "verify":
            sp.add_argument("--x", required=True, help="candidate solution as a JSON vector")
        sp.set_defaults(func=_cmd_tcp, inputs=lambda a: [a.file])

    p = sub.add_parser("gen", help="emit a generated tensor as JSON")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("B", "B0", "diagonal", "random"), default="B")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", "-o", default=None)
    p.set_defaults(func=_cmd_gen, inputs=lambda a: [])

    p = sub.add_parser("verify-paper", help="run the bundled-example golden suite")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=_cmd_verify_paper, inputs=lambda a: [])
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = ["btensor"] + argv
    if hasattr(args, "seed"):
        args.seed = _default_seed(args.seed)
    started = time.perf_counter()
    try:
        code, payload = args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _write_manifest(args, payload, started, args.inputs(args))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
