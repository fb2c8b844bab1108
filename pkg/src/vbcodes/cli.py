"""Command-line front end.

Every subcommand is a pure function ``params -> {output name: text}``; the
driver writes the texts atomically next to a run record holding the
parameters and output digests, and ``replay`` recomputes from that record.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import io
from .codes import build_code, weight_distribution
from .constructions import FAMILIES, build_family
from .errors import BudgetExceeded, ConstraintViolation, VbcodesError, VerificationFailure
from .minimality import (ab_check, ab_from_spectra, bound_argument, bound_argument_theorem10,
                         is_minimal_bruteforce, minimality_walsh_criterion)
from .tables import KINDS, table_fixture, table_frequencies

log = logging.getLogger("vbcodes")

AUTO_BRUTEFORCE_MAX_K = 16
ROUTES = ("auto", "bruteforce", "walsh", "bound")


def _read(path) -> str:
    return Path(path).read_text()


def _input_digests(*paths) -> dict[str, str]:
    return {str(p): io.sha256_text(_read(p)) for p in paths}


# ---------------------------------------------------------------- commands

def do_construct(p: dict) -> dict[str, str]:
    kw = {"n": p["n"]}
    for key in ("i", "r", "a", "b", "modulus"):
        if p.get(key) is not None:
            kw[key] = p[key]
    if p.get("complemented"):
        kw["complemented"] = True
    F = build_family(p["family"], **kw)
    return {"function": io.dumps(io.function_record(F))}


def do_code(p: dict) -> dict[str, str]:
    F = io.function_from_record(json.loads(_read(p["function"])))
    code = build_code(F, augmented=p["augmented"])
    dist = weight_distribution(code, samples=p["samples"], seed=p["seed"])
    return io.bundle_files(code, dist)


def _choose_route(code, route: str) -> str:
    if route != "auto":
        return route
    if code.dimension <= AUTO_BRUTEFORCE_MAX_K:
        return "bruteforce"
    if code.augmented:
        raise BudgetExceeded(f"k={code.dimension} is beyond the automatic brute-force limit and the "
                             "spectral routes do not cover augmented codes; pass --route bruteforce")
    if code.n + code.m <= 18:
        return "walsh"
    return "bound"


def do_verify(p: dict) -> dict[str, str]:
    code, dist, _ = io.load_bundle(p["bundle"])
    F = code.function
    route = _choose_route(code, p["route"])
    if route == "bruteforce":
        rep = is_minimal_bruteforce(code)
    else:
        if code.augmented:
            raise ConstraintViolation(f"the {route} route needs a code without the constant row")
        if route == "walsh":
            rep = minimality_walsh_criterion(F)
        elif (F.family or {}).get("kind") == "theorem10":
            rep = bound_argument_theorem10(F, samples=p["samples"], seed=p["seed"], code=code)
        else:
            rep = bound_argument(F, code=code, samples=p["samples"], seed=p["seed"])
    # the constant row has no spectral counterpart; use the distribution alone there
    if code.augmented:
        ab = None
    else:
        ab = ab_check(dist, F) if dist.verified == "full" else ab_from_spectra(F)
    report = io.report_record(code, rep, ab)
    if code.augmented:
        report["ab"] = {"w_min": dist.w_min, "w_max": dist.w_max,
                        "satisfied": 2 * dist.w_min > dist.w_max, "spectral": None,
                        "ratio": f"{dist.w_min}/{dist.w_max}"}
    return {"report": io.dumps(report)}


def do_table(p: dict) -> dict[str, str]:
    kind, n, m, lam = p["kind"], p["n"], p.get("m"), p.get("lam", 0)
    if kind == "ab":
        m = n
    closed = table_frequencies(kind, n, m, lam)
    F = table_fixture(kind, n, m, lam, i=p.get("i", 0), complemented=p.get("complemented", False))
    enum = weight_distribution(build_code(F), samples=p["samples"], seed=p["seed"])
    weights = sorted(set(closed.freq) | set(enum.freq))
    lines = ["weight,closed_form,enumerated,match"]
    for w in weights:
        a, b = closed.freq.get(w, 0), enum.freq.get(w, 0)
        lines.append(f"{w},{a},{b},{'yes' if a == b else 'NO'}")
    k = build_code(F).dimension
    lines.append(f"total,{closed.total},{enum.total},{'yes' if closed.total == enum.total == 1 << k else 'NO'}")
    return {"table": "\n".join(lines) + "\n"}


def do_spectrum(p: dict) -> dict[str, str]:
    F = io.function_from_record(json.loads(_read(p["function"])))
    mu = int(p["mu"], 0) if isinstance(p["mu"], str) else p["mu"]
    if not 0 < mu < 1 << F.m:
        raise ConstraintViolation(f"mu must be a nonzero {F.m}-bit mask, got {mu:#x}")
    row = F.spectra_rows(np.array([mu]))[0]
    lines = ["nu,W"] + [f"{nu:#x},{int(w)}" for nu, w in enumerate(row)]
    return {"spectrum": "\n".join(lines) + "\n"}


COMMANDS = {"construct": do_construct, "code": do_code, "verify": do_verify,
            "table": do_table, "spectrum": do_spectrum}

# ---------------------------------------------------------------- driver

def _output_paths(command: str, outputs: dict[str, str], target: Path | None) -> dict[str, Path]:
    if target is None:
        return {}
    if command == "code":
        return {name: target / name for name in outputs}
    (only,) = outputs
    return {only: target}


def _record_path(command: str, target: Path) -> Path:
    if command == "code":
        return target / "run.json"
    return target.with_name(target.name + ".run.json")


def execute(command: str, params: dict, target: Path | None) -> dict[str, str]:
    outputs = COMMANDS[command](params)
    paths = _output_paths(command, outputs, target)
    for name, text in outputs.items():
        if name in paths:
            io.atomic_write(paths[name], text)
    if target is not None:
        rec = io.run_record(command, params, outputs)
        io.atomic_write(_record_path(command, target), io.dumps(rec))
    return outputs


def replay(record_path: Path) -> tuple[bool, list[str]]:
    rec = json.loads(record_path.read_text())
    if rec.get("format") != io.RUN_FORMAT:
        raise ValueError(f"{record_path} is not a run record")
    outputs = COMMANDS[rec["command"]](rec["params"])
    fresh = {name: io.sha256_text(text) for name, text in outputs.items()}
    diffs = [name for name in sorted(set(fresh) | set(rec["outputs"]))
             if fresh.get(name) != rec["outputs"].get(name)]
    return not diffs, diffs


def _abs(path: str) -> str:
    return str(Path(path).resolve())


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vbcodes", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a family member and write a function file")
    c.add_argument("--family", required=True, choices=FAMILIES)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--i", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--a", help="hex field/vector element")
    c.add_argument("--b", help="hex field/vector element")
    c.add_argument("--modulus", help="hex modulus of GF(2^n)")
    c.add_argument("--complemented", action="store_true")
    c.add_argument("-o", "--output")

    c = sub.add_parser("code", help="generator matrix and weight distribution of C_F")
    c.add_argument("function")
    c.add_argument("--augmented", action="store_true", help="append the all-ones row")
    c.add_argument("--samples", type=int, default=100_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--output", help="bundle directory")

    c = sub.add_parser("verify", help="minimality and AB report for a code bundle")
    c.add_argument("bundle")
    c.add_argument("--route", choices=ROUTES, default="auto")
    c.add_argument("--samples", type=int, default=1_000_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--expect", choices=("minimal", "not_minimal"), default="minimal",
                   help="verdict that counts as success (exit 0)")
    c.add_argument("-o", "--output")

    c = sub.add_parser("table", help="closed-form vs enumerated weight distribution")
    c.add_argument("kind", choices=KINDS)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int)
    c.add_argument("--lam", type=int, default=0)
    c.add_argument("--i", type=int, default=0)
    c.add_argument("--complemented", action="store_true")
    c.add_argument("--samples", type=int, default=100_000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-o", "--output")

    c = sub.add_parser("spectrum", help="dump W_F(mu, .) as CSV")
    c.add_argument("function")
    c.add_argument("--mu", required=True, help="component mask (int or hex)")
    c.add_argument("-o", "--output")

    c = sub.add_parser("replay", help="recompute a run record and compare output digests")
    c.add_argument("record")
    return ap


def _params(args) -> dict:
    if args.command == "construct":
        return {"family": args.family, "n": args.n, "i": args.i, "r": args.r, "a": args.a,
                "b": args.b, "modulus": args.modulus, "complemented": args.complemented}
    if args.command == "code":
        return {"function": _abs(args.function), "augmented": args.augmented,
                "samples": args.samples, "seed": args.seed,
                "inputs": _input_digests(_abs(args.function))}
    if args.command == "verify":
        return {"bundle": _abs(args.bundle), "route": args.route, "samples": args.samples,
                "seed": args.seed}
    if args.command == "table":
        return {"kind": args.kind, "n": args.n, "m": args.m, "lam": args.lam, "i": args.i,
                "complemented": args.complemented, "samples": args.samples, "seed": args.seed}
    return {"function": _abs(args.function), "mu": args.mu}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "replay":
            ok, diffs = replay(Path(args.record))
            if not ok:
                print(f"replay mismatch: {', '.join(diffs)}", file=sys.stderr)
                return VerificationFailure.exit_code
            print("replay reproduced all outputs")
            return 0
        target = Path(args.output) if args.output else None
        outputs = execute(args.command, _params(args), target)
        if target is None or args.command in ("table", "spectrum", "verify"):
            for text in outputs.values():
                sys.stdout.write(text)
        if args.command == "table" and "NO" in outputs["table"]:
            print("closed form and enumeration disagree", file=sys.stderr)
            return VerificationFailure.exit_code
        if args.command == "verify":
            verdict = "minimal" if json.loads(outputs["report"])["minimal"] else "not_minimal"
            if verdict != args.expect:
                print(f"verdict {verdict}, expected {args.expect}", file=sys.stderr)
                return VerificationFailure.exit_code
        if args.command == "code" and target is not None:
            meta = json.loads(outputs["bundle.json"])
            print(f"{meta['parameters']} {meta['enumerator']}")
        return 0
    except VbcodesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
