"""File formats: function files, code bundles, verification reports, run records.

Everything is JSON with sorted keys, CSV for distributions and hex for F_2 data,
so serialize -> parse -> serialize is byte-identical.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .codes import LinearCode, WeightDistribution, build_code
from .constructions import build_family, builder_params
from .gf2 import field
from .vectorial import VectorialFunction

FUNCTION_FORMAT = "vbcodes-function/1"
BUNDLE_FORMAT = "vbcodes-code/1"
REPORT_FORMAT = "vbcodes-verify/1"
RUN_FORMAT = "vbcodes-run/1"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o666 & ~_umask())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _umask() -> int:
    mask = os.umask(0)
    os.umask(mask)
    return mask


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def table_digest(F: VectorialFunction) -> str:
    return hashlib.sha256(np.ascontiguousarray(F.table, dtype="<i8").tobytes()).hexdigest()


# ---------------------------------------------------------------- functions

def function_record(F: VectorialFunction) -> dict:
    rec = {
        "format": FUNCTION_FORMAT,
        "n": F.n,
        "m": F.m,
        "pairing": F.pairing,
        "plain_bits": F.plain_bits,
        "modulus": hex(F.field.modulus) if F.field is not None else None,
        "sha256": table_digest(F),
    }
    if F.family:
        rec["family"] = dict(F.family)
    else:
        width = max(1, (F.m + 3) // 4)
        rec["table"] = [f"{int(v):0{width}x}" for v in F.table]
    return rec


def function_from_record(rec: dict) -> VectorialFunction:
    if rec.get("format") != FUNCTION_FORMAT:
        raise ValueError(f"not a function file (format {rec.get('format')!r})")
    if "family" in rec:
        fam = rec["family"]
        F = build_family(fam["kind"], **builder_params(fam))
    else:
        table = np.array([int(h, 16) for h in rec["table"]], dtype=np.int64)
        ctx = field(rec["n"], int(rec["modulus"], 16)) if rec["pairing"] == "trace" else None
        F = VectorialFunction(rec["n"], rec["m"], table, field=ctx, plain_bits=rec.get("plain_bits", 0))
    if (F.n, F.m, F.pairing) != (rec["n"], rec["m"], rec["pairing"]):
        raise ValueError("function record header does not match its contents")
    if rec.get("sha256") and table_digest(F) != rec["sha256"]:
        raise ValueError("function table digest mismatch; the record does not reproduce its table")
    return F


def save_function(F: VectorialFunction, path) -> str:
    text = dumps(function_record(F))
    atomic_write(path, text)
    return text


def load_function(path) -> VectorialFunction:
    return function_from_record(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------- code bundles

def bundle_files(code: LinearCode, dist: WeightDistribution) -> dict[str, str]:
    """File name -> contents for a code bundle directory."""
    meta = {
        "format": BUNDLE_FORMAT,
        "function": function_record(code.function),
        "augmented": code.augmented,
        "pairing": code.pairing,
        "length": code.length,
        "dimension": code.dimension,
        "minimum_distance": dist.d,
        "parameters": f"[{code.length},{code.dimension},{dist.d}]",
        "enumerator": dist.enumerator(),
        "weights_verified": dist.verified,
    }
    return {
        "bundle.json": dumps(meta),
        "generator.hex": "\n".join(code.generator_hex()) + "\n",
        "weights.csv": dist.to_csv(),
    }


def save_bundle(code: LinearCode, dist: WeightDistribution, directory) -> dict[str, str]:
    files = bundle_files(code, dist)
    for name, text in files.items():
        atomic_write(Path(directory) / name, text)
    return files


def load_bundle(directory) -> tuple[LinearCode, WeightDistribution, dict]:
    directory = Path(directory)
    meta = json.loads((directory / "bundle.json").read_text())
    if meta.get("format") != BUNDLE_FORMAT:
        raise ValueError(f"not a code bundle (format {meta.get('format')!r})")
    F = function_from_record(meta["function"])
    code = build_code(F, augmented=meta["augmented"])
    hex_rows = (directory / "generator.hex").read_text().split()
    if hex_rows != code.generator_hex():
        raise ValueError("generator.hex does not match the rebuilt generator matrix")
    dist = WeightDistribution.from_csv((directory / "weights.csv").read_text())
    dist = WeightDistribution(dist.freq, meta.get("weights_verified", "none"))
    return code, dist, meta


# ---------------------------------------------------------------- reports and runs

def report_record(code: LinearCode, minimality, ab) -> dict:
    witnesses = []
    if minimality.witness is not None:
        w = minimality.witness
        entry = w.to_json()
        for key, idx in (("c1", w.c1), ("c2", w.c2)):
            mu, nu, lam = code.split_index(idx)
            entry[f"{key}_mu"], entry[f"{key}_nu"] = mu, nu
            if code.augmented:
                entry[f"{key}_lambda"] = lam
        witnesses.append(entry)
    return {
        "format": REPORT_FORMAT,
        "minimal": minimality.minimal,
        "route": minimality.route,
        "witnesses": witnesses,
        "ab": ab.to_json() if ab is not None else None,
        "details": _jsonable(minimality.details),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def run_record(command: str, params: dict, outputs: dict[str, str]) -> dict:
    return {
        "format": RUN_FORMAT,
        "tool_version": __version__,
        "command": command,
        "params": params,
        "outputs": {name: sha256_text(text) for name, text in sorted(outputs.items())},
    }
