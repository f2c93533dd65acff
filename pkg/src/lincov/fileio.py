"""File formats: model spec JSON, acvf/weights CSV, series text, manifests.

All floating-point output uses 17 significant digits, which round-trips
64-bit floats exactly.  Writes are atomic (temp file in the target
directory, then rename).
"""

import json
import os
import tempfile

import numpy as np

from .acvf import AcvfSequence, Tail
from .errors import DomainError
from .models import ArmaModel, FarimaSpec
from .simulation import NoiseSpec
from .weights import FilterWeights


def fmt(x: float) -> str:
    """17 significant digits: lossless for float64."""
    return format(float(x), ".17g")


def atomic_write_text(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lincov-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str, payload: dict) -> None:
    atomic_write_text(path, json.dumps(payload, indent=2, allow_nan=False) + "\n")


# ---------------------------------------------------------------------------
# model spec JSON

_MODEL_KEYS = {"ar", "ma", "sigma2", "d", "sim"}
_SIM_KEYS = {"n", "burn_in", "seed", "noise"}
_NOISE_KEYS = {"kind", "variance"}


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    for key in obj:
        if key not in allowed:
            raise DomainError(f"unknown key {key!r} in {where}")


def _coeff_list(obj, name: str):
    if not isinstance(obj, list) or not all(isinstance(v, (int, float)) for v in obj):
        raise DomainError(f"field {name!r} must be a list of numbers")
    return tuple(float(v) for v in obj)


def parse_model_dict(data: dict):
    """(ArmaModel | FarimaSpec, SimConfig | None) from a model spec dict."""
    if not isinstance(data, dict):
        raise DomainError("model spec must be a JSON object")
    _reject_unknown(data, _MODEL_KEYS, "model spec")
    ar = _coeff_list(data.get("ar", []), "ar")
    ma = _coeff_list(data.get("ma", []), "ma")
    sigma2 = data.get("sigma2", 1.0)
    if not isinstance(sigma2, (int, float)):
        raise DomainError("field 'sigma2' must be a number")
    arma = ArmaModel(ar, ma, float(sigma2))
    model: ArmaModel | FarimaSpec = arma
    if "d" in data:
        d = data["d"]
        if not isinstance(d, (int, float)):
            raise DomainError("field 'd' must be a number")
        model = FarimaSpec(float(d), arma)

    sim = None
    if "sim" in data:
        block = data["sim"]
        if not isinstance(block, dict):
            raise DomainError("field 'sim' must be an object")
        _reject_unknown(block, _SIM_KEYS, "sim block")
        noise = NoiseSpec("gaussian", float(sigma2))
        if "noise" in block:
            nblock = block["noise"]
            if not isinstance(nblock, dict):
                raise DomainError("field 'noise' must be an object")
            _reject_unknown(nblock, _NOISE_KEYS, "noise block")
            noise = NoiseSpec(
                nblock.get("kind", "gaussian"),
                float(nblock.get("variance", sigma2)),
            )
        # burn_in defaults to the simulation filter length, which is not
        # known yet; the caller fills it in when building the SimConfig.
        sim = {
            "n": int(block["n"]) if "n" in block else None,
            "burn_in": int(block["burn_in"]) if "burn_in" in block else None,
            "seed": int(block.get("seed", 0)),
            "noise": noise,
        }
    return model, sim


def parse_model_file(path: str):
    try:
        with open(path) as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON in {path}: {exc}") from exc
    return parse_model_dict(data)


def model_to_dict(model) -> dict:
    if isinstance(model, FarimaSpec):
        arma = model.arma if model.arma is not None else ArmaModel.white(1.0)
        return {"ar": list(arma.ar), "ma": list(arma.ma),
                "sigma2": arma.sigma2, "d": model.d}
    return {"ar": list(model.ar), "ma": list(model.ma), "sigma2": model.sigma2}


# ---------------------------------------------------------------------------
# acvf CSV: optional tail comment, header, one row per lag

def _tail_comment(tail: Tail) -> str | None:
    if tail.kind == "geometric":
        return f"# tail geometric C={fmt(tail.const)} r={fmt(tail.rate)}"
    if tail.kind == "power":
        return f"# tail power c={fmt(tail.const)} alpha={fmt(tail.rate)}"
    if tail.kind == "zero":
        return "# tail zero"
    return None


def _parse_tail_comment(line: str) -> Tail:
    parts = line.lstrip("#").split()
    if not parts or parts[0] != "tail":
        return Tail.unknown()
    if parts[1] == "zero":
        return Tail.zero()
    fields = dict(p.split("=", 1) for p in parts[2:] if "=" in p)
    if parts[1] == "geometric":
        return Tail.geometric(float(fields["C"]), float(fields["r"]))
    if parts[1] == "power":
        return Tail.power(float(fields["c"]), float(fields["alpha"]))
    return Tail.unknown()


def write_acvf(path: str, acvf: AcvfSequence,
               trunc_bound: float | None = None) -> None:
    lines = []
    comment = _tail_comment(acvf.tail)
    if comment:
        lines.append(comment)
    if trunc_bound is None:
        lines.append("k,gamma_k")
        lines.extend(f"{k},{fmt(v)}" for k, v in enumerate(acvf.values))
    else:
        lines.append("k,gamma_k,trunc_bound")
        bound = fmt(trunc_bound)
        lines.extend(f"{k},{fmt(v)},{bound}" for k, v in enumerate(acvf.values))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_acvf(path: str) -> AcvfSequence:
    tail = Tail.unknown()
    values = []
    with open(path) as handle:
        header_seen = False
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                tail = _parse_tail_comment(line)
                continue
            if not header_seen:
                cols = [c.strip() for c in line.split(",")]
                if cols[:2] != ["k", "gamma_k"]:
                    raise DomainError(
                        f"{path}:{lineno}: expected header 'k,gamma_k', got {line!r}"
                    )
                header_seen = True
                continue
            cols = line.split(",")
            if len(cols) < 2:
                raise DomainError(f"{path}:{lineno}: expected k,gamma_k row")
            k = int(cols[0])
            if k != len(values):
                raise DomainError(f"{path}:{lineno}: lag {k} out of order")
            values.append(float(cols[1]))
    if not header_seen:
        raise DomainError(f"{path}: missing acvf header")
    return AcvfSequence(np.asarray(values), tail)


# ---------------------------------------------------------------------------
# weights CSV

def write_weights(path: str, weights: FilterWeights) -> None:
    lines = [
        f"# tail ratio={fmt(weights.tail_ratio)} const={fmt(weights.tail_const)} "
        f"start={weights.tail_start}",
        "n,psi_n",
    ]
    lines.extend(f"{n},{fmt(v)}" for n, v in enumerate(weights.coeffs))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_weights(path: str) -> FilterWeights:
    values = []
    declared = None
    with open(path) as handle:
        header_seen = False
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line.lstrip("#").split()
                if parts and parts[0] == "tail":
                    fields = dict(p.split("=", 1) for p in parts[1:] if "=" in p)
                    declared = (float(fields["ratio"]), float(fields["const"]),
                                int(fields.get("start", 0)))
                continue
            if not header_seen:
                if [c.strip() for c in line.split(",")][:2] != ["n", "psi_n"]:
                    raise DomainError(
                        f"{path}:{lineno}: expected header 'n,psi_n', got {line!r}"
                    )
                header_seen = True
                continue
            cols = line.split(",")
            n = int(cols[0])
            if n != len(values):
                raise DomainError(f"{path}:{lineno}: index {n} out of order")
            values.append(float(cols[1]))
    if not header_seen:
        raise DomainError(f"{path}: missing weights header")
    arr = np.asarray(values)
    if declared is not None:
        return FilterWeights(arr, *declared)
    return FilterWeights.from_coeffs(arr)


# ---------------------------------------------------------------------------
# series text: one value per line

def write_series(path: str, series: np.ndarray) -> None:
    atomic_write_text(path, "\n".join(fmt(v) for v in series) + "\n")


def read_series(path: str) -> np.ndarray:
    with open(path) as handle:
        return np.asarray([float(line) for line in handle if line.strip()])


# ---------------------------------------------------------------------------
# run manifests

def manifest_path(output: str) -> str:
    return output + ".manifest.json"


def write_manifest(output: str, command: str, parameters: dict,
                   inputs: dict, outputs: list, version: str) -> None:
    payload = {
        "tool": "lincov",
        "version": version,
        "command": command,
        "parameters": parameters,
        "inputs": inputs,
        "outputs": outputs,
    }
    write_json(manifest_path(output), payload)


def read_manifest(path: str) -> dict:
    with open(path) as handle:
        data = json.load(handle)
    for key in ("tool", "command", "parameters", "inputs", "outputs"):
        if key not in data:
            raise DomainError(f"manifest missing key {key!r}")
    return data
