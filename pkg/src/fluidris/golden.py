"""Golden-vector verification against the independently generated CSV files.

CSV schema (written by the oracle generator, committed under golden/):
    function,parameters,argument,value,precision,method

Functions understood here: j0, k_nu, ln_gamma, pf_coeff, mixture_cdf,
meijer_g_14_42.  Spectra are encoded as "spectrum=<lam>:<m>|<lam>:<m>|...",
eigenvalues descending; pf_coeff rows address a term as argument "i,k"
(1-based group index, shape k).
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

from fluidris.channel import SpectralModel
from fluidris.errors import ConfigurationError
from fluidris.metrics import meijer_g_14_42
from fluidris.mixture import cdf_g0, coefficients
from fluidris.specfun import bessel_j0, bessel_k, ln_gamma

__all__ = ["GoldenResult", "check_golden_file"]

_TOLERANCES = {
    "j0": 1e-10,
    "k_nu": 1e-10,
    "ln_gamma": 1e-10,
    "pf_coeff": 1e-10,
    "mixture_cdf": 1e-10,
    "meijer_g_14_42": 1e-8,
}


@dataclass(frozen=True)
class GoldenResult:
    function: str
    checked: int
    max_rel_err: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.max_rel_err <= self.tolerance


def _parse_params(text: str) -> dict:
    out = {}
    if text:
        for part in text.split(";"):
            key, _, val = part.partition("=")
            out[key.strip()] = val.strip()
    return out


def _spectral_from_string(spec: str) -> SpectralModel:
    groups = []
    for part in spec.split("|"):
        lam, _, mult = part.partition(":")
        groups.append((float(lam), int(mult)))
    if any(a[0] <= b[0] for a, b in zip(groups, groups[1:])):
        raise ConfigurationError(f"golden spectrum must be strictly descending: {spec!r}")
    rank = sum(m for _, m in groups)
    trace = sum(lam * m for lam, m in groups)
    return SpectralModel(
        groups=tuple(groups), rank=rank, trace_c=trace, cluster_tol=0.0, rank_tol=0.0, dropped_mass=0.0
    )


def _evaluate(function: str, params: dict, argument: str) -> float:
    if function == "j0":
        return float(bessel_j0(float(argument)))
    if function == "k_nu":
        sb = bessel_k(int(params["nu"]), float(argument))
        return sb.unscaled()
    if function == "ln_gamma":
        return float(ln_gamma(float(argument)))
    if function == "meijer_g_14_42":
        return meijer_g_14_42(int(params["k"]), float(argument))
    if function == "pf_coeff":
        model = coefficients(_spectral_from_string(params["spectrum"]))
        i_str, _, k_str = argument.partition(",")
        i, k = int(i_str), int(k_str)
        lam = model.lambdas
        groups = sorted(set(lam.tolist()), reverse=True)
        target_lam = groups[i - 1]
        for lam_t, k_t, c_t in model.terms:
            if lam_t == target_lam and k_t == k:
                return c_t
        raise ConfigurationError(f"golden pf_coeff addresses a missing term ({i}, {k})")
    if function == "mixture_cdf":
        model = coefficients(_spectral_from_string(params["spectrum"]))
        return float(cdf_g0(model, float(argument)))
    raise ConfigurationError(f"unknown golden function {function!r}")


def check_golden_file(path) -> list:
    """Check every row of a golden CSV; returns per-function GoldenResult list."""
    p = Path(path)
    if not p.is_file():
        raise ConfigurationError(f"golden vector file not found: {p}")
    worst: dict = {}
    counts: dict = {}
    with p.open(newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"function", "parameters", "argument", "value"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ConfigurationError(f"golden CSV {p} missing columns {sorted(required)}")
        for row in reader:
            fn = row["function"].strip()
            if fn not in _TOLERANCES:
                raise ConfigurationError(f"unknown golden function {fn!r} in {p}")
            got = _evaluate(fn, _parse_params(row["parameters"].strip()), row["argument"].strip())
            want = float(row["value"])
            rel = abs(got - want) / max(abs(want), 1e-300)
            worst[fn] = max(worst.get(fn, 0.0), rel)
            counts[fn] = counts.get(fn, 0) + 1
    return [
        GoldenResult(function=fn, checked=counts[fn], max_rel_err=worst[fn], tolerance=_TOLERANCES[fn])
        for fn in sorted(worst)
    ]
