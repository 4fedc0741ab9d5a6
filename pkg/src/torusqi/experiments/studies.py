"""Study runners: rate, equivalence, and symbol experiments over a config.

A study config names the operator (kernel + functional + dilation), the
level range, the Lebesgue exponents, a test function, and the comparator
quantities to report against.  Comparators are given as small expressions,
e.g. ``best_approx``, ``total_modulus(2)``, ``fractional_modulus(1.5)``,
``mixed_modulus_sum(2)``, ``k_functional(1.5)``, ``besov_tail(0)``.

Every runner returns an ExperimentReport whose rows flatten to the fixed
CSV schema (j, p, error, comparator, ratio, slope, tag); richer structure
survives in the JSON rendering.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .. import kernels, smoothness
from ..kernels import (
    DefectSingularityError,
    FunctionalSpec,
    KernelSpec,
    compat_order,
    compat_radius,
    defect_symbol,
    discrete_weights_doubled_symbol,
    fractional_condition_symbols,
)
from ..lattice import DilationLattice, in_index_set
from ..quasiinterp import approximation_error, quasi_interpolant
from ..spectrum import SpectralFunction, multiplier_l1_bound
from .report import ExperimentReport, config_hash
from .testfunctions import build_test_function

MAX_STUDY_GRID = 2**22


@dataclass(frozen=True)
class ExperimentConfig:
    label: str
    kernel: KernelSpec
    functional: FunctionalSpec
    lattice: DilationLattice
    j_range: Tuple[int, int]
    p_values: Tuple[float, ...]
    test_function: Mapping
    comparators: Tuple[str, ...] = ()
    oversample: int = 16
    seed: int = 1234
    symbol_orders: Tuple[float, ...] = (2.0,)
    symbol_delta: float = 0.375

    def __post_init__(self) -> None:
        lo, hi = self.j_range
        if not (isinstance(lo, int) and isinstance(hi, int) and 1 <= lo <= hi):
            raise ValueError(f"j_range must be integers 1 <= lo <= hi, got {self.j_range}")
        if self.oversample < 1:
            raise ValueError(f"oversample must be positive, got {self.oversample}")
        if self.lattice.index_count(hi) > 2**20:
            raise ValueError(f"level {hi} exceeds the 2^20 lattice-size cap")
        if self.lattice.index_count(hi) * self.oversample > MAX_STUDY_GRID:
            raise ValueError(
                f"level {hi} with oversample {self.oversample} exceeds the "
                f"{MAX_STUDY_GRID}-point grid budget"
            )
        for p in self.p_values:
            if p != math.inf and p < 1:
                raise ValueError(f"exponents must lie in [1, inf], got {p}")

    @property
    def levels(self) -> range:
        return range(self.j_range[0], self.j_range[1] + 1)

    def function(self) -> SpectralFunction:
        return build_test_function(self.test_function, self.lattice.d)

    def to_json_dict(self) -> Dict:
        return {
            "label": self.label,
            "kernel": {"variant": self.kernel.variant, "params": self.kernel.param_dict},
            "functional": {
                "variant": self.functional.variant,
                "params": self.functional.param_dict,
            },
            "lattice": {"diag": list(self.lattice.diag)},
            "j_range": list(self.j_range),
            "p_values": ["inf" if p == math.inf else p for p in self.p_values],
            "test_function": dict(self.test_function),
            "comparators": list(self.comparators),
            "oversample": self.oversample,
            "seed": self.seed,
            "symbol_orders": list(self.symbol_orders),
            "symbol_delta": self.symbol_delta,
        }

    @staticmethod
    def from_json_dict(payload: Mapping) -> "ExperimentConfig":
        kernel = _kernel_from_dict(payload["kernel"])
        functional = _functional_from_dict(payload["functional"])
        lattice = DilationLattice(tuple(int(v) for v in payload["lattice"]["diag"]))
        j_lo, j_hi = payload["j_range"]
        return ExperimentConfig(
            label=str(payload["label"]),
            kernel=kernel,
            functional=functional,
            lattice=lattice,
            j_range=(int(j_lo), int(j_hi)),
            p_values=tuple(_parse_p(p) for p in payload["p_values"]),
            test_function=dict(payload["test_function"]),
            comparators=tuple(payload.get("comparators", ())),
            oversample=int(payload.get("oversample", 16)),
            seed=int(payload.get("seed", 1234)),
            symbol_orders=tuple(float(s) for s in payload.get("symbol_orders", (2.0,))),
            symbol_delta=float(payload.get("symbol_delta", 0.375)),
        )

    def with_overrides(self, seed: Optional[int] = None, oversample: Optional[int] = None):
        cfg = self
        if seed is not None:
            cfg = replace(cfg, seed=seed)
        if oversample is not None:
            cfg = replace(cfg, oversample=oversample)
        return cfg


def _parse_p(raw) -> float:
    if raw in ("inf", "Inf", "infinity"):
        return math.inf
    return float(raw)


_KERNEL_BUILDERS = {
    "dirichlet": lambda p: kernels.dirichlet(),
    "corrected_dirichlet": lambda p: kernels.corrected_dirichlet(p["sigma"]),
    "vallee_poussin": lambda p: kernels.vallee_poussin_kernel(),
    "riesz": lambda p: kernels.riesz_kernel(p["s"], p["gamma"]),
}

_FUNCTIONAL_BUILDERS = {
    "delta": lambda p: kernels.delta(),
    "average": lambda p: kernels.average(p["sigma"]),
    "discrete_weights": lambda p: kernels.discrete_weights(
        tuple(p["weights"]), tuple(tuple(s) for s in p["shifts"])
    ),
    "differential": lambda p: kernels.differential(
        {tuple(int(b) for b in beta): c for beta, c in p["coeffs"]}
    ),
}


def _kernel_from_dict(payload: Mapping) -> KernelSpec:
    variant = payload["variant"]
    if variant not in _KERNEL_BUILDERS:
        raise ValueError(f"unknown kernel variant {variant!r}")
    return _KERNEL_BUILDERS[variant](payload.get("params", {}))


def _functional_from_dict(payload: Mapping) -> FunctionalSpec:
    variant = payload["variant"]
    if variant not in _FUNCTIONAL_BUILDERS:
        raise ValueError(f"unknown functional variant {variant!r}")
    return _FUNCTIONAL_BUILDERS[variant](payload.get("params", {}))


# ---------------------------------------------------------------------------
# Comparators
# ---------------------------------------------------------------------------

_COMPARATOR_RE = re.compile(r"^([a-z_]+)(?:\(([^)]*)\))?$")

Comparator = Callable[[SpectralFunction, "ExperimentConfig", int, float], smoothness.TaggedValue]


def parse_comparator(expr: str) -> Comparator:
    match = _COMPARATOR_RE.match(expr.strip())
    if not match:
        raise ValueError(f"malformed comparator {expr!r}")
    name, raw_arg = match.group(1), match.group(2)
    arg = float(raw_arg) if raw_arg not in (None, "") else None

    if name == "best_approx":
        return lambda f, cfg, j, p: smoothness.best_approx(
            f, cfg.lattice, j, p, cfg.oversample
        )
    if name == "total_modulus":
        return _modulus_comparator(smoothness.total(_require(arg, expr)))
    if name == "fractional_modulus":
        return _modulus_comparator(smoothness.fractional(_require(arg, expr)))
    if name == "mixed_modulus_sum":
        return _mixed_sum_comparator(int(_require(arg, expr)))
    if name == "k_functional":
        s = _require(arg, expr)
        return lambda f, cfg, j, p: smoothness.TaggedValue(
            smoothness.k_functional(f, s, cfg.lattice, j, p, cfg.oversample), "realized"
        )
    if name == "besov_tail":
        n_order = int(arg) if arg is not None else 0
        return _besov_tail_comparator(n_order)
    raise ValueError(f"unknown comparator {expr!r}")


def _require(arg: Optional[float], expr: str) -> float:
    if arg is None:
        raise ValueError(f"comparator {expr!r} needs an argument")
    return arg


def _modulus_comparator(request: smoothness.ModulusRequest) -> Comparator:
    def run(f, cfg, j, p):
        val = smoothness.modulus(
            f, request, cfg.lattice, j, p, seed=cfg.seed, oversample=cfg.oversample
        )
        return smoothness.TaggedValue(val, "sampled-sup")

    return run


def _mixed_sum_comparator(s: int) -> Comparator:
    def run(f, cfg, j, p):
        total = 0.0
        for i in range(cfg.lattice.d):
            beta = tuple(s if a == i else 0 for a in range(cfg.lattice.d))
            total += smoothness.modulus(
                f, smoothness.mixed(beta), cfg.lattice, j, p, seed=cfg.seed,
                oversample=cfg.oversample,
            )
        return smoothness.TaggedValue(total, "sampled-sup")

    return run


def _besov_tail_comparator(n_order: int) -> Comparator:
    def run(f, cfg, j, p):
        nu_max = _covering_level(f, cfg.lattice)
        val = smoothness.besov_tail_sum(
            f, cfg.lattice, j, n_order, p, nu_max, cfg.oversample
        )
        return smoothness.TaggedValue(val, "tail-sum")

    return run


def _covering_level(f: SpectralFunction, lattice: DilationLattice) -> int:
    nu = 1
    while any(not in_index_set(lattice, k, nu) for k in f.coeffs):
        nu += 1
        if nu > 64:
            raise ValueError("support too large to cover")
    return nu


# ---------------------------------------------------------------------------
# Runners
# ---------------------------------------------------------------------------


def _metadata(config: ExperimentConfig, study: str) -> Dict:
    payload = config.to_json_dict()
    return {"study": study, "config": payload, "config_hash": config_hash(payload)}


def _ratio_and_tag(err: float, value: float, method: str) -> Tuple[float, str]:
    """Ratio err/value with 0/0 flagged as exact reproduction, not a blow-up."""
    if value > 0.0:
        return err / value, method
    if err <= 1e-10:
        return math.nan, "exact-reproduction"
    return math.inf, method


def run_rate_study(config: ExperimentConfig) -> ExperimentReport:
    """Errors across levels plus a decay-order fit per exponent.

    The fit regresses log error on x = j log m^{1/d} (so the slope is the
    decay order in the scale |M^{-j}|); `residual` is 1 - R^2 of that line
    in log space, and slopes with residual above 0.2 are tagged poor-fit.
    """
    f = config.function()
    comparators = [(expr, parse_comparator(expr)) for expr in config.comparators]
    rows: List[Dict] = []
    for p in config.p_values:
        errors = []
        for j in config.levels:
            op = quasi_interpolant(config.kernel, config.functional, config.lattice, j)
            err = approximation_error(op, f, p, config.oversample)
            errors.append(err)
            row = {"kind": "cell", "j": j, "p": p, "error": err}
            for expr, comp in comparators:
                tagged = comp(f, config, j, p)
                ratio, tag = _ratio_and_tag(err, tagged.value, tagged.method)
                rows.append(
                    {
                        **row,
                        "comparator": expr,
                        "comparator_value": tagged.value,
                        "ratio": ratio,
                        "tag": tag,
                    }
                )
            if not comparators:
                rows.append(row)
        slope, residual = fit_decay(config, errors)
        rows.append(
            {
                "kind": "slope",
                "p": p,
                "slope": slope,
                "residual": residual,
                "tag": "ok" if residual <= 0.2 else "poor-fit",
            }
        )
    return ExperimentReport(metadata=_metadata(config, "rate"), rows=rows)


def fit_decay(config: ExperimentConfig, errors: Sequence[float]) -> Tuple[float, float]:
    """Least-squares decay order of the level errors; returns (slope, 1 - R^2).

    Zero errors (exact reproduction) short-circuit to (inf, 0.0).
    """
    errs = np.asarray(errors, dtype=float)
    if np.any(errs <= 0):
        return math.inf, 0.0
    x = np.array(
        [j * math.log(config.lattice.det_abs ** (1.0 / config.lattice.d)) for j in config.levels]
    )
    y = np.log(errs)
    coeffs, residuals = np.polyfit(x, y, 1, full=True)[:2]
    slope = -float(coeffs[0])
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    ss_res = float(residuals[0]) if len(residuals) else 0.0
    if ss_tot == 0.0:
        return slope, 0.0
    return slope, ss_res / ss_tot


def run_equivalence_study(config: ExperimentConfig) -> ExperimentReport:
    """Error-to-comparator ratios per level plus min/max brackets per exponent."""
    f = config.function()
    comparators = [(expr, parse_comparator(expr)) for expr in config.comparators]
    if not comparators:
        raise ValueError("an equivalence study needs at least one comparator")
    rows: List[Dict] = []
    for p in config.p_values:
        ratio_track: Dict[str, List[float]] = {expr: [] for expr, _ in comparators}
        for j in config.levels:
            op = quasi_interpolant(config.kernel, config.functional, config.lattice, j)
            err = approximation_error(op, f, p, config.oversample)
            for expr, comp in comparators:
                tagged = comp(f, config, j, p)
                ratio, tag = _ratio_and_tag(err, tagged.value, tagged.method)
                ratio_track[expr].append(ratio)
                rows.append(
                    {
                        "kind": "cell",
                        "j": j,
                        "p": p,
                        "error": err,
                        "comparator": expr,
                        "comparator_value": tagged.value,
                        "ratio": ratio,
                        "tag": tag,
                    }
                )
        for expr, ratios in ratio_track.items():
            finite = [r for r in ratios if math.isfinite(r)]
            # All-reproduction tracks have no finite ratios; report nan rather
            # than pretending the bracket blew up.
            rows.append(
                {
                    "kind": "bracket",
                    "p": p,
                    "comparator": expr,
                    "ratio": min(finite) if finite else math.nan,
                    "tag": "bracket-min",
                }
            )
            rows.append(
                {
                    "kind": "bracket",
                    "p": p,
                    "comparator": expr,
                    "ratio": max(finite) if finite else math.nan,
                    "tag": "bracket-max",
                }
            )
    return ExperimentReport(metadata=_metadata(config, "equivalence"), rows=rows)


def run_symbol_study(config: ExperimentConfig) -> ExperimentReport:
    """Compatibility radius/order and condition-multiplier bounds per level.

    Rows carry the reported number in the `ratio` column (every quantity
    here is a dimensionless symbol statistic); `comparator` names it.
    """
    rows: List[Dict] = []
    lat = config.lattice
    for j in config.levels:
        rows.append(
            {
                "kind": "symbol",
                "j": j,
                "comparator": "compat_radius",
                "ratio": compat_radius(config.kernel, config.functional, lat, j),
                "tag": "symbol",
            }
        )
        for s in config.symbol_orders:
            rows.append(
                {
                    "kind": "symbol",
                    "j": j,
                    "comparator": f"compat_order(s={s:g},delta={config.symbol_delta:g})",
                    "ratio": compat_order(
                        config.kernel, config.functional, lat, [j], config.symbol_delta, s
                    ),
                    "tag": "symbol",
                }
            )
        rows.extend(_condition_rows(config, j))
        rows.extend(_sample_rows(config, j))
    return ExperimentReport(metadata=_metadata(config, "symbol"), rows=rows)


def _condition_rows(config: ExperimentConfig, j: int) -> List[Dict]:
    rows = []
    s = config.symbol_orders[0]
    for direction in ("upper", "lower"):
        try:
            fam = fractional_condition_symbols(
                config.kernel, config.functional, config.lattice, s, config.symbol_delta,
                direction,
            )
            val = multiplier_l1_bound(fam.bind(j), fam.support(j), config.oversample)
            tag = "symbol"
        except DefectSingularityError:
            val = math.nan
            tag = "singular"
        rows.append(
            {
                "kind": "symbol",
                "j": j,
                "comparator": f"{direction}_condition_l1(s={s:g})",
                "ratio": val,
                "tag": tag,
            }
        )
    return rows


def _sample_rows(config: ExperimentConfig, j: int) -> List[Dict]:
    lat = config.lattice
    extents = lat.axis_extents(j)
    points = []
    for axis in range(lat.d):
        k = tuple(extents[axis] // 4 if i == axis else 0 for i in range(lat.d))
        if any(k):
            points.append(k)
    diag = tuple(n // 4 for n in extents)
    if any(diag) and diag not in points:
        points.append(diag)
    rows = []
    psi = defect_symbol(config.kernel, config.functional, lat)
    for k in points:
        rows.append(
            {
                "kind": "symbol",
                "j": j,
                "comparator": f"defect{list(k)}",
                "ratio": abs(psi.at(j, k)),
                "tag": "symbol",
            }
        )
    if config.functional.variant == "discrete_weights":
        alt = discrete_weights_doubled_symbol(config.functional, lat)
        for k in points:
            rows.append(
                {
                    "kind": "symbol",
                    "j": j,
                    "comparator": f"functional{list(k)}",
                    "ratio": abs(alt.at(j, k)),
                    "tag": alt.label,
                }
            )
    return rows
