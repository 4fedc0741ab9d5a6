"""Canned studies exercising each operator family end to end.

`run_example(name)` executes one; `run_all_examples()` returns them all,
keyed by name, for the reproduce entry points.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .. import kernels
from ..lattice import DilationLattice
from .report import ExperimentReport
from .studies import (
    ExperimentConfig,
    run_equivalence_study,
    run_rate_study,
    run_symbol_study,
)

_RUNNERS = {
    "rate": run_rate_study,
    "equivalence": run_equivalence_study,
    "symbol": run_symbol_study,
}


def _examples() -> Dict[str, Tuple[str, ExperimentConfig]]:
    line = DilationLattice((2,))
    plane = DilationLattice((2, 2))
    return {
        "e1_dirichlet_rate": (
            "rate",
            ExperimentConfig(
                label="e1_dirichlet_rate",
                kernel=kernels.dirichlet(),
                functional=kernels.delta(),
                lattice=line,
                j_range=(1, 6),
                p_values=(2.0,),
                test_function={"kind": "power", "alpha": 2.5, "cutoff": 256},
                comparators=("best_approx",),
            ),
        ),
        "e2_corrected_vs_best": (
            "equivalence",
            ExperimentConfig(
                label="e2_corrected_vs_best",
                kernel=kernels.corrected_dirichlet(0.5),
                functional=kernels.average(0.5),
                lattice=line,
                j_range=(1, 6),
                p_values=(2.0,),
                test_function={"kind": "power", "alpha": 2.0, "cutoff": 256},
                comparators=("best_approx",),
            ),
        ),
        "e3_average_vs_modulus": (
            "equivalence",
            ExperimentConfig(
                label="e3_average_vs_modulus",
                kernel=kernels.dirichlet(),
                functional=kernels.average(0.5),
                lattice=line,
                j_range=(1, 5),
                p_values=(2.0,),
                test_function={"kind": "power", "alpha": 2.0, "cutoff": 128},
                comparators=("total_modulus(2)",),
            ),
        ),
        "e4_average_plane": (
            "equivalence",
            ExperimentConfig(
                label="e4_average_plane",
                kernel=kernels.dirichlet(),
                functional=kernels.average(0.5),
                lattice=plane,
                j_range=(1, 3),
                p_values=(2.0,),
                test_function={
                    "kind": "tensor",
                    "factors": [
                        {"kind": "power", "alpha": 2.0, "cutoff": 16},
                        {"kind": "pure", "frequency": [1]},
                    ],
                },
                comparators=("total_modulus(2)",),
            ),
        ),
        "e5_discrete_weights": (
            "symbol",
            ExperimentConfig(
                label="e5_discrete_weights",
                kernel=kernels.dirichlet(),
                functional=kernels.discrete_weights(
                    (0.25, 0.5, 0.25), ((-1,), (0,), (1,))
                ),
                lattice=line,
                j_range=(3, 6),
                p_values=(2.0,),
                test_function={"kind": "power", "alpha": 2.0, "cutoff": 128},
                symbol_orders=(2.0,),
                symbol_delta=0.375,
            ),
        ),
        "e6_riesz_k_functional": (
            "equivalence",
            ExperimentConfig(
                label="e6_riesz_k_functional",
                kernel=kernels.riesz_kernel(1.5, 1.0),
                functional=kernels.delta(),
                lattice=line,
                j_range=(2, 5),
                p_values=(2.0,),
                test_function={"kind": "power", "alpha": 2.0, "cutoff": 128},
                comparators=("k_functional(1.5)",),
            ),
        ),
    }


EXAMPLES = tuple(_examples().keys())


def run_example(name: str) -> ExperimentReport:
    table = _examples()
    if name not in table:
        raise KeyError(f"unknown example {name!r}; choose from {sorted(table)}")
    study, config = table[name]
    return _RUNNERS[study](config)


def run_all_examples() -> Dict[str, ExperimentReport]:
    return {name: run_example(name) for name in _examples()}
