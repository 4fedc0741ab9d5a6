from .report import ExperimentReport, config_hash, render_csv, render_json, write_report
from .studies import (
    ExperimentConfig,
    fit_decay,
    parse_comparator,
    run_equivalence_study,
    run_rate_study,
    run_symbol_study,
)
from .testfunctions import build_test_function
from .presets import EXAMPLES, run_example, run_all_examples

__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "EXAMPLES",
    "build_test_function",
    "config_hash",
    "fit_decay",
    "parse_comparator",
    "render_csv",
    "render_json",
    "run_all_examples",
    "run_equivalence_study",
    "run_example",
    "run_rate_study",
    "run_symbol_study",
    "write_report",
]
