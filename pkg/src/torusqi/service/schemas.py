"""Request/response models for the HTTP surface.

These mirror the JSON config schema one-to-one; `.to_core()` hands off to
the same parser the library uses, so service and direct callers cannot
drift apart.
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field

from ..experiments.studies import ExperimentConfig


class KernelModel(BaseModel):
    variant: Literal["dirichlet", "corrected_dirichlet", "vallee_poussin", "riesz"]
    params: Dict = Field(default_factory=dict)


class FunctionalModel(BaseModel):
    variant: Literal["delta", "average", "discrete_weights", "differential"]
    params: Dict = Field(default_factory=dict)


class LatticeModel(BaseModel):
    diag: List[int]


class ConfigModel(BaseModel):
    label: str
    kernel: KernelModel
    functional: FunctionalModel
    lattice: LatticeModel
    j_range: Tuple[int, int]
    p_values: List[Union[float, Literal["inf"]]]
    test_function: Dict
    comparators: List[str] = Field(default_factory=list)
    oversample: int = 16
    seed: int = 1234
    symbol_orders: List[float] = Field(default_factory=lambda: [2.0])
    symbol_delta: float = 0.375

    def to_core(self) -> ExperimentConfig:
        return ExperimentConfig.from_json_dict(self.model_dump())


class StudyRequest(BaseModel):
    config: ConfigModel
    seed: Optional[int] = None
    oversample: Optional[int] = None


class StudyResponse(BaseModel):
    metadata: Dict
    rows: List[Dict]


class ReproduceRequest(BaseModel):
    examples: Optional[List[str]] = None
    seed: Optional[int] = None
    oversample: Optional[int] = None


class ReproduceResponse(BaseModel):
    reports: Dict[str, StudyResponse]


class CoefficientModel(BaseModel):
    k: List[int]
    re: float
    im: float = 0.0


class SpectralFunctionModel(BaseModel):
    d: int
    coeffs: List[CoefficientModel]


class OperatorApplyRequest(BaseModel):
    kernel: KernelModel
    functional: FunctionalModel
    lattice: LatticeModel
    level: int
    function: SpectralFunctionModel
    route: Literal["spectral", "spatial"] = "spectral"


class OperatorApplyResponse(BaseModel):
    function: SpectralFunctionModel


class HealthResponse(BaseModel):
    status: str
    version: str
