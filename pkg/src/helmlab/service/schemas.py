"""Request/response models for the HTTP service (and the CLI thin client).

Curve, region and candidate arguments travel as the same token grammar the
CLI accepts (`circle 0 0 1`, `rect 1 1`, `slab 1`, ...); grid masks travel
inline in the plain-text mask format so the service never reads client
paths.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator


class ThresholdRequest(BaseModel):
    region: str


class ThresholdResponse(BaseModel):
    region: str
    k0: float
    lambda1: float | None = None   # closed-form regions only


class EigRequest(BaseModel):
    mask: str                      # inline mask text: `rows cols spacing` + 0/1 rows
    count: int = 1

    @field_validator("count")
    @classmethod
    def _count_range(cls, v):
        if not 1 <= v <= 10:
            raise ValueError("count must be between 1 and 10")
        return v


class EigResponse(BaseModel):
    eigenvalues: list[float]
    spacing: float
    error_estimates: list[float]


class VerifyRequest(BaseModel):
    candidate: str
    k: float
    spacing: float | None = None


class VerifyResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    max_residual: float
    min_value: float
    passed: bool = Field(alias="pass")
    witness_max: list[float]
    witness_min: list[float]
    spacing: float
    method: str


class ForwardRequest(BaseModel):
    curve: str
    k: float
    d: float = 0.0                 # incidence angle, radians
    n: int | None = None
    angles: int = 360


class ForwardResponse(BaseModel):
    theta: list[float]
    re: list[float]
    im: list[float]
    n_used: int
    residual: float


class LinspaceSpec(BaseModel):
    linspace: tuple[float, float, int]


class SweepRequest(BaseModel):
    curve_a: str
    curve_b: str
    d: float = 0.0
    k: list[float] | LinspaceSpec
    n: int = 128
    angles: int = 360
    region: str | None = None
    output: str | None = None      # used by the CLI client, ignored server-side


class SweepRowModel(BaseModel):
    k: float
    delta: float
    error_floor: float
    threshold_k0: float
    below_threshold: bool
    error: str | None = None


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]
    csv: str


class SelfTestCheckModel(BaseModel):
    name: str
    passed: bool
    detail: str


class SelfTestResponse(BaseModel):
    ok: bool
    checks: list[SelfTestCheckModel]


class ErrorResponse(BaseModel):
    error: str
    message: str
