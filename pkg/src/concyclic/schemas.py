"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class GramPayload(BaseModel):
    dim: int = Field(ge=2)
    entries: list[list[int]]

    @model_validator(mode="after")
    def _shape(self):
        if len(self.entries) != self.dim or any(len(r) != self.dim for r in self.entries):
            raise ValueError("entries must be a dim x dim matrix")
        return self


class CircleRequest(BaseModel):
    form: Optional[list[int]] = None
    gram: Optional[GramPayload] = None
    n_points: int = Field(ge=1)
    prime_bound: Optional[int] = Field(default=None, ge=2)

    @model_validator(mode="after")
    def _one_input(self):
        if (self.form is None) == (self.gram is None):
            raise ValueError("provide exactly one of form or gram")
        if self.form is not None and len(self.form) != 3:
            raise ValueError("form must be three integers a,b,c")
        return self


class SphereRequest(BaseModel):
    gram: GramPayload
    n_points: int = Field(ge=1)
    prime_bound: Optional[int] = Field(default=None, ge=2)


class CountRepsRequest(BaseModel):
    n: int = Field(ge=1)
    p: int = Field(ge=2)
    k: int = Field(ge=0)


class PrimeSearchRequest(BaseModel):
    n: int = Field(ge=3)
    a: int = Field(ge=1)
    prime_bound: Optional[int] = Field(default=None, ge=2)


class SplitRequest(BaseModel):
    dk: int
    p: int = Field(ge=2)


class CheckMain1Request(BaseModel):
    n: int = Field(ge=1)
    p: int = Field(ge=2)
    kmax: int = Field(ge=0)


class PrimeRecord(BaseModel):
    p: int
    x1: int
    y1: int
    n: int
    a: int


class CircleCertificate(BaseModel):
    kind: Literal["circle"]
    input: dict
    n_points: int
    k: int
    prime: PrimeRecord
    j: int
    center: list[str]
    radius2: str
    metric: list[list[str]]
    points: list[list[int]]
    count: int
    verified: bool


class LiftStepRecord(BaseModel):
    stage: int
    w: list[str]
    w_norm2: str
    excluded: list[str]
    chosen_s: str
    mode: str


class SphereCertificate(BaseModel):
    kind: Literal["sphere"]
    input: dict
    n_points: int
    k: int
    prime: PrimeRecord
    j: int
    center: list[str]
    radius2: str
    metric: list[list[str]]
    points: list[list[int]]
    count: int
    verified: bool
    lift_trace: list[LiftStepRecord]


class CountResponse(BaseModel):
    count: int


class PrimeSearchResponse(BaseModel):
    n: int
    a: int
    p: int
    x1: int
    y1: int


class SplitResponse(BaseModel):
    type: str


class CheckMain1Response(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    p: int
    k_max: int
    hypotheses_met: bool
    unmet: list[str]
    witness: Optional[list[int]]
    counts: list[int]
    expected: list[int]
    generator_agrees: Optional[bool]
    passed: bool = Field(alias="pass")
