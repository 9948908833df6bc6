"""Request/response models for the HTTP service.

Wire shapes here are part of the public interface: the violation record
mirrors the scanner's JSONL fields, and the analyze response carries the
full window classification plus optional renderings.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

Algorithm = Literal["auto", "A", "B", "both"]


def _validate_base(values: list[int]) -> list[int]:
    if len(values) < 2:
        raise ValueError("a base needs at least two denominations")
    if values[0] != 1:
        raise ValueError("a base must start at 1")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("denominations must be strictly increasing")
    return values


class AnalyzeRequest(BaseModel):
    set: list[int]
    algorithm: Algorithm = "auto"
    map: bool = False
    table: bool = False
    graph: bool = False

    check_set = field_validator("set")(_validate_base)


class GapItem(BaseModel):
    x: int
    m: int


class AnalyzeResponse(BaseModel):
    set: list[int]
    k: int
    h0: int
    h1: int
    h2: int
    n0: int
    horizon: int
    window_end: int
    delta: list[int]
    rises: list[int]
    gaps: list[GapItem]
    permanents: list[int]
    map: Optional[str] = None
    table: Optional[str] = None
    graph: Optional[str] = None


class VerifyRequest(BaseModel):
    set: list[int]
    algorithm: Algorithm = "auto"
    sample: int = Field(default=12, ge=1, le=1000)

    check_set = field_validator("set")(_validate_base)


class CheckItem(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    set: list[int]
    k: int
    h0: int
    h1: int
    h2: int
    n0: int
    passed: bool
    checks: list[CheckItem]


class ScanRequest(BaseModel):
    k: int = Field(ge=4)
    h0: int = Field(ge=3)
    algorithm: Algorithm = "auto"
    a2_range: Optional[tuple[int, int]] = None
    cell_depth: Literal[1, 2] = 2
    workers: int = Field(default=1, ge=1, le=64)
    out: Optional[str] = None
    checkpoint: Optional[str] = None
    resume: bool = False


class ScanSummaryModel(BaseModel):
    k: int
    h0: int
    algorithm: Algorithm
    sets: int
    violations: int
    max_h2: Optional[int]
    max_h2_sets: list[list[int]]
    max_spread: Optional[int]
    max_spread_sets: list[list[int]]
    multi_rise: int
    big_rise: int
    cells_total: int
    cells_skipped: int


class ViolationRecord(BaseModel):
    set: list[int]
    k: int
    h0: int
    h1: int
    h2: int
    n0: int
    delta: list[int]
    rises: list[int]


class ScanJobInfo(BaseModel):
    id: str
    state: Literal["running", "done", "failed"]
    request: ScanRequest
    summary: Optional[ScanSummaryModel] = None
    error: Optional[str] = None
