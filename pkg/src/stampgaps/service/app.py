"""HTTP service: analysis, verification, and scan jobs over the library.

Fast operations (/analyze, /verify) run synchronously in the request;
scans run as background jobs (POST /scan/jobs, then poll GET /scan/jobs/{id}
and fetch /scan/jobs/{id}/violations as JSONL once done — the stream holds
the records emitted by that job run).  Algorithm disagreement surfaces as
HTTP 500 with an "algorithm disagreement" detail; malformed input is 422.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, HTTPException
from fastapi.responses import PlainTextResponse

from .. import __version__
from ..analysis import GapAnalysis, check_conjecture, classify_A
from ..core import StampSet
from ..derivation import build_graph, to_dot
from ..propagation import classify_B
from ..render import render_gap_map, render_gap_table
from ..scanner import AlgorithmDisagreement, diff_analyses
from ..verification import theorem_suite, verify_analysis
from .jobs import Job, JobRegistry
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    CheckItem,
    GapItem,
    ScanJobInfo,
    ScanRequest,
    VerifyRequest,
    VerifyResponse,
)


def _classify(stamps: StampSet, algorithm: str) -> GapAnalysis:
    if algorithm == "B":
        return classify_B(stamps)
    result = classify_A(stamps)
    if algorithm == "both":
        result_b = classify_B(stamps)
        if result != result_b:
            raise AlgorithmDisagreement(stamps.a, diff_analyses(result, result_b))
    return result


def create_app() -> FastAPI:
    app = FastAPI(title="stampgaps", version=__version__)
    registry = JobRegistry()
    app.state.jobs = registry

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/analyze", response_model=AnalyzeResponse, response_model_exclude_none=True)
    def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
        stamps = StampSet(tuple(req.set))
        try:
            r = _classify(stamps, req.algorithm)
        except AlgorithmDisagreement as exc:
            raise HTTPException(status_code=500, detail=str(exc))
        delta = [r.delta[h] for h in range(r.h0, r.h2 + 1)]
        return AnalyzeResponse(
            set=list(stamps.a),
            k=stamps.k,
            h0=r.h0,
            h1=r.h1,
            h2=r.h2,
            n0=r.n0,
            horizon=r.horizon,
            window_end=r.window_end,
            delta=delta,
            rises=check_conjecture(r.delta, r.h0, r.h2),
            gaps=[GapItem(x=x, m=m) for x, m in r.m_gaps()],
            permanents=r.permanents(),
            map=render_gap_map(r) if req.map else None,
            table=render_gap_table(r) if req.table else None,
            graph=to_dot(build_graph(r)) if req.graph else None,
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        stamps = StampSet(tuple(req.set))
        try:
            r = _classify(stamps, req.algorithm)
        except AlgorithmDisagreement as exc:
            raise HTTPException(status_code=500, detail=str(exc))
        checks = verify_analysis(r) + theorem_suite(r, sample=req.sample)
        items = [CheckItem(name=c.name, passed=c.passed, detail=c.detail) for c in checks]
        return VerifyResponse(
            set=list(stamps.a),
            k=stamps.k,
            h0=r.h0,
            h1=r.h1,
            h2=r.h2,
            n0=r.n0,
            passed=all(c.passed for c in checks),
            checks=items,
        )

    @app.post("/scan/jobs", response_model=ScanJobInfo, status_code=202)
    def create_scan(req: ScanRequest) -> ScanJobInfo:
        job = registry.create(req)
        return _job_info(job)

    @app.get("/scan/jobs/{job_id}", response_model=ScanJobInfo)
    def scan_status(job_id: str) -> ScanJobInfo:
        job = registry.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"no such job: {job_id}")
        return _job_info(job)

    @app.get("/scan/jobs/{job_id}/violations", response_class=PlainTextResponse)
    def scan_violations(job_id: str) -> str:
        job = registry.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"no such job: {job_id}")
        if job.state == "running":
            raise HTTPException(status_code=409, detail="job still running")
        return "".join(json.dumps(rec) + "\n" for rec in job.records)

    return app


def _job_info(job: Job) -> ScanJobInfo:
    summary = job.result.summary.to_dict() if job.result else None
    return ScanJobInfo(
        id=job.id,
        state=job.state,
        request=job.request,
        summary=summary,
        error=job.error,
    )
