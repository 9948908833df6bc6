"""In-process scan job registry.

Scans can run for minutes, so the service runs each one on a daemon thread
and exposes its state through the registry.  Classification is pure and the
job object is only mutated by its own worker thread (state last), so reads
from request handlers need no lock beyond the registry map itself.
"""

from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from ..scanner import AlgorithmDisagreement, ScanJob, ScanResult, run_partitioned, scan
from .schemas import ScanRequest


@dataclass
class Job:
    id: str
    request: ScanRequest
    state: str = "running"  # running | done | failed
    result: ScanResult | None = None
    error: str | None = None
    records: list[dict] = field(default_factory=list)


class JobRegistry:
    def __init__(self):
        self._jobs: dict[str, Job] = {}
        self._lock = threading.Lock()

    def create(self, request: ScanRequest, *, wait: bool = False) -> Job:
        job = Job(id=uuid.uuid4().hex[:12], request=request)
        with self._lock:
            self._jobs[job.id] = job
        thread = threading.Thread(target=self._run, args=(job,), daemon=True)
        thread.start()
        if wait:
            thread.join()
        return job

    def get(self, job_id: str) -> Job | None:
        with self._lock:
            return self._jobs.get(job_id)

    def _run(self, job: Job) -> None:
        req = job.request
        scan_job = ScanJob(
            k=req.k,
            h0=req.h0,
            algorithm=req.algorithm,
            a2_range=req.a2_range,
            cell_depth=req.cell_depth,
            out=req.out,
            checkpoint=req.checkpoint,
            resume=req.resume,
        )
        try:
            if req.workers > 1:
                result = run_partitioned(scan_job, req.workers)
            else:
                result = scan(scan_job)
        except AlgorithmDisagreement as exc:
            job.error = f"algorithm disagreement: {exc}"
            job.state = "failed"
            return
        except Exception as exc:  # operational failure: surface, don't crash the app
            job.error = f"{type(exc).__name__}: {exc}"
            job.state = "failed"
            return
        job.records = [v.record() for v in result.violations]
        job.result = result
        job.state = "done"
