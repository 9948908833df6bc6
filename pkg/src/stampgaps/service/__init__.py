"""HTTP layer: FastAPI app factory, request/response models, job registry."""

from .app import create_app
from .jobs import Job, JobRegistry

__all__ = ["create_app", "Job", "JobRegistry"]
