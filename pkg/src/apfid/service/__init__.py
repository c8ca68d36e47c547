"""HTTP service wrapper around the identification core."""

from .app import app

__all__ = ["app"]
