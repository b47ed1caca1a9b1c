"""Domain models for cantorval."""
from __future__ import annotations
