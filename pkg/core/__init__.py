"""Exact-arithmetic core: rationals, gap statistics, families and settings."""
from __future__ import annotations
