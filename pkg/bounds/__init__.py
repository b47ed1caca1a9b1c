"""Certified lower bounds for the a.e. positive-measure threshold."""
from __future__ import annotations
