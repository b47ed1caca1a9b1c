"""Structural verdicts on K(Σ;q) and sweeps over the q-axis."""
from __future__ import annotations
