"""Certificate replay and the published wire schemas."""
from __future__ import annotations
