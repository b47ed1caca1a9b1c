"""Root sequences qₙ and the measure-zero certificates they carry."""
from __future__ import annotations
