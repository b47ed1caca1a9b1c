"""q-axis diagrams for K(Σ;q) and their SVG rendering."""
from __future__ import annotations
