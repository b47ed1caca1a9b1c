"""Partial sumset enumeration, null certificates and cover bounds."""
from __future__ import annotations
