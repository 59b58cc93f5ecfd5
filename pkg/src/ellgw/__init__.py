"""Exact computations of genus-0 and genus-1 Gromov-Witten invariants and of
intersection numbers on M̄_{1,4}."""
from __future__ import annotations

__version__ = "0.1.0"
