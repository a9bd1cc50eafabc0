"""Farrell-Tate cohomology via reduced torsion sub-complexes."""

import os
from pathlib import Path

__version__ = "0.1.0"

DATA_ENV = "TATE_DATA_DIR"


def data_path(name: str) -> Path:
    """Location of a bundled fixture, overridable through $TATE_DATA_DIR."""
    root = os.environ.get(DATA_ENV)
    base = Path(root) if root else Path(__file__).parent / "data"
    return base / name
