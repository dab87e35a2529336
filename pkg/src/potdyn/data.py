"""Location of the bundled CSV data (overridable with ``POTDYN_DATA_DIR``)."""

import os
from pathlib import Path

ENV_VAR = "POTDYN_DATA_DIR"
_BUNDLED = Path(__file__).resolve().parent / "data"


def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else _BUNDLED


def data_path(name) -> Path:
    return data_dir() / name


TABLE1 = "table1_2005.csv"
TABLE1_SUMMARY = "table1_2005_summary.csv"
TABLE_A1 = "tableA1.csv"
TABLE_A2 = "tableA2.csv"
TABLE_A3 = "tableA3.csv"
