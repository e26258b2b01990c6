"""
Report and table output.

JSON reports come from pydantic models; matrices, h-scans and simulation
results are written as CSV with 17 significant digits so no float is
rounded on the way out.
"""
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import tabulate as T
from pydantic import BaseModel

from mrcdkit.core.mrcd_logger import get_logger
from mrcdkit.domain.models import HScanRow, SimResult

logger = get_logger("report_writer", parent_folder="io")

PathLike = Union[str, Path]
FLOAT_FORMAT = "%.17g"

SCAN_COLUMNS = ("h", "objective", "frobenius_gap", "rho")
SIM_COLUMNS = (
    "panel", "dgp", "n", "p", "epsilon", "k", "estimator", "h_fraction", "h",
    "mse", "avg_rho", "replications", "failures", "seed", "version",
)


def _emit(text: str, path: Optional[PathLike]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info("Output written", extra={"file_path": str(path), "bytes": len(text)})


def sidecar_paths(out: PathLike) -> Tuple[Path, Path]:
    """report.json -> report.scatter.csv, report.precision.csv"""
    out = Path(out)
    return out.with_suffix(".scatter.csv"), out.with_suffix(".precision.csv")


def write_json_report(report: BaseModel, path: Optional[PathLike] = None) -> str:
    text = report.model_dump_json(indent=2)
    _emit(text if path is not None else text + "\n", path)
    return text


def write_matrix_csv(matrix: np.ndarray, path: PathLike, columns: Sequence[str]) -> None:
    frame = pd.DataFrame(np.asarray(matrix), index=list(columns), columns=list(columns))
    _emit(frame.to_csv(float_format=FLOAT_FORMAT), path)


def scan_frame(rows: Sequence[HScanRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [(row.h, row.objective, row.frobenius_gap, row.rho) for row in rows],
        columns=list(SCAN_COLUMNS),
    )


def write_scan_csv(rows: Sequence[HScanRow], path: Optional[PathLike] = None) -> None:
    """One row per h; the gap of the first row is left empty."""
    _emit(scan_frame(rows).to_csv(index=False, float_format=FLOAT_FORMAT), path)


def sim_rows(results: Sequence[SimResult]) -> List[Dict[str, object]]:
    rows = []
    for result in results:
        cfg = result.config
        for cell in result.cells:
            rows.append({
                "panel": cell.panel,
                "dgp": cfg.dgp.value,
                "n": cfg.n,
                "p": cfg.p,
                "epsilon": cfg.epsilon,
                "k": cfg.k,
                "estimator": cell.estimator.value,
                "h_fraction": cell.h_fraction,
                "h": cell.h,
                "mse": cell.mse,
                "avg_rho": cell.avg_rho,
                "replications": cell.replications,
                "failures": cell.failures,
                "seed": cfg.seed,
                "version": result.version,
            })
    return rows


def write_sim_csv(results: Sequence[SimResult], path: Optional[PathLike] = None) -> None:
    frame = pd.DataFrame(sim_rows(results), columns=list(SIM_COLUMNS))
    # h stays integral even when OGK rows leave it empty
    frame["h"] = frame["h"].astype("Int64")
    _emit(frame.to_csv(index=False, float_format=FLOAT_FORMAT), path)


def render_sim_table(results: Sequence[SimResult]) -> str:
    headers = ["panel", "estimator", "h", "MSE", "avg rho", "ok", "failed"]
    table = [
        [
            row["panel"],
            row["estimator"],
            "" if row["h"] is None else row["h"],
            "" if row["mse"] is None else f"{row['mse']:.4f}",
            "" if row["avg_rho"] is None else f"{row['avg_rho']:.4f}",
            row["replications"],
            row["failures"],
        ]
        for row in sim_rows(results)
    ]
    return T.tabulate(table, headers=headers, tablefmt="pretty")
