from .csv_reader import read_data_matrix, read_target_matrix
from .report_writer import (
    sidecar_paths,
    write_json_report,
    write_matrix_csv,
    write_scan_csv,
    write_sim_csv,
    render_sim_table,
    sim_rows,
)
from .sim_config_loader import load_sim_configs

__all__ = [
    "read_data_matrix",
    "read_target_matrix",
    "sidecar_paths",
    "write_json_report",
    "write_matrix_csv",
    "write_scan_csv",
    "write_sim_csv",
    "render_sim_table",
    "sim_rows",
    "load_sim_configs",
]
