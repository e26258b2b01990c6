import json
import logging
import threading

import numpy as np
import pytest

from mrcdkit.core.logger import (
    AsyncRotatingFileHandler,
    HandlerConfig,
    JSONFormatter,
    PrettyFormatter,
    RunContextFilter,
    get_current_context,
    run_context,
    serialize_value,
    setup_logger,
)
from mrcdkit.core.mrcd_logger import get_logger, resolve_logs_dir


def _record(message="rho calibrated", **extra):
    record = logging.LogRecord("mrcdkit.test", logging.INFO, __file__, 1, message, None, None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


def test_json_formatter_includes_extras():
    line = JSONFormatter(service_name="mrcd").format(_record(rho=np.float64(0.25), h=np.int64(30)))
    payload = json.loads(line)

    assert payload["service"] == "mrcd"
    assert payload["message"] == "rho calibrated"
    assert payload["rho"] == 0.25
    assert payload["h"] == 30

def test_pretty_formatter_single_line():
    line = PrettyFormatter(service_name="mrcd", use_colors=False).format(_record(h=30))
    assert "rho calibrated" in line
    assert "h=30" in line
    assert "\n" not in line

def test_serialize_value_summarises_large_arrays():
    assert serialize_value(np.arange(3)) == [0, 1, 2]
    summary = serialize_value(np.arange(100.0).reshape(10, 10))
    assert summary == {"shape": [10, 10], "min": 0.0, "max": 99.0}
    assert serialize_value({"a": (np.int64(1), None)}) == {"a": [1, None]}

def test_run_context_nesting():
    assert get_current_context() is None
    with run_context(command="simulate", seed=7) as outer:
        assert get_current_context() is outer
        with run_context(parent=outer, replication=3) as inner:
            assert inner.run_id == outer.run_id
            assert inner.replication == 3
            assert inner.seed == 7
        assert get_current_context() is outer
    assert get_current_context() is None

def test_run_context_visible_in_worker_thread():
    """Contexts entered inside a pool thread are seen by that thread only."""
    seen = {}

    def work():
        with run_context(command="fit"):
            seen["worker"] = get_current_context().command

    thread = threading.Thread(target=work)
    thread.start()
    thread.join()
    assert seen["worker"] == "fit"
    assert get_current_context() is None

def test_context_filter_stamps_records():
    record = _record()
    with run_context(command="fit", seed=5):
        RunContextFilter().filter(record)
    assert record.command == "fit"
    assert record.seed == 5
    assert len(record.run_id) == 16

def test_async_file_handler_writes_json(tmp_path):
    log_file = tmp_path / "service.log"
    handler = AsyncRotatingFileHandler(str(log_file))
    logger = setup_logger(
        name="mrcdkit_test_async",
        handlers=[HandlerConfig(handler=handler, formatter=JSONFormatter(service_name="async"))],
    )
    with run_context(command="fit", seed=1):
        logger.info("Fit finished", extra={"rho": 0.1})
    handler.stop()

    payload = json.loads(log_file.read_text().strip().splitlines()[-1])
    assert payload["message"] == "Fit finished"
    assert payload["rho"] == 0.1
    assert payload["command"] == "fit"

def test_service_logger_layout():
    logger = get_logger("layout_check", parent_folder="tests")
    assert logger is get_logger("layout_check", parent_folder="tests")
    assert logger.name == "mrcdkit.tests.layout_check"
    assert (resolve_logs_dir() / "tests" / "layout_check" / "service.log").exists()

def test_logs_dir_override(monkeypatch, tmp_path):
    monkeypatch.setenv("MRCDKIT_LOG_DIR", str(tmp_path))
    assert resolve_logs_dir() == tmp_path
