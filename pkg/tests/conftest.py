from pathlib import Path

import pytest

from rlandau.config import load_config
from rlandau.landau import FieldConfig

ROOT = Path(__file__).resolve().parents[1]
_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def field():
    return FieldConfig(2.5)


@pytest.fixture(scope="session")
def rb_config():
    return load_config(ROOT / "configs" / "rb87.ini")


def report(number: int, ok: bool, detail: str) -> None:
    """One PASS/FAIL line per acceptance criterion, visible under ``pytest -v``."""
    line = f"[acceptance {number:2d}] {'PASS' if ok else 'FAIL'}: {detail}"
    print(line)
    _ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
