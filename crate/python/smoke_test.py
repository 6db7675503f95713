"""Smoke test for the Python extension.

Build it first:

    cargo build --release -p enass-py --features extension-module

then run `python3 python/smoke_test.py`. Set ENASS_LIB to load the shared
library from somewhere other than target/release.
"""

import importlib.machinery
import importlib.util
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    path = os.environ.get("ENASS_LIB") or str(ROOT / "target" / "release" / "libenass.so")
    if not Path(path).exists():
        sys.exit(f"extension not found at {path}; build it with cargo first")
    loader = importlib.machinery.ExtensionFileLoader("enass", path)
    spec = importlib.util.spec_from_file_location("enass", path, loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    enass = load()

    circle = enass.initial_schedule(8)
    assert circle.teams == 8 and circle.periods == 4 and circle.weeks == 7
    assert circle.get(4, 1) == (5, 8), circle.get(4, 1)
    report = circle.verify()
    assert not report.is_valid
    assert report.satisfied["c_H"] and report.satisfied["c_W"]
    assert "c_P: violated (period 4, team 8 ×7)" in report.violations, report.violations

    result = enass.solve(8, "enass4")
    assert result.outcome == "solution", result
    assert result.schedule.verify().is_valid

    exhausted = enass.solve(6)
    assert exhausted.outcome == "exhausted" and exhausted.schedule is None

    mirror = enass.solve(12, variant="enass3", time_limit=60.0)
    assert mirror.outcome == "solution" and mirror.backtracks == 25, mirror

    again = enass.Schedule.parse(result.schedule.render())
    assert again == result.schedule
    assert enass.Schedule.from_json(result.schedule.to_json()) == result.schedule
    assert enass.Schedule(result.schedule.rows()) == result.schedule

    assert enass.oracle_count(6, fix_week1=True) * 6 == enass.oracle_count(6)

    for bad in (lambda: enass.initial_schedule(7), lambda: enass.solve(8, "nope")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")
    try:
        circle.get(5, 1)
    except IndexError:
        pass
    else:
        raise AssertionError("expected IndexError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
