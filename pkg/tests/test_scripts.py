import csv
import io
import math
import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parents[1] / "scripts"

CASES = {
    "chsh_curve.py": ["--theta-points", "3", "--samples", "5000"],
    "rg_flows.py": ["--n-starts", "2", "--steps", "4", "--ell-max", "1"],
    "trotter_scaling.py": ["--max-power", "4"],
    "tfim_gap_scan.py": ["--points", "2", "--sizes", "4,6"],
    "berry_loops.py": ["--loops", "3", "--path-points", "500"],
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_script_writes_csv(name):
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / name), *CASES[name]], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0, proc.stderr
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("#")
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    header, body = rows[0], rows[1:]
    assert body
    for row in body:
        assert len(row) == len(header)
        for cell in row:
            try:
                assert math.isfinite(float(cell))
            except ValueError:
                pass


def test_trotter_script_first_order():
    proc = subprocess.run(
        [sys.executable, str(SCRIPTS / "trotter_scaling.py"), "--max-power", "8"],
        capture_output=True, text=True, check=True,
    )
    rows = list(csv.reader(io.StringIO("\n".join(proc.stdout.splitlines()[1:]))))[1:]
    errs = [float(r[1]) for r in rows]
    assert errs[-1] / errs[-2] == pytest.approx(0.5, rel=0.05)
