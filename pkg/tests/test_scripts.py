import subprocess
import sys
from pathlib import Path

import pytest

SCRIPTS = sorted((Path(__file__).parent.parent / "scripts").glob("*.py"))


@pytest.mark.parametrize("script", SCRIPTS, ids=lambda p: p.stem)
def test_script_help(script):
    res = subprocess.run([sys.executable, str(script), "--help"], capture_output=True, text=True, timeout=120)
    assert res.returncode == 0 and "usage" in res.stdout


def test_root_counts_script_small():
    script = Path(__file__).parent.parent / "scripts" / "root_counts.py"
    res = subprocess.run([sys.executable, str(script), "--kmax", "4"], capture_output=True, text=True, timeout=120)
    lines = res.stdout.strip().splitlines()
    assert lines[0].startswith("k,degree") and [l.split(",")[2:4] for l in lines[1:]] == [["2", "2"]] * 3
