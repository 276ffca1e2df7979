import pathlib
import subprocess
import sys

import pytest

DEMOS = sorted((pathlib.Path(__file__).parent.parent / "demos").glob("*.py"))


@pytest.mark.parametrize("path", DEMOS, ids=lambda p: p.name)
def test_demo_runs(path):
    res = subprocess.run([sys.executable, str(path)], capture_output=True, text=True, timeout=300)
    assert res.returncode == 0, res.stderr
