import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = sorted(p for p in (Path(__file__).resolve().parent.parent / "demos").glob("*.py")
               if p.name != "make_samples.py")


@pytest.mark.parametrize("script", DEMOS, ids=lambda p: p.stem)
def test_demo_runs(script):
    proc = subprocess.run([sys.executable, str(script)], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip()


def test_sample_data_is_current(tmp_path):
    sys.path.insert(0, str(DEMOS[0].parent))
    try:
        import make_samples
    finally:
        sys.path.pop(0)
    from hodgesplit import serialization as ser
    for name, make in make_samples.SAMPLES.items():
        assert (make_samples.OUT / name).read_text() == ser.dumps(make()), name
