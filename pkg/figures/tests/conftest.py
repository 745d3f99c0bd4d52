import json
import shutil
import subprocess
import sys

import pytest

MAXPOLY = shutil.which("maxpoly")

SMALL_CONFIG = """\
[points]
presets = ["C2", "UC", "C1", "OC"]
M = 10
cdf_samples = 41

[growth]
presets = ["C2", "U"]
ratio = 0.5
M_list = [8, 12, 16]

[growth_rates]
presets = ["OC"]
ratios = [0.5, 1.0]
M_list = [6, 10, 14]

[scaling]
presets = ["U"]
N_list = [4, 6, 8]
threshold = 10.0

[contour]
presets = ["U"]
M_min = 2
M_max = 8
M_step = 2
N_min = 0
N_max = 8
N_step = 2

[remez]
preset = "C2"
M = 40
N = 24
m = 15

[lsq]
presets = ["U"]
M_list = [16, 36]
c = 3.0
"""


def _run(args):
    proc = subprocess.run(
        [MAXPOLY, *args], capture_output=True, text=True, timeout=600
    )
    assert proc.returncode == 0, proc.stderr
    return proc


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory):
    """Exported data produced through the CLI, as a downstream consumer."""
    if MAXPOLY is None:
        pytest.skip("maxpoly CLI not installed")
    root = tmp_path_factory.mktemp("data")
    cfg = root / "config.toml"
    cfg.write_text(SMALL_CONFIG)
    out = root / "exports"
    out.mkdir()
    for name in ("points", "growth", "growth_rates", "scaling", "contour", "remez", "lsq"):
        _run(["exp", name, "--out", str(out), "--config", str(cfg)])
    _run(
        ["witness", "--preset", "C2", "--M", "14", "--N", "9",
         "--out", str(out / "witness.json")]
    )
    _run(
        ["bmn", "--preset", "U", "--M", "8", "--N", "4", "--format", "json",
         "--out", str(out / "maximal_poly.json")]
    )
    return out
