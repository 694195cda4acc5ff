"""
Running a study from a config file
==================================

The same thing the ``coagkit`` command does: read a flat key = value file,
run the study, write CSV files whose header block echoes every setting.
"""

import tempfile
from pathlib import Path

from coagkit.experiments import load_config, run_study

text = """
study = xmax_sweep
kernel = constant
x_min = 1e-3
x_max_list = 25, 50, 100
dx_list = 1, 0.5
t_span = 1, 3
dt = 1e-3
"""

with tempfile.TemporaryDirectory() as tmp:
    cfg_path = Path(tmp) / "sweep.cfg"
    cfg_path.write_text(text)
    table = run_study(load_config(cfg_path), threads=2)
    for path in table.write(Path(tmp) / "out"):
        print(path.name)
        print(path.read_text())

# equivalently, from a shell:
#   coagkit xmax-sweep --config sweep.cfg --output-dir out --threads 2
