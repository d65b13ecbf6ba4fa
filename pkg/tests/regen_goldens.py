"""Regenerate the CLI golden files.

Run from the repository root:

    python3 tests/regen_goldens.py

Each golden file freezes the exact stdout of one CLI invocation; the
determinism tests re-run these commands and compare bytes.
"""

import pathlib
import subprocess
import sys

HERE = pathlib.Path(__file__).resolve().parent
DATA = HERE / "data"
GOLDEN = DATA / "golden"

CASES = [
    ("omega_circle", ["omega", "data/basic.toml", "circle", "1"]),
    ("omega_plane2", ["omega", "data/basic.toml", "plane", "2"]),
    ("omega_line0", ["omega", "data/basic.toml", "line", "0"]),
    ("omega_mu3_relative", ["omega", "data/mu3.toml", "W", "1",
                            "--base", "X"]),
    ("transfer_transpose_tdt", ["transfer", "data/lines.toml",
                                "transpose_st", "t_dt"]),
    ("transfer_transpose_dt", ["transfer", "data/lines.toml",
                               "transpose_st", "dt"]),
    ("transfer_graph_ds", ["transfer", "data/lines.toml",
                           "graph_f", "ds"]),
    ("transfer_json", ["--json", "transfer", "data/lines.toml",
                       "transpose_st", "t_dt"]),
    ("verify_cover_kummer", ["verify", "cover", "data/kummer.toml",
                             "kummer"]),
    ("verify_counterexample_mu3", ["verify", "counterexample",
                                   "data/mu3.toml", "mu3"]),
    ("verify_descent_kummer", ["verify", "descent", "data/kummer.toml",
                               "kummer", "1"]),
    ("verify_compose_kummer_pair", ["verify", "compose", "data/lines.toml",
                                    "kummer_pair"]),
    ("verify_compose_graph_pair", ["verify", "compose", "data/lines.toml",
                                   "graph_pair"]),
    ("verify_welldef_enlarged", ["verify", "welldef", "data/lines.toml",
                                 "enlarged"]),
    ("verify_equalizer_localized", ["verify", "equalizer",
                                    "data/kummer.toml", "kummer_loc"]),
]


def run_case(argv, extra=()):
    cmd = [sys.executable, "-m", "corrforms.cli", *extra, *argv]
    return subprocess.run(cmd, cwd=HERE, capture_output=True, text=True)


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES:
        proc = run_case(argv)
        if proc.returncode != 0:
            raise SystemExit("%s exited %d:\n%s"
                             % (name, proc.returncode, proc.stderr))
        (GOLDEN / (name + ".txt")).write_text(proc.stdout)
        print("wrote", name, "(%d bytes)" % len(proc.stdout))


if __name__ == "__main__":
    main()
