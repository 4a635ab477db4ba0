"""Solve exported LP and MPS files with HiGHS and compare against the built-in simplex."""
import os
import subprocess
import sys
import tempfile

import highspy

CLI = sys.argv[1]


def cli(*args):
    return subprocess.run([CLI, *args], check=True, capture_output=True, text=True).stdout


def highs_value(path):
    h = highspy.Highs()
    h.setOptionValue("output_flag", False)
    if h.readModel(path) != highspy.HighsStatus.kOk:
        raise SystemExit(f"HiGHS could not read {path}")
    h.run()
    if h.getModelStatus() != highspy.HighsModelStatus.kOptimal:
        raise SystemExit(f"HiGHS did not solve {path}: {h.modelStatusToString(h.getModelStatus())}")
    return h.getInfo().objective_function_value


cases = [
    (["cycle", "--m", "3", "--n", "1", "--k", "1"], ["lp-r3"], 3.0),
    (["cycle", "--m", "5", "--n", "2", "--k", "2"], ["lp-r3", "lp-rwap", "lp-r1", "lp-r2"], None),
    (["random", "--nodes", "6", "--extra", "2", "--requests", "3", "--k", "3", "--seed", "4"],
     ["lp-r3", "lp-rwap", "lp-r1", "lp-r2", "lp-rwap-ppp"], None),
    (["random", "--nodes", "9", "--extra", "5", "--requests", "6", "--k", "6", "--seed", "11"],
     ["lp-r3", "lp-rwap"], None),
]

failures = 0
with tempfile.TemporaryDirectory() as tmp:
    for i, (gen, models, expected) in enumerate(cases):
        inst = os.path.join(tmp, f"inst{i}.json")
        cli("gen", *gen, "-o", inst)
        for model in models:
            internal = float(cli("solve", inst, "--model", model))
            for fmt in ("lp", "mps"):
                path = os.path.join(tmp, f"inst{i}_{model}.{fmt}")
                cli("export", inst, "--model", model, "--format", fmt, "-o", path)
                external = highs_value(path)
                ok = abs(external - internal) <= 1e-6 * (1 + abs(internal))
                if expected is not None:
                    ok = ok and abs(external - expected) <= 1e-6
                print(f"{'ok  ' if ok else 'FAIL'} {' '.join(gen[:1])} #{i} {model} {fmt}: "
                      f"highs {external:.6f} internal {internal:.6f}")
                failures += not ok

sys.exit(1 if failures else 0)
