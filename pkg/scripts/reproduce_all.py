"""Run every reproduction recipe through the CLI and drop CSVs into a results directory.

    python scripts/reproduce_all.py [results_dir]
"""

import sys
import time
from pathlib import Path

from ppqc.cli import main

RECIPES = {
    "werner_scan.csv": ["werner-scan", "--steps", "101"],
    "threshold_parity_n1_4.csv": ["threshold", "--n1", "4", "--n2", "1,2,3,4,5,6", "--oracle", "parity"],
    "threshold_identity_n1_3.csv": ["threshold", "--n1", "3", "--n2", "1,2,3", "--oracle", "identity"],
    "dj_constant_n1_3.csv": ["run", "--n1", "3", "--oracle", "constant:0", "--epsilon", "0,0.01,0.1,0.25,0.5,1"],
    "dj_balanced_n1_3.csv": ["run", "--n1", "3", "--oracle", "parity", "--epsilon", "0,0.01,0.1,0.25,0.5,1"],
    "order_finding_15_7.csv": [
        "run", "--protocol", "order-finding", "--N", "15", "--a", "7", "--epsilon", "0,0.01,0.1,0.5,1",
    ],
    "repetitions.csv": ["repetitions", "--p", "0.5,0.25,0.125,0.0625", "--trials", "100000", "--seed", "0"],
    "nmr_scaling.csv": ["nmr-scaling", "--max-n", "32"],
}


def run(out_dir: Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, argv in RECIPES.items():
        t0 = time.perf_counter()
        code = main(argv + ["--out", str(out_dir / name)])
        print(f"{name:32s} exit={code} {time.perf_counter() - t0:6.2f}s")
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(run(Path(sys.argv[1] if len(sys.argv) > 1 else "results")))
