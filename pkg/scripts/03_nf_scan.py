"""Orden en ε de los residuos tras la transformación de forma normal."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import ACCEPTANCE_CRITERIA, CONFIGS_DIR, RESULTS_DIR
from src.experiments.drivers import nf_scan, write_report
from src.experiments.settings import load_spec


def main():
    spec = load_spec("nf-scan", CONFIGS_DIR / "nf_scan.env", sys.argv[1:], RESULTS_DIR / "nf_scan")
    table, fit = nf_scan(spec)
    write_report("nf-scan", (table, fit), spec)

    target, tol = ACCEPTANCE_CRITERIA["nf_slope"]
    print(f"pendiente {fit.slope:.3f} (objetivo {target} ± {tol}) {'ok' if fit.within(target, tol) else 'FAIL'}")
    print("exit 0")


if __name__ == "__main__":
    main()
