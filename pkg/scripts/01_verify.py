"""Batería de identidades sobre estados aleatorios."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import CONFIGS_DIR, RESULTS_DIR
from src.experiments.drivers import verify_suite, write_report
from src.experiments.settings import load_spec


def main():
    spec = load_spec("verify", CONFIGS_DIR / "verify.env", sys.argv[1:], RESULTS_DIR / "verify")
    table = verify_suite(spec.sim.seed, spec.count, spec.sim.grid(), threads=spec.threads)
    for _, row in table.iterrows():
        mark = "ok " if row["passed"] else "FAIL"
        note = "" if row["asserted"] else " (informativo)"
        print(f"{mark} {row['check']:<32} {row['value']:.3e} {row['criterion']} {row['threshold']:.1e}{note}")
    write_report("verify", table, spec)

    failed = int((~table["passed"]).sum())
    print(f"exit {1 if failed else 0}: {failed} fallidas")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
