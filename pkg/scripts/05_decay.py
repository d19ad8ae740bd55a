"""Exponentes de decaimiento de los supremos para datos localizados en un periodo grande."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import ACCEPTANCE_CRITERIA, CONFIGS_DIR, RESULTS_DIR
from src.experiments.drivers import decay_probe, write_report
from src.experiments.settings import load_spec


def main():
    spec = load_spec("decay", CONFIGS_DIR / "decay.env", sys.argv[1:], RESULTS_DIR / "decay")
    report = decay_probe(spec)
    write_report("decay", report, spec)

    target, tol = ACCEPTANCE_CRITERIA["decay_exponent"]
    if report.truncated:
        print(f"ventana más allá del tiempo de vuelta ({report.wrap_time:.1f})")
    for name, fit in report.fits.items():
        print(f"{name:<8} t^{fit.slope:.3f}")
    fit = report.fits["sup_R"]
    print(f"sup_R (objetivo {target} ± {tol}) {'ok' if fit.within(target, tol) else 'FAIL'}")
    print("exit 0")


if __name__ == "__main__":
    main()
