"""
Tiempo de duplicación de la norma de energía para cada ε y ajuste log-log.

Las corridas con ε pequeño integran hasta t_max; WAVECREST_THREADS reparte las
corridas entre hilos.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import ACCEPTANCE_CRITERIA, CONFIGS_DIR, RESULTS_DIR
from src.experiments.drivers import lifespan_scan, write_report
from src.experiments.settings import load_spec


def main():
    spec = load_spec("lifespan", CONFIGS_DIR / "lifespan.env", sys.argv[1:], RESULTS_DIR / "lifespan")
    result = lifespan_scan(spec)
    write_report("lifespan", result, spec)

    target, tol = ACCEPTANCE_CRITERIA["lifespan_slope"]
    if not result.is_monotone():
        print("tiempos no monótonos en ε")
    slope = result.fit.slope
    print(f"pendiente {slope:.3f} (objetivo {target} ± {tol}) {'ok' if result.fit.within(target, tol) else 'FAIL'}")
    print("exit 0")


if __name__ == "__main__":
    main()
