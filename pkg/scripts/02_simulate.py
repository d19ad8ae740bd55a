"""Simulación de referencia de una onda lineal con diagnósticos e instantáneas."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import ACCEPTANCE_CRITERIA, CONFIGS_DIR, RESULTS_DIR
from src.errors import BlowUpError, DegenerateSurfaceError
from src.experiments.drivers import simulate
from src.experiments.settings import load_spec


def main():
    spec = load_spec("simulate", CONFIGS_DIR / "simulate.env", sys.argv[1:], RESULTS_DIR / "simulate")
    try:
        summary = simulate(spec)
    except (BlowUpError, DegenerateSurfaceError) as e:
        print(f"exit 3: {e}")
        sys.exit(3)

    limit = ACCEPTANCE_CRITERIA["energy_drift"]
    drift = summary["energy_drift"]
    print(f"energy_drift {drift:.2e} (límite {limit:.0e}) {'ok' if drift < limit else 'FAIL'}")
    print("exit 0")


if __name__ == "__main__":
    main()
