"""Envolventes de frecuencia y cotas de control."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import CONFIGS_DIR, RESULTS_DIR
from src.experiments.drivers import envelope_report, write_report
from src.experiments.settings import load_spec


def main():
    spec = load_spec("envelope", CONFIGS_DIR / "envelope.env", sys.argv[1:], RESULTS_DIR / "envelope")
    table, bounds = envelope_report(spec)
    write_report("envelope", (table, bounds), spec)

    for label, values in bounds.items():
        print(label, " ".join(f"{key}={value:.4g}" for key, value in values.items()))
    print(f"exit 0 -> {spec.output_dir}")


if __name__ == "__main__":
    main()
