"""Campaña completa de experimentos, de la batería de identidades a las envolventes."""

import argparse
import sys

from src.config import CONFIGS_DIR, RESULTS_DIR

# paso -> (subcomando, archivo de configuración)
PHASES = {
    "verify": ("verify", "verify.env"),
    "simulate": ("simulate", "simulate.env"),
    "nf-scan": ("nf-scan", "nf_scan.env"),
    "lifespan": ("lifespan", "lifespan.env"),
    "decay": ("decay", "decay.env"),
    "envelope": ("envelope", "envelope.env"),
}

QUICK_OVERRIDES = {
    "verify": ["count=5"],
    "simulate": ["t_end=0.1"],
    "envelope": ["t_end=0.1"],
    "lifespan": ["t_max=10"],
    "decay": ["window=1,2"],
}


def run_phase(step: str, quick: bool) -> int:
    """Ejecuta una fase a través de la CLI y devuelve su código de salida."""
    command, config = PHASES[step]
    print(f"[{step}] {CONFIGS_DIR / config}")

    from src.experiments.cli import cli_main

    argv = [command, "--config", str(CONFIGS_DIR / config), "--output-dir", str(RESULTS_DIR / step)]
    if quick:
        for override in QUICK_OVERRIDES.get(step, []):
            argv += ["--set", override]
    return cli_main(argv)


def main():
    parser = argparse.ArgumentParser(description="Campaña de experimentos de wavecrest")
    parser.add_argument("--step", choices=list(PHASES) + ["all"], default="all")
    parser.add_argument("--quick", action="store_true", help="parámetros reducidos")
    args = parser.parse_args()

    steps = list(PHASES) if args.step == "all" else [args.step]
    failures = [step for step in steps if run_phase(step, args.quick) != 0]

    if failures:
        print(f"fallos: {', '.join(failures)}")
        sys.exit(1)
    print(f"ok ({len(steps)} fases) -> {RESULTS_DIR}")


if __name__ == "__main__":
    main()
