"""
Punto de entrada de línea de comandos.

    wavecrest <subcomando> [--config archivo] [--set clave=valor ...] [--output-dir dir] [--quiet]

Códigos de salida: 0 éxito, 1 verificación fallida, 2 configuración inválida,
3 explosión o degeneración durante la evolución.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from src.config import EXIT_CODES, SUBCOMMANDS, VERSION
from src.errors import BlowUpError, ConfigError, DegenerateSurfaceError, SteepSurfaceError

from . import drivers
from .settings import load_spec

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wavecrest",
        description="Simulador pseudoespectral de ondas de gravedad en coordenadas holomorfas",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, default=None, help="Archivo clave=valor")
        p.add_argument(
            "--set", dest="overrides", action="append", default=[], metavar="CLAVE=VALOR",
            help="Anula una clave del archivo (repetible)",
        )
        p.add_argument("--output-dir", type=Path, default=None, help="Directorio de resultados")
        p.add_argument("--quiet", action="store_true", help="Sin mensajes de progreso")
    return parser


def _execute(kind: str, spec, verbose: bool) -> int:
    if kind == "simulate":
        drivers.simulate(spec, verbose=verbose)
        return EXIT_CODES["ok"]

    if kind == "verify":
        table = drivers.verify_suite(
            spec.sim.seed, spec.count, spec.sim.grid(), threads=spec.threads
        )
        drivers.write_report(kind, table, spec)
        failed = table[~table["passed"]]
        if verbose:
            print(table.to_string(index=False))
        if len(failed):
            if verbose:
                print(f"\n❌ {len(failed)} comprobaciones fallidas: {', '.join(failed['check'])}")
            return EXIT_CODES["failed"]
        if verbose:
            print("\n✅ Todas las comprobaciones dentro de tolerancia")
        return EXIT_CODES["ok"]

    runners = {
        "nf-scan": drivers.nf_scan,
        "lifespan": drivers.lifespan_scan,
        "decay": drivers.decay_probe,
        "envelope": drivers.envelope_report,
    }
    result = runners[kind](spec, verbose=verbose)
    drivers.write_report(kind, result, spec)
    return EXIT_CODES["ok"]


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    """Ejecuta un subcomando y devuelve el código de salida."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse termina con 2 en errores de uso
        return int(exc.code or 0)

    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    verbose = not args.quiet

    try:
        spec = load_spec(args.command, args.config, args.overrides, args.output_dir)
    except (ConfigError, ValidationError) as exc:
        print(f"❌ Configuración inválida: {exc}", file=sys.stderr)
        return EXIT_CODES["validation"]

    try:
        return _execute(args.command, spec, verbose)
    except SteepSurfaceError as exc:
        print(f"❌ Datos iniciales irrealizables: {exc}", file=sys.stderr)
        return EXIT_CODES["validation"]
    except BlowUpError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_CODES["blowup"]
    except DegenerateSurfaceError as exc:
        print(f"❌ {exc}", file=sys.stderr)
        return EXIT_CODES["blowup"]


def main():
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
