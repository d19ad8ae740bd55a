# Configuración de experimentos, datos iniciales, controladores y CLI
from .settings import DataSpec, ExperimentSpec, build_spec, load_spec
from .initial_data import build_state, random_state, single_mode, localized
from .drivers import (
    simulate,
    verify_suite,
    nf_scan,
    lifespan_scan,
    decay_probe,
    envelope_report,
    fit_loglog,
    LifespanResult,
    DecayReport,
)
from .cli import cli_main

__all__ = [
    'DataSpec',
    'ExperimentSpec',
    'build_spec',
    'load_spec',
    'build_state',
    'random_state',
    'single_mode',
    'localized',
    'simulate',
    'verify_suite',
    'nf_scan',
    'lifespan_scan',
    'decay_probe',
    'envelope_report',
    'fit_loglog',
    'LifespanResult',
    'DecayReport',
    'cli_main',
]
