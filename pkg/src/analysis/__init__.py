# Energías, normas de control y herramientas multilineales
from .energies import energy_E0, energy_E, energy_E2lin, energy_E3lin, energy_n2_cubic
from .norms import norm_A, norm_B, bmo_proxy, besov_proxy, sobolev_norm, control_bounds
from .multilinear import paraproducts, commutator_P, commutator_ratio, frequency_envelope, Envelope
from .diagnostics import DiagnosticsRecord, diagnostics_record

__all__ = [
    'energy_E0',
    'energy_E',
    'energy_E2lin',
    'energy_E3lin',
    'energy_n2_cubic',
    'norm_A',
    'norm_B',
    'bmo_proxy',
    'besov_proxy',
    'sobolev_norm',
    'control_bounds',
    'paraproducts',
    'commutator_P',
    'commutator_ratio',
    'frequency_envelope',
    'Envelope',
    'DiagnosticsRecord',
    'diagnostics_record',
]
