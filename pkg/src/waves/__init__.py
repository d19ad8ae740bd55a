# Estados, dinámica y forma normal
from .state import (
    WaveState,
    DiffState,
    DerivedFields,
    derive_all,
    derive_diff,
    verify_identities,
    taylor_sign,
    from_graph_surface,
)
from .dynamics import SimConfig, LinState, rhs_full, rhs_diff, rhs_linearized, step_rk4, run
from .normalform import NFState, normal_form, nf_residual, rf_minus_r

__all__ = [
    'WaveState',
    'DiffState',
    'DerivedFields',
    'derive_all',
    'derive_diff',
    'verify_identities',
    'taylor_sign',
    'from_graph_surface',
    'SimConfig',
    'LinState',
    'rhs_full',
    'rhs_diff',
    'rhs_linearized',
    'step_rk4',
    'run',
    'NFState',
    'normal_form',
    'nf_residual',
    'rf_minus_r',
]
