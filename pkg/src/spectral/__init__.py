# Representación espectral sobre el toro
from .grid import Grid, SpectralField, HoloField, to_physical, from_physical
from .operators import (
    hilbert,
    project_P,
    project_Pbar,
    project_P0,
    project_Psharp,
    project_Pr,
    project_Pi,
    deriv,
    frac_deriv,
    product,
    exact_product,
    reciprocal,
    divide,
    lp_block,
    lp_decompose,
)

__all__ = [
    'Grid',
    'SpectralField',
    'HoloField',
    'to_physical',
    'from_physical',
    'hilbert',
    'project_P',
    'project_Pbar',
    'project_P0',
    'project_Psharp',
    'project_Pr',
    'project_Pi',
    'deriv',
    'frac_deriv',
    'product',
    'exact_product',
    'reciprocal',
    'divide',
    'lp_block',
    'lp_decompose',
]
