"""
Normas de control A, B y sus aproximaciones diádicas (BMO, Besov), normas de Sobolev.
"""

import math
from typing import Dict

import numpy as np

from src.spectral.grid import SpectralField
from src.spectral.operators import deriv, frac_deriv, lp_decompose, pointwise
from src.waves.state import DerivedFields, DiffState, derive_diff


def bmo_proxy(f: SpectralField) -> float:
    """
    Máxima oscilación media sobre ventanas diádicas:
    max_I (1/|I|) ∫_I |f - avg_I f|, con I recorriendo todas las escalas 2^{-l}·period.
    """
    values = f.values
    n = values.size
    best = 0.0
    windows = 1
    while windows <= n // 2:
        blocks = values.reshape(windows, n // windows)
        osc = np.mean(np.abs(blocks - blocks.mean(axis=1, keepdims=True)), axis=1)
        best = max(best, float(np.max(osc)))
        windows *= 2
    return best


def besov_proxy(f: SpectralField) -> float:
    """(Σ_k ‖P_k f‖²_∞)^{1/2} sobre bloques diádicos abruptos."""
    return math.sqrt(sum(block.sup() ** 2 for block in lp_decompose(f)))


def sobolev_norm(f: SpectralField, s: float) -> float:
    """(period · Σ |κ|^{2s} |f̂_k|²)^{1/2}."""
    weights = np.abs(f.grid.kappa) ** (2 * s)
    return float(np.sqrt(f.grid.period * np.sum(weights * np.abs(f.coeffs) ** 2)))


def _Y(d: DiffState) -> SpectralField:
    return pointwise(lambda w: w / (1.0 + w), d.Wa)


def norm_A(d: DiffState) -> float:
    """A = ‖𝐖‖_∞ + ‖Y‖_∞ + max(‖|D|^{½}R‖_∞, besov_proxy(|D|^{½}R))."""
    half_R = frac_deriv(d.R, 0.5)
    return d.Wa.sup() + _Y(d).sup() + max(half_R.sup(), besov_proxy(half_R))


def norm_B(d: DiffState) -> float:
    """B = bmo(|D|^{½}𝐖) + bmo(R_α)."""
    return bmo_proxy(frac_deriv(d.Wa, 0.5)) + bmo_proxy(deriv(d.R))


def energy_norm(d: DiffState, order: int = 1) -> float:
    """(Σ_{j<=order} ‖∂^j 𝐖‖²_{L²} + ‖∂^j R‖²_{Ḣ½})^{1/2}."""
    total = 0.0
    for j in range(order + 1):
        total += sobolev_norm(deriv(d.Wa, j), 0.0) ** 2
        total += sobolev_norm(deriv(d.R, j), 0.5) ** 2
    return math.sqrt(total)


def _ratio(num: float, den: float) -> float:
    return num / den if den > 0 else float("nan")


def control_bounds(d: DiffState, derived: DerivedFields = None) -> Dict[str, float]:
    """
    Cocientes de control de los campos auxiliares:
    ‖M‖_∞/(A·B), ‖a‖_∞/A², bmo(|D|^{½}Y)/B, bmo(b_α)/B.
    """
    f = derived if derived is not None else derive_diff(d)
    A, B = norm_A(d), norm_B(d)
    return {
        "A": A,
        "B": B,
        "M_over_AB": _ratio(f.M.sup(), A * B),
        "a_over_A2": _ratio(f.a.sup(), A * A),
        "Y_over_B": _ratio(bmo_proxy(frac_deriv(f.Y, 0.5)), B),
        "b_over_B": _ratio(bmo_proxy(deriv(f.b)), B),
    }
