"""
Paraproductos, conmutadores con P y envolventes de frecuencia sobre bloques diádicos.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from src.config import ANALYSIS_CONFIG
from src.spectral.grid import SpectralField
from src.spectral.operators import (
    frac_deriv,
    lp_block,
    lp_low,
    n_blocks,
    product,
    project_P,
)
from src.analysis.norms import bmo_proxy


def paraproducts(
    f: SpectralField, g: SpectralField, gap: Optional[int] = None
) -> Tuple[SpectralField, SpectralField, SpectralField]:
    """
    Descomposición fg = T_f g + T_g f + Π(f, g).

    T_f g = Σ_k f_{<k-gap} g_k (bajo-alto), T_g f el simétrico y Π los pares
    de bloques con |j - k| <= gap. La partición de pares de bloques es exacta.
    """
    gap = ANALYSIS_CONFIG["paraproduct_gap"] if gap is None else gap
    blocks = range(n_blocks(f.grid))
    zero = SpectralField.zeros(f.grid)

    low_high, high_low, diagonal = zero, zero, zero
    for k in blocks:
        f_k, g_k = lp_block(f, k), lp_block(g, k)
        low_high = low_high + product(lp_low(f, k - gap), g_k)
        high_low = high_low + product(lp_low(g, k - gap), f_k)
        near = sum((lp_block(g, j) for j in range(k - gap, k + gap + 1) if j >= 0), zero)
        diagonal = diagonal + product(f_k, near)
    return low_high, high_low, diagonal


def commutator_P(g: SpectralField, f: SpectralField) -> SpectralField:
    """[P, g]f = P(gf) - g·P(f)."""
    return project_P(product(g, f)) - product(g, project_P(f))


def commutator_ratio(g: SpectralField, f: SpectralField, s: float = 0.0, sigma: float = 0.0) -> float:
    """‖|D|^s [P, g] |D|^σ f‖₂ / (bmo(|D|^{σ+s} g) · ‖f‖₂)."""
    num = frac_deriv(commutator_P(g, frac_deriv(f, sigma)), s).l2()
    den = bmo_proxy(frac_deriv(g, sigma + s)) * f.l2()
    return num / den if den > 0 else float("nan")


@dataclass
class Envelope:
    """Envolvente de frecuencia c_k sobre bloques diádicos."""

    delta: float
    values: np.ndarray
    block_norms: np.ndarray

    def is_slowly_varying(self, rtol: float = 1e-12) -> bool:
        c = self.values
        j = np.arange(c.size)
        growth = 2.0 ** (self.delta * np.abs(j[:, None] - j[None, :]))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(c[None, :] > 0, c[:, None] / c[None, :], 0.0)
        return bool(np.all(ratio <= growth * (1 + rtol)))

    def majorizes(self) -> bool:
        return bool(np.all(self.values >= self.block_norms))


def envelope_of(norms: Sequence[float], delta: float) -> np.ndarray:
    """Envolvente mínima admisible c_k = max_j 2^{-δ|j-k|} n_j."""
    n = np.asarray(norms, dtype=float)
    j = np.arange(n.size)
    decay = 2.0 ** (-delta * np.abs(j[:, None] - j[None, :]))
    return np.max(decay * n[None, :], axis=1)


def frequency_envelope(f: SpectralField, delta: Optional[float] = None) -> Envelope:
    delta = ANALYSIS_CONFIG["envelope_delta"] if delta is None else delta
    if not 0 < delta < 1:
        raise ValueError(f"delta debe estar en (0, 1) (recibido: {delta})")
    norms = np.array([lp_block(f, k).l2() for k in range(n_blocks(f.grid))])
    return Envelope(delta, envelope_of(norms, delta), norms)
