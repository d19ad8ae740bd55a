"""
Cálculo de multiplicadores de Fourier sobre el toro.

Transformada de Hilbert, proyectores holomorfos (con las variantes del modo cero),
derivadas, productos desaliasados, expresiones racionales sobre malla extendida
y bloques diádicos de Littlewood-Paley con cortes abruptos.
"""

from typing import Callable, List

import numpy as np

from src.config import ANALYSIS_CONFIG
from src.errors import GridMismatchError
from src.spectral.grid import (
    Grid,
    SpectralField,
    coeffs_from_values,
    values_from_coeffs,
)


def _apply(f: SpectralField, symbol: np.ndarray) -> SpectralField:
    return SpectralField(f.grid, f.coeffs * symbol)


def _zero_mode_only(f: SpectralField, value: complex) -> SpectralField:
    return SpectralField.constant(f.grid, value)


# ============================================
# TRANSFORMADA DE HILBERT Y PROYECTORES
# ============================================

def hilbert(f: SpectralField) -> SpectralField:
    """H e^{ikα} = -i sgn(k) e^{ikα}; el modo cero va a 0."""
    return _apply(f, -1j * np.sign(f.grid.k))


def project_P(f: SpectralField) -> SpectralField:
    """P = ½(I - iH): conserva k < 0, anula k > 0 y toma la mitad del modo cero."""
    k = f.grid.k
    return _apply(f, np.where(k < 0, 1.0, np.where(k == 0, 0.5, 0.0)))


def project_Pbar(f: SpectralField) -> SpectralField:
    k = f.grid.k
    return _apply(f, np.where(k > 0, 1.0, np.where(k == 0, 0.5, 0.0)))


def project_P0(f: SpectralField) -> SpectralField:
    return _zero_mode_only(f, f.mean)


def project_Psharp(f: SpectralField) -> SpectralField:
    """P♯ = P - ½P₀: sólo frecuencias estrictamente negativas."""
    return _apply(f, (f.grid.k < 0).astype(float))


def project_Pbar_sharp(f: SpectralField) -> SpectralField:
    return _apply(f, (f.grid.k > 0).astype(float))


def project_Pr(f: SpectralField) -> SpectralField:
    """Pʳ = P♯ + Re∘P₀."""
    return project_Psharp(f) + _zero_mode_only(f, f.mean.real)


def project_Pi(f: SpectralField) -> SpectralField:
    """Pⁱ = P♯ + i·Im∘P₀."""
    return project_Psharp(f) + _zero_mode_only(f, 1j * f.mean.imag)


def project_Pbar_r(f: SpectralField) -> SpectralField:
    return project_Pbar_sharp(f) + _zero_mode_only(f, f.mean.real)


def project_Pbar_i(f: SpectralField) -> SpectralField:
    return project_Pbar_sharp(f) + _zero_mode_only(f, 1j * f.mean.imag)


# ============================================
# DERIVADAS
# ============================================

def deriv(f: SpectralField, order: int = 1) -> SpectralField:
    """Multiplicador (iκ)^order con κ = 2πk/period."""
    if order < 0:
        raise ValueError(f"order debe ser no negativo (recibido: {order})")
    return _apply(f, (1j * f.grid.kappa) ** order)


def frac_deriv(f: SpectralField, s: float) -> SpectralField:
    """|D|^s con símbolo |κ|^s; el modo cero se anula para s > 0."""
    if s < 0:
        raise ValueError(f"s debe ser no negativo (recibido: {s})")
    if s == 0:
        return f
    return _apply(f, np.abs(f.grid.kappa) ** s)


# ============================================
# PRODUCTOS
# ============================================

def dealias(f: SpectralField) -> SpectralField:
    """Regla de 2/3: anula |k| > n_modes/3 (identidad si la malla no desaliasa)."""
    if not f.grid.dealias:
        return f
    return _apply(f, f.grid.dealias_mask.astype(float))


def _same_grid(*fields: SpectralField) -> Grid:
    grid = fields[0].grid
    for other in fields[1:]:
        if other.grid != grid:
            raise GridMismatchError("Los campos viven en mallas distintas")
    return grid


def product(f: SpectralField, g: SpectralField) -> SpectralField:
    """Producto puntual con desaliasado 2/3 antes y después de multiplicar."""
    grid = _same_grid(f, g)
    fv = values_from_coeffs(dealias(f).coeffs)
    gv = values_from_coeffs(dealias(g).coeffs)
    return dealias(SpectralField(grid, coeffs_from_values(fv * gv)))


def _pad(coeffs: np.ndarray, factor: int) -> np.ndarray:
    n = coeffs.shape[-1]
    padded = np.zeros(n * factor, dtype=np.complex128)
    start = (n * factor) // 2 - n // 2
    padded[start:start + n] = coeffs
    return padded


def _unpad(coeffs: np.ndarray, n: int) -> np.ndarray:
    m = coeffs.shape[-1]
    start = m // 2 - n // 2
    return coeffs[start:start + n]


def exact_product(f: SpectralField, g: SpectralField) -> SpectralField:
    """
    Producto sin desaliasar: convolución exacta evaluada sobre la malla del doble
    de puntos y truncada a la banda de la malla original.
    """
    grid = _same_grid(f, g)
    n = grid.n_modes
    fv = values_from_coeffs(_pad(f.coeffs, 2))
    gv = values_from_coeffs(_pad(g.coeffs, 2))
    return SpectralField(grid, _unpad(coeffs_from_values(fv * gv), n))


def pointwise(func: Callable[..., np.ndarray], *fields: SpectralField) -> SpectralField:
    """
    Evalúa una expresión puntual (racional) sobre la malla extendida y vuelve a la
    banda desaliasada.

    Args:
        func: Función de arreglos complejos, uno por campo
        *fields: Campos en la misma malla
    """
    grid = _same_grid(*fields)
    factor = int(ANALYSIS_CONFIG["padding_factor"])
    values = [values_from_coeffs(_pad(dealias(f).coeffs, factor)) for f in fields]
    result = np.asarray(func(*values), dtype=np.complex128)
    return dealias(SpectralField(grid, _unpad(coeffs_from_values(result), grid.n_modes)))


def reciprocal(f: SpectralField) -> SpectralField:
    return pointwise(lambda v: 1.0 / v, f)


def divide(f: SpectralField, g: SpectralField) -> SpectralField:
    """f/g evaluado como cociente puntual sobre la malla extendida."""
    return pointwise(lambda u, v: u / v, f, g)


# ============================================
# BLOQUES DE LITTLEWOOD-PALEY
# ============================================

def block_index(k: np.ndarray) -> np.ndarray:
    """Bloque diádico de cada frecuencia: 0 si |k| <= 1, si no ceil(log2|k|)."""
    absk = np.abs(np.asarray(k))
    return np.where(absk <= 1, 0, np.ceil(np.log2(np.maximum(absk, 1)))).astype(int)


def n_blocks(grid: Grid) -> int:
    return int(block_index(np.array([grid.k_max]))[0]) + 1


def lp_block(f: SpectralField, j: int) -> SpectralField:
    """Bloque j: 2^{j-1} < |k| <= 2^j (bloque 0: |k| <= 1)."""
    return _apply(f, (block_index(f.grid.k) == j).astype(float))


def lp_low(f: SpectralField, j: int) -> SpectralField:
    """Suma de los bloques de índice < j."""
    return _apply(f, (block_index(f.grid.k) < j).astype(float))


def lp_decompose(f: SpectralField) -> List[SpectralField]:
    return [lp_block(f, j) for j in range(n_blocks(f.grid))]

