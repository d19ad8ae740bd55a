"""
Funcionales de energía evaluados espectralmente (Parseval).

∫ f ḡ dα = period · Σ_k f̂_k conj(ĝ_k).
"""

from typing import Optional, Union

import numpy as np

from src.spectral.grid import SpectralField
from src.spectral.operators import deriv, exact_product, pointwise, project_P, project_Psharp
from src.waves.state import DerivedFields, DiffState, WaveState, derive_all, derive_diff

Background = Union[WaveState, DiffState, DerivedFields]


def as_derived(bg: Background, c_min: Optional[float] = None) -> DerivedFields:
    if isinstance(bg, DerivedFields):
        return bg
    if isinstance(bg, DiffState):
        return derive_diff(bg, c_min)
    return derive_all(bg, c_min)


def inner(f: SpectralField, g: SpectralField) -> complex:
    """∫ f ḡ dα."""
    return complex(f.grid.period * np.vdot(g.coeffs, f.coeffs))


def dispersive_term(r: SpectralField) -> float:
    """∫ Im(r r̄_α) dα = -period · Σ κ|r̂|² (= ‖r‖²_{Ḣ½} si r es holomorfo)."""
    return float(-r.grid.period * np.sum(r.grid.kappa * np.abs(r.coeffs) ** 2))


def energy_E0(w: SpectralField, r: SpectralField) -> float:
    """
    E0 = ∫ ½|w|² + ½Im(r r̄_α).

    Las partes cinética y potencial llevan el mismo peso: es la mitad de la forma
    plana de E⁽²⁾, y la que conserva el flujo lineal w_t + r_α = 0, r_t = iw.
    """
    return 0.5 * (inner(w, w).real + dispersive_term(r))


def mean_level_term(W: SpectralField) -> float:
    """-½·period·Re(mean W²): lo que falta en ½∫|W|² para dar ∫(Im W)² en el toro."""
    return -0.5 * W.grid.period * (W.mean ** 2).real


def energy_E(s: WaveState) -> float:
    """
    Energía conservada ∫ (Im W)² + ½Im(QQ̄_α) - ¼(W̄²W_α + W²W̄_α).

    Sobre la recta (Im W)² se integra como ½|W|². En el toro la media de Im W se mueve
    a orden ε² y ∫(Im W)² = ½∫|W|² + ½·period·(Im mean W)²; sin ese término la
    cantidad deriva a orden ε⁴.
    """
    W = s.W
    Wb = W.conj()
    cubic = inner(exact_product(Wb, Wb), deriv(W).conj())
    quadratic = 0.5 * inner(W, W).real + mean_level_term(W)
    return quadratic + 0.5 * dispersive_term(s.Q) - 0.5 * cubic.real


def energy_E2lin(bg: Background, w: SpectralField, r: SpectralField) -> float:
    """E⁽²⁾ = ∫ (1+a)|w|² + Im(r r̄_α)."""
    d = as_derived(bg)
    weighted = exact_product(1 + d.a, w)
    return inner(weighted, w).real + dispersive_term(r)


def energy_E3lin(bg: Background, w: SpectralField, r: SpectralField, sharp: bool = False) -> float:
    """
    E⁽³⁾ = E⁽²⁾ + ∫ 2Im(R̄ w r_α) - 2Re(𝐖̄ w²).

    Args:
        sharp: Variante periódica con w♯ = P♯w en la corrección cúbica
    """
    d = as_derived(bg)
    quadratic = energy_E2lin(d, w, r)
    ws = project_Psharp(w) if sharp else w
    # ∫ R̄ w r_α = ∫ (w r_α) · conj(R)
    cross = inner(exact_product(ws, deriv(r)), d.R)
    # ∫ 𝐖̄ w² = ∫ w² · conj(𝐖)
    self_term = inner(exact_product(ws, ws), d.Wa)
    return quadratic + 2 * cross.imag - 2 * self_term.real


def energy_flat(w: SpectralField, r: SpectralField) -> float:
    """Forma cuadrática de E⁽²⁾ sobre fondo plano: ∫ |w|² + Im(r r̄_α)."""
    return inner(w, w).real + dispersive_term(r)


def n2_weighted_pair(d: DiffState, c_min: Optional[float] = None):
    """
    Par pesado (Pw, Pr) con w = e^{2φ}𝐖_α, r = e^{2φ}ℝ y φ = -2Re log(1+𝐖).
    e^{2φ} = |1+𝐖|^{-4}.
    """
    f = derive_diff(d, c_min)
    Waa = deriv(f.Wa)
    w = pointwise(lambda W, X: np.abs(1 + W) ** -4 * X, f.Wa, Waa)
    r = pointwise(lambda W, X: np.abs(1 + W) ** -4 * X, f.Wa, f.RR)
    return f, project_P(w), project_P(r)


def energy_n2_cubic(d: DiffState, c_min: Optional[float] = None) -> float:
    """Energía modificada de segundo orden: E⁽³⁾_lin(Pw, Pr) sobre el fondo (𝐖, R)."""
    f, Pw, Pr = n2_weighted_pair(d, c_min)
    return energy_E3lin(f, Pw, Pr)
