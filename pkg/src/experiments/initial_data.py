"""
Construcción de datos iniciales holomorfos a partir de un DataSpec.

Todos los constructores devuelven estados normalizados (mean W imaginaria,
mean Q real) con soporte en la banda desaliasada.
"""

import logging
from typing import Dict, Optional

import numpy as np

from src.config import EXPERIMENT_CONFIG
from src.errors import ConfigError
from src.spectral.grid import Grid, HoloField, SpectralField
from src.waves.state import WaveState, from_graph_surface

from .settings import DataSpec

logger = logging.getLogger(__name__)


def _omega(grid: Grid, k: int) -> float:
    return float(np.sqrt(abs(2 * np.pi * k / grid.period)))


def linear_wave(grid: Grid, modes: Dict[int, complex]) -> WaveState:
    """
    Superposición de ondas lineales que viajan en el mismo sentido:
    Q_k = -W_k/ω_k con ω = √|κ|. El modo cero se descarta.
    """
    W = {k: c for k, c in modes.items() if k != 0}
    Q = {k: -c / _omega(grid, k) for k, c in W.items()}
    return WaveState(HoloField.from_modes(grid, W), HoloField.from_modes(grid, Q))


def single_mode(grid: Grid, eps: float, k: int = -1) -> WaveState:
    return linear_wave(grid, {k: eps})


def multi_mode(grid: Grid, eps: float, modes: Dict[int, float]) -> WaveState:
    return linear_wave(grid, {k: eps * amp for k, amp in modes.items()})


def localized(grid: Grid, eps: float, width: float = 2.0, center: float = 0.0) -> WaveState:
    """
    Perfil tipo núcleo de Poisson: W_{-n} = ε(1-s)sⁿ e^{inκ₁c}, n >= 1, con
    s = exp(-2π·width/L); Q = 0.
    """
    s = np.exp(-2 * np.pi * width / grid.period)
    kappa1 = 2 * np.pi / grid.period
    n = np.arange(1, int(grid.n_modes // 3) + 1)
    coeffs = eps * (1 - s) * s ** n * np.exp(1j * n * kappa1 * center)
    W = HoloField.from_modes(grid, dict(zip((-n).tolist(), coeffs)))
    return WaveState(W, HoloField.zeros(grid))


def from_graph(grid: Grid, eps: float, wavenumber: int = 1) -> WaveState:
    """Superficie gráfica η = ε cos(2πmx/L) en reposo (ψ = 0)."""
    eta = SpectralField.from_modes(grid, {wavenumber: eps / 2, -wavenumber: eps / 2})
    return from_graph_surface(eta, SpectralField.zeros(grid))


def modulated(grid: Grid, eps: float, k: int, sideband: float, seed: int) -> WaveState:
    """Portadora de frecuencia k con bandas laterales k±1 de fase aleatoria."""
    rng = np.random.default_rng(seed)
    phases = np.exp(2j * np.pi * rng.random(2))
    modes = {k: eps, k - 1: sideband * eps * phases[0], k + 1: sideband * eps * phases[1]}
    return linear_wave(grid, modes)


def resolved_decay(grid: Grid, decay: float) -> float:
    """
    Decaimiento geométrico efectivo: el menor entre `decay` y el que lleva el espectro
    a EXPERIMENT_CONFIG["verify_edge_level"] en el borde de la banda desaliasada.

    Con mallas pequeñas los campos racionales (1/(1+𝐖), Y, ...) dejan de estar
    resueltos dentro de |k| <= N/3 si el decaimiento no se ajusta a la malla.
    """
    edge = grid.n_modes // 3
    return min(decay, EXPERIMENT_CONFIG["verify_edge_level"] ** (1.0 / edge))


def random_state(
    grid: Grid,
    rng: np.random.Generator,
    amplitude: Optional[float] = None,
    decay: Optional[float] = None,
    band_fraction: Optional[int] = None,
) -> WaveState:
    """
    Estado aleatorio de banda limitada: |k| <= N/band_fraction, coeficientes
    gaussianos complejos con decaimiento geométrico resolved_decay(grid, decay)^|k|.
    """
    amplitude = EXPERIMENT_CONFIG["verify_amplitude"] if amplitude is None else amplitude
    decay = EXPERIMENT_CONFIG["verify_decay"] if decay is None else decay
    decay = resolved_decay(grid, decay)
    band_fraction = EXPERIMENT_CONFIG["verify_band_fraction"] if band_fraction is None else band_fraction

    ks = np.arange(-(grid.n_modes // band_fraction), 0)
    scale = amplitude * decay ** np.abs(ks)

    def draw():
        z = (rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)) / np.sqrt(2)
        return HoloField.from_modes(grid, dict(zip(ks.tolist(), scale * z)))

    return WaveState(draw(), draw())


def build_state(data: DataSpec, grid: Grid, seed: int = 0) -> WaveState:
    """
    Estado inicial descrito por `data` sobre `grid`.

    Raises:
        ConfigError: tipo de datos desconocido
        SteepSurfaceError: superficie gráfica demasiado empinada
    """
    logger.debug("Datos iniciales %s (eps=%.3g) en malla N=%d", data.kind, data.eps, grid.n_modes)
    if data.kind == "flat":
        return WaveState.flat(grid)
    if data.kind == "single_mode":
        return single_mode(grid, data.eps, data.k)
    if data.kind == "multi_mode":
        return multi_mode(grid, data.eps, data.modes)
    if data.kind == "localized":
        return localized(grid, data.eps, data.width, data.center)
    if data.kind == "from_graph":
        return from_graph(grid, data.eps, data.wavenumber)
    if data.kind == "modulated":
        return modulated(grid, data.eps, data.k, data.sideband, seed)
    if data.kind == "random":
        return random_state(grid, np.random.default_rng(seed), amplitude=data.amplitude)
    raise ConfigError(f"Tipo de datos iniciales desconocido: {data.kind}")
