"""
Malla periódica y representación espectral de campos.
Los coeficientes se guardan ordenados por frecuencia entera k = -N/2, ..., N/2 - 1.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Union

import numpy as np

from src.config import TOLERANCES
from src.errors import GridMismatchError, HolomorphyError

Number = Union[int, float, complex]


@dataclass(frozen=True)
class Grid:
    """
    Malla uniforme sobre el toro [0, period).

    Args:
        n_modes: Número de puntos de colocación (potencia de dos)
        period: Longitud del intervalo en α
        dealias: Si True, los productos aplican la regla de 2/3
    """

    n_modes: int
    period: float = 2 * np.pi
    dealias: bool = True

    def __post_init__(self):
        n = self.n_modes
        if not isinstance(n, (int, np.integer)) or n < 8 or (n & (n - 1)) != 0:
            raise ValueError(f"n_modes debe ser una potencia de dos >= 8 (recibido: {n})")
        if not self.period > 0:
            raise ValueError(f"period debe ser positivo (recibido: {self.period})")

    @cached_property
    def nodes(self) -> np.ndarray:
        """Nodos α_j = j·period/n_modes."""
        return np.arange(self.n_modes) * (self.period / self.n_modes)

    @cached_property
    def k(self) -> np.ndarray:
        """Frecuencias enteras en orden ascendente."""
        return np.arange(-self.n_modes // 2, self.n_modes // 2)

    @cached_property
    def kappa(self) -> np.ndarray:
        """Frecuencias reescaladas 2πk/period (símbolo de -i∂_α)."""
        return 2 * np.pi * self.k / self.period

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        return np.abs(self.k) <= self.n_modes / 3

    @property
    def zero_index(self) -> int:
        return self.n_modes // 2

    @property
    def k_max(self) -> int:
        return self.n_modes // 2

    def index(self, k: int) -> int:
        """Posición del coeficiente de frecuencia k en el arreglo."""
        if not -self.n_modes // 2 <= k < self.n_modes // 2:
            raise IndexError(f"Frecuencia {k} fuera de la malla de {self.n_modes} modos")
        return k + self.n_modes // 2

    def with_modes(self, n_modes: int) -> "Grid":
        return Grid(n_modes, self.period, self.dealias)


def coeffs_from_values(values: np.ndarray) -> np.ndarray:
    n = values.shape[-1]
    return np.fft.fftshift(np.fft.fft(values, axis=-1), axes=-1) / n


def values_from_coeffs(coeffs: np.ndarray) -> np.ndarray:
    n = coeffs.shape[-1]
    return np.fft.ifft(np.fft.ifftshift(coeffs, axes=-1), axis=-1) * n


@dataclass(frozen=True, eq=False)
class SpectralField:
    """
    Campo complejo sobre la malla, almacenado por sus coeficientes de Fourier.

    Convención de Parseval: ∫|f|² dα = period · Σ_k |f̂_k|².
    """

    grid: Grid
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (self.grid.n_modes,):
            raise GridMismatchError(
                f"Se esperaban {self.grid.n_modes} coeficientes, se recibieron {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    # ------------------------------------------------------------------
    # Constructores
    # ------------------------------------------------------------------
    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros(grid.n_modes, dtype=np.complex128))

    @classmethod
    def constant(cls, grid: Grid, value: Number) -> "SpectralField":
        coeffs = np.zeros(grid.n_modes, dtype=np.complex128)
        coeffs[grid.zero_index] = value
        return cls(grid, coeffs)

    @classmethod
    def from_modes(cls, grid: Grid, modes: dict) -> "SpectralField":
        """Construye un polinomio trigonométrico a partir de {k: coeficiente}."""
        coeffs = np.zeros(grid.n_modes, dtype=np.complex128)
        for k, value in modes.items():
            coeffs[grid.index(int(k))] += value
        return cls(grid, coeffs)

    @classmethod
    def from_function(cls, grid: Grid, func: Callable[[np.ndarray], np.ndarray]) -> "SpectralField":
        return from_physical(grid, func(grid.nodes))

    # ------------------------------------------------------------------
    # Acceso
    # ------------------------------------------------------------------
    def coefficient(self, k: int) -> complex:
        return complex(self.coeffs[self.grid.index(k)])

    @property
    def values(self) -> np.ndarray:
        return to_physical(self)

    @property
    def mean(self) -> complex:
        return complex(self.coeffs[self.grid.zero_index])

    def conj(self) -> "SpectralField":
        """Conjugado complejo: f̄ tiene coeficientes conj(f̂_{-k})."""
        c = self.coeffs
        flipped = np.empty_like(c)
        # k -> -k; el modo -N/2 no tiene pareja y se refleja sobre sí mismo
        flipped[1:] = c[1:][::-1]
        flipped[0] = c[0]
        return SpectralField(self.grid, np.conj(flipped))

    def real(self) -> "SpectralField":
        return 0.5 * (self + self.conj())

    def imag(self) -> "SpectralField":
        return (-0.5j) * (self - self.conj())

    def positive_leakage(self) -> float:
        """Máximo |f̂_k| en frecuencias positivas."""
        pos = self.coeffs[self.grid.k > 0]
        return float(np.max(np.abs(pos))) if pos.size else 0.0

    def sup(self) -> float:
        return float(np.max(np.abs(self.values)))

    def l2(self) -> float:
        return float(np.sqrt(self.grid.period * np.sum(np.abs(self.coeffs) ** 2)))

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.coeffs)))

    # ------------------------------------------------------------------
    # Aritmética
    # ------------------------------------------------------------------
    def _check(self, other: "SpectralField"):
        if other.grid != self.grid:
            raise GridMismatchError("Los campos viven en mallas distintas")

    def __add__(self, other):
        if isinstance(other, SpectralField):
            self._check(other)
            return SpectralField(self.grid, self.coeffs + other.coeffs)
        return self + SpectralField.constant(self.grid, other)

    __radd__ = __add__

    def __neg__(self):
        return SpectralField(self.grid, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SpectralField):
            from src.spectral.operators import product

            return product(self, other)
        return SpectralField(self.grid, self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SpectralField):
            from src.spectral.operators import divide

            return divide(self, other)
        return SpectralField(self.grid, self.coeffs / other)

    def __rtruediv__(self, other):
        from src.spectral.operators import divide

        return divide(SpectralField.constant(self.grid, other), self)


@dataclass(frozen=True, eq=False)
class HoloField(SpectralField):
    """
    Campo holomorfo: soporte de Fourier en k <= 0 (extensión acotada al semiplano inferior).

    La fuga en k > 0 se mide relativa al mayor coeficiente del campo; el margen de
    TOLERANCES["holomorphy"] cubre el redondeo acumulado en las etapas intermedias de RK4.
    """

    def __post_init__(self):
        super().__post_init__()
        leak = self.positive_leakage()
        scale = float(np.max(np.abs(self.coeffs)))
        if leak > TOLERANCES["holomorphy"] * scale:
            raise HolomorphyError(
                f"Campo no holomorfo: |coef k>0| = {leak:.3e} (relativo: {leak / scale:.3e})"
            )

    @classmethod
    def from_field(cls, f: SpectralField, clean: bool = True) -> "HoloField":
        """
        Convierte un SpectralField validando su holomorfía.

        Args:
            f: Campo de entrada
            clean: Si True, anula el residuo de redondeo en k > 0 tras validar
        """
        holo = cls(f.grid, f.coeffs)
        if clean:
            coeffs = np.array(f.coeffs)
            coeffs[f.grid.k > 0] = 0.0
            holo = cls(f.grid, coeffs)
        return holo

    @property
    def inner(self) -> SpectralField:
        return SpectralField(self.grid, self.coeffs)


def to_physical(f: SpectralField) -> np.ndarray:
    """Valores complejos de f en los nodos de la malla."""
    return values_from_coeffs(f.coeffs)


def from_physical(grid: Grid, values) -> SpectralField:
    """Coeficientes de Fourier de los valores nodales."""
    values = np.asarray(values, dtype=np.complex128)
    if values.shape != (grid.n_modes,):
        raise GridMismatchError(
            f"Longitud {values.shape} incompatible con la malla de {grid.n_modes} nodos"
        )
    return SpectralField(grid, coeffs_from_values(values))
