"""
Excepciones del proyecto.
"""

from typing import Optional


class WavecrestError(Exception):
    """Error base del simulador."""


class GridMismatchError(WavecrestError, ValueError):
    """Campos o arreglos incompatibles con la malla."""


class DegenerateSurfaceError(WavecrestError):
    """La cota cuerda-arco min|1 + W_α| >= c_min no se cumple."""

    def __init__(self, min_modulus: float, c_min: float):
        self.min_modulus = min_modulus
        self.c_min = c_min
        super().__init__(
            f"Superficie degenerada: min|1 + W_α| = {min_modulus:.4e} < c_min = {c_min}"
        )


class SteepSurfaceError(WavecrestError):
    """La iteración de punto fijo para una superficie gráfica no converge."""


class BlowUpError(WavecrestError):
    """Inestabilidad o explosión numérica durante una simulación."""

    def __init__(self, reason: str, last_good_time: float, last_good_state: Optional[object] = None):
        self.reason = reason
        self.last_good_time = last_good_time
        self.last_good_state = last_good_state
        super().__init__(f"Explosión detectada ({reason}); último tiempo válido t = {last_good_time:.6g}")


class ConfigError(WavecrestError, ValueError):
    """Configuración inválida: clave desconocida, descriptor irrealizable o archivo ausente."""


class HolomorphyError(WavecrestError, ValueError):
    """Coeficientes en frecuencias positivas por encima de la tolerancia."""
