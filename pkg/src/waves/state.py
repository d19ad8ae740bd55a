"""
Estados de onda, campos derivados y libro de identidades.

Todas las cantidades derivadas son funciones del par diagonal (𝐖, R) = (W_α, Q_α/(1+W_α)).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

import numpy as np

from src.config import SIM_CONFIG, TOLERANCES
from src.errors import DegenerateSurfaceError, GridMismatchError, SteepSurfaceError
from src.spectral.grid import Grid, HoloField, SpectralField, from_physical
from src.spectral.operators import (
    deriv,
    divide,
    hilbert,
    pointwise,
    project_P,
    project_Pbar,
)

logger = logging.getLogger(__name__)


def as_holo(f: SpectralField) -> HoloField:
    """Envuelve un campo como HoloField validando (sin limpiar) su soporte."""
    if isinstance(f, HoloField):
        return f
    return HoloField(f.grid, f.coeffs)


def clean_holo(f: SpectralField) -> HoloField:
    return HoloField.from_field(f, clean=True)


# ============================================
# TIPOS
# ============================================

@dataclass(frozen=True)
class WaveState:
    """
    Par holomorfo (W, Q) con W = Z - α.

    Normalización periódica: mean(W) imaginaria y mean(Q) real. Las desviaciones
    se miden con normalization_drift, no se corrigen.
    """

    W: HoloField
    Q: HoloField
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "W", as_holo(self.W))
        object.__setattr__(self, "Q", as_holo(self.Q))
        if self.W.grid != self.Q.grid:
            raise GridMismatchError("W y Q viven en mallas distintas")

    @property
    def grid(self) -> Grid:
        return self.W.grid

    @classmethod
    def flat(cls, grid: Grid, t: float = 0.0) -> "WaveState":
        zero = HoloField.zeros(grid)
        return cls(zero, zero, t)

    def with_fields(self, W: SpectralField, Q: SpectralField, t: float) -> "WaveState":
        return WaveState(W, Q, t)

    def diff(self, c_min: Optional[float] = None) -> "DiffState":
        """Variables diagonales (𝐖, R)."""
        Wa = deriv(self.W)
        check_chord_arc(Wa, c_min)
        R = divide(deriv(self.Q), 1 + Wa)
        return DiffState(clean_holo(Wa), clean_holo(R), self.t)


@dataclass(frozen=True)
class DiffState:
    """Estado diferenciado (𝐖, R)."""

    Wa: HoloField
    R: HoloField
    t: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "Wa", as_holo(self.Wa))
        object.__setattr__(self, "R", as_holo(self.R))
        if self.Wa.grid != self.R.grid:
            raise GridMismatchError("𝐖 y R viven en mallas distintas")

    @property
    def grid(self) -> Grid:
        return self.Wa.grid


@dataclass(frozen=True)
class DerivedFields:
    """
    Campos derivados de un estado.

    Y, F, R, RR y Wa son holomorfos; J, a, b y M son reales (parte imaginaria a redondeo).
    """

    Y: HoloField
    J: SpectralField
    F: HoloField
    R: HoloField
    a: SpectralField
    b: SpectralField
    M: SpectralField
    RR: HoloField
    Wa: HoloField
    # auxiliares reutilizados por la dinámica y las energías
    inv: SpectralField = field(repr=False)
    Ra: SpectralField = field(repr=False)


# ============================================
# CAMPOS DERIVADOS
# ============================================

def min_chord_arc(Wa: SpectralField) -> float:
    """min_α |1 + 𝐖|."""
    return float(np.min(np.abs(1.0 + Wa.values)))


def check_chord_arc(Wa: SpectralField, c_min: Optional[float] = None) -> float:
    c_min = SIM_CONFIG["c_min"] if c_min is None else c_min
    modulus = min_chord_arc(Wa)
    if not modulus >= c_min:
        raise DegenerateSurfaceError(modulus, c_min)
    return modulus


def derive_all(s: WaveState, c_min: Optional[float] = None) -> DerivedFields:
    """Campos derivados (Y, J, F, R, a, b, M, ℝ) de un estado (W, Q)."""
    return derive_diff(s.diff(c_min), c_min)


def derive_diff(d: DiffState, c_min: Optional[float] = None) -> DerivedFields:
    """Campos derivados a partir del estado diferenciado (𝐖, R)."""
    Wa, R = d.Wa, d.R
    check_chord_arc(Wa, c_min)

    inv = pointwise(lambda w: 1.0 / (1.0 + w), Wa)
    invb = inv.conj()
    Rb = R.conj()
    Ra = deriv(R)
    Rba = deriv(Rb)

    Y = pointwise(lambda w: w / (1.0 + w), Wa)
    J = pointwise(lambda w: np.abs(1.0 + w) ** 2, Wa)

    hol = R * invb
    antihol = Rb * inv
    F = project_P(hol - antihol)
    b = project_P(hol) + project_Pbar(antihol)
    a = 1j * (project_Pbar(Rb * Ra) - project_P(R * Rba))
    M = Ra * invb + Rba * inv - deriv(b)
    RR = Ra * (1 + Wa)

    return DerivedFields(
        Y=clean_holo(Y),
        J=J,
        F=clean_holo(F),
        R=R,
        a=a,
        b=b,
        M=M,
        RR=clean_holo(RR),
        Wa=Wa,
        inv=inv,
        Ra=Ra,
    )


# ============================================
# LIBRO DE IDENTIDADES
# ============================================

@dataclass
class IdentityReport:
    """
    Residuos en norma del supremo.

    `residuals` se comparan con la tolerancia; `reported` sólo se informa
    (variante impresa a = 2Re P[RR̄_α]).
    """

    residuals: Dict[str, float]
    reported: Dict[str, float]
    tolerance: float

    @property
    def flagged(self) -> Dict[str, float]:
        return {name: value for name, value in self.residuals.items() if not value <= self.tolerance}

    @property
    def passed(self) -> bool:
        return not self.flagged

    def to_dict(self) -> Dict[str, float]:
        out = dict(self.residuals)
        out.update({f"reported_{k}": v for k, v in self.reported.items()})
        return out


def m_second_form(d: DerivedFields) -> SpectralField:
    """P̄[R̄Y_α - R_αȲ] + P[RȲ_α - R̄_αY]."""
    R, Y = d.R, d.Y
    Rb, Yb = R.conj(), Y.conj()
    Ya, Yba = deriv(Y), deriv(Yb)
    Rba = deriv(Rb)
    return project_Pbar(Rb * Ya - d.Ra * Yb) + project_P(R * Yba - Rba * Y)


def verify_identities(
    s: WaveState,
    derived: Optional[DerivedFields] = None,
    tolerance: Optional[float] = None,
) -> IdentityReport:
    """
    Evalúa ambos lados de las identidades entre campos derivados.

    Args:
        s: Estado de onda
        derived: Campos ya calculados (permite inyectar campos alterados en pruebas)
        tolerance: Umbral de marcado (por defecto TOLERANCES["identity"])
    """
    d = derived if derived is not None else derive_all(s)
    tol = TOLERANCES["identity"] if tolerance is None else tolerance

    R, Rb = d.R, d.R.conj()
    Rba = deriv(Rb)
    R_Rba = project_P(R * Rba)

    residuals = {
        "b_F": (d.b - d.F - Rb * d.inv).sup(),
        "M_forms": (d.M - m_second_form(d)).sup(),
        "b_polynomial": (d.b - 2 * (R - project_P(R * d.Y.conj())).real()).sup(),
        "a_imag_form": (d.a - 2 * R_Rba.imag()).sup(),
        "real_a": float(np.max(np.abs(d.a.values.imag))),
        "real_b": float(np.max(np.abs(d.b.values.imag))),
        "real_M": float(np.max(np.abs(d.M.values.imag))),
    }
    reported = {"a_printed_real_form": (d.a - 2 * R_Rba.real()).sup()}

    report = IdentityReport(residuals, reported, tol)
    for name, value in report.flagged.items():
        logger.warning("Identidad %s marcada: residuo %.3e > %.1e", name, value, tol)
    return report


def taylor_sign(s: WaveState, derived: Optional[DerivedFields] = None) -> float:
    """min_α (1 + a)."""
    d = derived if derived is not None else derive_all(s)
    return float(np.min(1.0 + d.a.values.real))


def pressure_normal_derivative(s: WaveState, derived: Optional[DerivedFields] = None) -> SpectralField:
    """-∂p/∂n = (1 + a)/J sobre la superficie."""
    d = derived if derived is not None else derive_all(s)
    return divide(1 + d.a, d.J)


def normalization_drift(s: WaveState) -> Tuple[float, float]:
    """(Re mean W, Im mean Q); ambos deberían permanecer nulos."""
    drift = (s.W.mean.real, s.Q.mean.imag)
    tol = TOLERANCES["normalization"]
    if max(abs(drift[0]), abs(drift[1])) > tol:
        logger.warning(
            "Deriva de normalización en t=%.4g: Re mean W = %.3e, Im mean Q = %.3e",
            s.t, drift[0], drift[1],
        )
    return drift


def kinematic_residual(s: WaveState) -> float:
    """
    Condición cinemática X_αY_t - Y_αX_t = -Θ_α con Z_t = W_t del sistema completo.
    """
    from src.waves.dynamics import rhs_full

    Zt, _ = rhs_full(s)
    Za = 1 + deriv(s.W)
    lhs = (Za.conj() * Zt).imag()
    return (lhs + deriv(s.Q).imag()).sup()


# ============================================
# SUPERFICIES GRÁFICAS
# ============================================

def evaluate_series(f: SpectralField, points: np.ndarray) -> np.ndarray:
    """Evaluación directa de la serie de Fourier de f en puntos arbitrarios."""
    grid = f.grid
    phase = np.exp(2j * np.pi * np.outer(points, grid.k) / grid.period)
    return phase @ f.coeffs


def from_graph_surface(eta: SpectralField, psi: SpectralField, t: float = 0.0) -> WaveState:
    """
    Estado holomorfo de una superficie gráfica y = η(x) con potencial ψ(x).

    Resuelve Y = η(α + HY) por punto fijo y construye W = HY + iY,
    Q = Ψ + iΘ con Ψ = ψ∘X y Θ = -HΨ.

    Raises:
        SteepSurfaceError: si sup|η'| >= graph_max_slope o la iteración no converge
    """
    grid = eta.grid
    if psi.grid != grid:
        raise GridMismatchError("η y ψ viven en mallas distintas")

    slope = float(np.max(np.abs(deriv(eta).values.real)))
    if not slope < TOLERANCES["graph_max_slope"]:
        raise SteepSurfaceError(
            f"Pendiente sup|η'| = {slope:.3f} >= {TOLERANCES['graph_max_slope']}"
        )

    alpha = grid.nodes
    tol = TOLERANCES["graph_fixed_point"]
    Y = eta.values.real
    for iteration in range(TOLERANCES["graph_max_iter"]):
        HY = hilbert(from_physical(grid, Y)).values.real
        Y_next = evaluate_series(eta, alpha + HY).real
        change = float(np.max(np.abs(Y_next - Y)))
        Y = Y_next
        if change < tol:
            logger.debug("Punto fijo gráfico convergido en %d iteraciones", iteration + 1)
            break
    else:
        raise SteepSurfaceError(
            f"La iteración Y = η(α + HY) no convergió en {TOLERANCES['graph_max_iter']} pasos"
        )

    Yf = from_physical(grid, Y).real()
    X = alpha + hilbert(Yf).values.real
    W = hilbert(Yf) + 1j * Yf

    Psi = from_physical(grid, evaluate_series(psi, X).real).real()
    Q = Psi - 1j * hilbert(Psi)
    return WaveState(clean_holo(W), clean_holo(Q), t)
