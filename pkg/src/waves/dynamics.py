"""
Lados derechos de los sistemas completo, diferenciado y linealizado;
integración RK4 de paso fijo y bucle de simulación.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.config import BLOWUP_CONFIG, CFL_WARNING, SIM_CONFIG
from src.errors import BlowUpError, DegenerateSurfaceError, HolomorphyError
from src.spectral.grid import Grid, HoloField, SpectralField
from src.spectral.operators import (
    deriv,
    divide,
    project_P,
    project_Pbar,
    project_Pi,
    project_Pr,
    project_Psharp,
)
from src.waves.state import (
    DerivedFields,
    DiffState,
    WaveState,
    derive_all,
    derive_diff,
    normalization_drift,
)

logger = logging.getLogger(__name__)

Pair = Tuple[SpectralField, SpectralField]


class SimConfig(BaseModel):
    """Parámetros de una simulación (valores por defecto en SIM_CONFIG)."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n_modes: int = SIM_CONFIG["n_modes"]
    period: float = Field(SIM_CONFIG["period"], gt=0)
    dt: float = Field(SIM_CONFIG["dt"], gt=0)
    t_end: float = Field(SIM_CONFIG["t_end"], gt=0)
    c_min: float = Field(SIM_CONFIG["c_min"], gt=0)
    integrator: Literal["rk4"] = SIM_CONFIG["integrator"]
    dealias: bool = SIM_CONFIG["dealias"]
    zero_mode_policy: Literal["appendix_a", "projector_p"] = SIM_CONFIG["zero_mode_policy"]
    output_every: int = Field(SIM_CONFIG["output_every"], gt=0)
    seed: int = SIM_CONFIG["seed"]

    @field_validator("n_modes")
    @classmethod
    def _power_of_two(cls, n: int) -> int:
        if n < 8 or (n & (n - 1)) != 0:
            raise ValueError(f"n_modes debe ser una potencia de dos >= 8 (recibido: {n})")
        return n

    def grid(self) -> Grid:
        return Grid(self.n_modes, self.period, self.dealias)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


@dataclass(frozen=True)
class LinState:
    """Perturbación linealizada en variables diagonales (w, r = q - Rw)."""

    w: HoloField
    r: HoloField

    def __post_init__(self):
        for name in ("w", "r"):
            value = getattr(self, name)
            # el redondeo en k > 0 de cada etapa se valida y se descarta
            object.__setattr__(self, name, HoloField.from_field(value, clean=True))

    @classmethod
    def from_wq(cls, bg: WaveState, w: SpectralField, q: SpectralField) -> "LinState":
        """Diagonaliza (δW, δQ) alrededor del fondo: r = q - R·w."""
        R = bg.diff().R
        return cls(w, q - R * w)

    def to_wq(self, bg: WaveState) -> Pair:
        R = bg.diff().R
        return self.w, self.r + R * self.w


# ============================================
# SISTEMA COMPLETO (W, Q)
# ============================================

def _project_zero_mode(first: SpectralField, second: SpectralField, policy: Optional[str]) -> Pair:
    """
    Tratamiento del modo cero, común al sistema completo y al linealizado proyectado.

    appendix_a: Pⁱ sobre la primera ecuación y Pʳ sobre la segunda (mean W imaginaria,
    mean Q real exactas).
    projector_p: P sobre ambas ecuaciones; en el sistema completo la media de W avanza
    a la mitad de ritmo.
    En las frecuencias no nulas ambas políticas coinciden.
    """
    policy = SIM_CONFIG["zero_mode_policy"] if policy is None else policy
    if policy == "appendix_a":
        return project_Pi(first), project_Pr(second)
    if policy == "projector_p":
        return project_P(first), project_P(second)
    raise ValueError(f"Política de modo cero desconocida: {policy}")


def rhs_full(
    s: WaveState,
    derived: Optional[DerivedFields] = None,
    policy: Optional[str] = None,
    c_min: Optional[float] = None,
) -> Pair:
    """
    (W_t, Q_t) = (-F(1+W_α), -FQ_α + iW - P[|Q_α|²/J]), con el modo cero según `policy`.

    Args:
        s: Estado (W, Q)
        derived: Campos derivados ya calculados
        policy: "appendix_a" o "projector_p" (por defecto SIM_CONFIG["zero_mode_policy"])
        c_min: Cota cuerda-arco para derive_all
    """
    d = derived if derived is not None else derive_all(s, c_min)
    Qa = deriv(s.Q)
    Wt = -(d.F * (1 + d.Wa))
    # |Q_α|²/J = |R|²
    Qt = -(d.F * Qa) + 1j * s.W - project_P(d.R * d.R.conj())
    return _project_zero_mode(Wt, Qt, policy)


# ============================================
# SISTEMAS DIFERENCIADOS
# ============================================

def rhs_diff(d: DiffState, derived: Optional[DerivedFields] = None) -> Pair:
    """(𝐖_t, R_t) del sistema diferenciado."""
    f = derived if derived is not None else derive_diff(d)
    Wa, R = f.Wa, f.R
    one_W = 1 + Wa
    Wat = -(f.b * deriv(Wa)) - one_W * (f.Ra * f.inv.conj()) + one_W * f.M
    Rt = -(f.b * f.Ra) + 1j * ((Wa - f.a) * f.inv)
    return Wat, Rt


def rhs_polynomial(d: DiffState, derived: Optional[DerivedFields] = None) -> Pair:
    """
    (Y_t, R_t) de la forma polinómica:
    Y_t = -bY_α - |1-Y|²R_α + (1-Y)M,  R_t = -bR_α + i(1+a)Y - ia.
    """
    f = derived if derived is not None else derive_diff(d)
    Y = f.Y
    one_minus_Y = 1 - Y
    Yt = -(f.b * deriv(Y)) - (one_minus_Y * one_minus_Y.conj()) * f.Ra + one_minus_Y * f.M
    Rt = -(f.b * f.Ra) + 1j * ((1 + f.a) * Y) - 1j * f.a
    return Yt, Rt


def rhs_wr_diff(d: DiffState, derived: Optional[DerivedFields] = None) -> Pair:
    """
    (𝐖_{αt}, ℝ_t) del sistema para (𝐖_α, ℝ), ℝ = R_α(1+𝐖), con los términos G₂, K₂.
    """
    f = derived if derived is not None else derive_diff(d)
    Wa, RR = f.Wa, f.RR
    Waa = deriv(Wa)
    invb = f.inv.conj()
    Rba = deriv(f.R.conj())
    Yba = deriv(f.Y.conj())

    G2 = RR * Yba - (Rba * f.inv) * Waa + 2 * (f.M * Waa) + (1 + Wa) * deriv(f.M)
    K2 = (
        -2 * ((Rba * f.inv + f.Ra * invb) * RR)
        + 2 * (f.M * RR)
        + (f.Ra * Rba - 1j * deriv(f.a))
    )
    Waat = -(f.b * deriv(Waa)) - deriv(RR) * invb - (f.Ra * invb) * Waa + G2
    RRt = -(f.b * deriv(RR)) + 1j * (((1 + f.a) * Waa) * f.inv) + K2
    return Waat, RRt


# ============================================
# SISTEMA LINEALIZADO
# ============================================

def _lin_aux(f: DerivedFields, p: LinState) -> Tuple[SpectralField, SpectralField]:
    w, r = p.w, p.r
    delta_R_num = deriv(r) + f.Ra * w
    m = divide(delta_R_num, f.J) + (f.R.conj() * deriv(w)) * (f.inv * f.inv)
    n = (f.R.conj() * delta_R_num) * f.inv
    return m, n


def rhs_linearized(
    bg: WaveState,
    p: LinState,
    variant: Literal["unprojected", "projected"] = "unprojected",
    policy: Optional[str] = None,
    derived: Optional[DerivedFields] = None,
) -> Pair:
    """
    (w_t, r_t) del sistema linealizado en variables diagonales.

    Args:
        bg: Estado de fondo
        p: Perturbación (w, r)
        variant: "unprojected" o "projected"
        policy: Política del modo cero para la variante proyectada
            ("appendix_a": Pⁱ sobre w y Pʳ sobre r; "projector_p": P sobre ambas)
    """
    f = derived if derived is not None else derive_all(bg)
    w, r = p.w, p.r
    m, n = _lin_aux(f, p)
    invb = f.inv.conj()

    G = (1 + f.Wa) * (project_P(m.conj()) + project_Pbar(m))
    K = project_Pbar(n) - project_P(n.conj())

    wt = -(f.b * deriv(w)) - deriv(r) * invb - (f.Ra * invb) * w + G
    rt = -(f.b * deriv(r)) + 1j * (((1 + f.a) * w) * f.inv) + K

    if variant == "unprojected":
        return wt, rt
    if variant != "projected":
        raise ValueError(f"Variante desconocida: {variant}")

    return _project_zero_mode(wt, rt, policy)


def quadratic_parts(bg: WaveState, p: LinState, policy: Optional[str] = None) -> Dict[str, SpectralField]:
    """
    Partes cuadráticas de 𝒢 y 𝒦 en forma de producto y de conmutador.

    projector_p: P𝒢⁽²⁾ = -P[𝐖 r̄_α] + P[R w̄_α], P𝒦⁽²⁾ = -P[R r̄_α].
    appendix_a: las mismas expresiones con P♯ (el modo cero se proyecta fuera).
    """
    from src.analysis.multilinear import commutator_P

    policy = SIM_CONFIG["zero_mode_policy"] if policy is None else policy
    proj = project_Psharp if policy == "appendix_a" else project_P

    s = bg.diff()
    Wa, R = s.Wa, s.R
    rba = deriv(p.r.conj())
    wba = deriv(p.w.conj())

    return {
        "G2": proj(R * wba - Wa * rba),
        "K2": -proj(R * rba),
        "G2_commutator": proj(commutator_P(R, wba) - commutator_P(Wa, rba)),
        "K2_commutator": -proj(commutator_P(R, rba)),
    }


# ============================================
# INTEGRACIÓN TEMPORAL
# ============================================

def _rk4(y: Tuple[SpectralField, ...], rhs: Callable, dt: float) -> Tuple[SpectralField, ...]:
    def shift(base, k, h):
        return tuple(b + h * kk for b, kk in zip(base, k))

    k1 = rhs(y, 0.0)
    k2 = rhs(shift(y, k1, dt / 2), dt / 2)
    k3 = rhs(shift(y, k2, dt / 2), dt / 2)
    k4 = rhs(shift(y, k3, dt), dt)
    return tuple(
        b + (dt / 6) * (a1 + 2 * a2 + 2 * a3 + a4)
        for b, a1, a2, a3, a4 in zip(y, k1, k2, k3, k4)
    )


def step_rk4(
    s: WaveState,
    dt: float,
    policy: Optional[str] = None,
    c_min: Optional[float] = None,
) -> WaveState:
    """Un paso RK4 clásico del sistema completo; `c_min` se aplica también en las etapas."""

    def rhs(y, _):
        return rhs_full(WaveState(y[0], y[1], s.t), policy=policy, c_min=c_min)

    W, Q = _rk4((s.W, s.Q), rhs, dt)
    return WaveState(W, Q, s.t + dt)


def step_rk4_diff(d: DiffState, dt: float) -> DiffState:
    """Paso RK4 del sistema (𝐖, R); sólo se usa en pruebas de consistencia."""

    def rhs(y, _):
        return rhs_diff(DiffState(y[0], y[1], d.t))

    Wa, R = _rk4((d.Wa, d.R), rhs, dt)
    return DiffState(Wa, R, d.t + dt)


def step_rk4_tangent(
    s: WaveState,
    p: LinState,
    dt: float,
    variant: Literal["unprojected", "projected"] = "unprojected",
    policy: Optional[str] = None,
) -> Tuple[WaveState, LinState]:
    """Paso RK4 conjunto del fondo y de la perturbación linealizada."""

    def rhs(y, _):
        bg = WaveState(y[0], y[1], s.t)
        derived = derive_all(bg)
        Wt, Qt = rhs_full(bg, derived, policy)
        wt, rt = rhs_linearized(bg, LinState(y[2], y[3]), variant, policy, derived)
        return Wt, Qt, wt, rt

    W, Q, w, r = _rk4((s.W, s.Q, p.w, p.r), rhs, dt)
    return WaveState(W, Q, s.t + dt), LinState(w, r)


def cfl_number(s: WaveState, dt: float, c_min: Optional[float] = None) -> float:
    """dt · max|κ| · max|b|."""
    b = derive_all(s, c_min).b
    return float(dt * np.max(np.abs(s.grid.kappa)) * np.max(np.abs(b.values.real)))


def _check_blowup(s: WaveState, c_min: float) -> Optional[str]:
    if not (s.W.is_finite() and s.Q.is_finite()):
        return "NaN"
    values = deriv(s.W).values
    if np.max(np.abs(values)) > BLOWUP_CONFIG["max_sup_Wa"]:
        return "sup|𝐖| > {}".format(BLOWUP_CONFIG["max_sup_Wa"])
    if np.min(np.abs(1 + values)) < c_min:
        return "min|1+𝐖| < c_min"
    return None


@dataclass
class RunResult:
    state: WaveState
    records: List = field(default_factory=list)
    steps: int = 0
    cfl: float = 0.0


def run(
    s0: WaveState,
    cfg: SimConfig,
    sink: Optional[Callable] = None,
    on_snapshot: Optional[Callable[[WaveState], None]] = None,
    diagnostics: bool = True,
) -> RunResult:
    """
    Integra el sistema completo con RK4 de paso fijo hasta cfg.t_end.

    Cada cfg.output_every pasos se mide la deriva de normalización, se construye un
    DiagnosticsRecord (entregado a `sink`) y se llama a `on_snapshot`.

    Raises:
        BlowUpError: NaN, sup|𝐖| demasiado grande o violación cuerda-arco
    """
    from src.analysis.diagnostics import diagnostics_record

    cfl = cfl_number(s0, cfg.dt, cfg.c_min)
    if cfl > CFL_WARNING:
        logger.warning("Número CFL %.3f supera el umbral %.2f", cfl, CFL_WARNING)

    result = RunResult(state=s0, cfl=cfl)

    def emit(state: WaveState):
        normalization_drift(state)
        if diagnostics:
            record = diagnostics_record(state, cfg)
            result.records.append(record)
            if sink is not None:
                sink(record)
        if on_snapshot is not None:
            on_snapshot(state)

    emit(s0)
    s = s0
    for step in range(1, cfg.n_steps + 1):
        try:
            candidate = step_rk4(s, cfg.dt, cfg.zero_mode_policy, cfg.c_min)
        except (DegenerateSurfaceError, HolomorphyError) as exc:
            raise BlowUpError(str(exc), s.t, s) from exc
        reason = _check_blowup(candidate, cfg.c_min)
        if reason is not None:
            logger.warning("Explosión en el paso %d (t=%.4g): %s", step, candidate.t, reason)
            raise BlowUpError(reason, s.t, s)
        s = candidate
        result.state = s
        result.steps = step
        if step % cfg.output_every == 0 or step == cfg.n_steps:
            emit(s)
    return result
