"""
Registro de diagnósticos por instantánea.
"""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

import numpy as np

from src.analysis.energies import energy_E, energy_E0, energy_E2lin, energy_E3lin, energy_n2_cubic
from src.analysis.multilinear import frequency_envelope
from src.analysis.norms import norm_A, norm_B
from src.waves.state import WaveState, derive_all, taylor_sign

# Claves del flujo JSON-lines, en orden de emisión
STREAM_KEYS = [
    "t", "E", "E0", "E2lin", "E3lin", "E2_high", "normA", "normB", "minJ", "min1plusA",
    "nf_residual_G", "nf_residual_K", "meanW_re", "meanQ_im", "sup_Wa", "sup_R", "envelope",
]


@dataclass
class DiagnosticsRecord:
    t: float
    E0: float
    E: float
    E2lin: float
    E3lin: float
    E2_high: float
    normA: float
    normB: float
    minJ: float
    min1plusA: float
    nf_residual_G: float
    nf_residual_K: float
    meanW_re: float
    meanQ_im: float
    sup_Wa: float
    sup_R: float
    envelope: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict:
        data = asdict(self)
        return {key: data[key] for key in STREAM_KEYS}

    def is_finite(self) -> bool:
        values = [v for k, v in asdict(self).items() if k != "envelope"]
        return bool(np.all(np.isfinite(values)) and np.all(np.isfinite(self.envelope)))


def diagnostics_record(s: WaveState, cfg: Optional[object] = None) -> DiagnosticsRecord:
    """
    Energías, normas de control, signo de Taylor y residuos de forma normal de un estado.

    Las energías linealizadas se evalúan sobre el par diferenciado (𝐖, R), que resuelve
    la ecuación linealizada alrededor del propio estado.
    """
    from src.waves.normalform import nf_residual

    c_min = getattr(cfg, "c_min", None)
    d = derive_all(s, c_min)
    diff = s.diff(c_min)
    nf = nf_residual(s, d)

    return DiagnosticsRecord(
        t=float(s.t),
        E0=energy_E0(s.W, s.Q),
        E=energy_E(s),
        E2lin=energy_E2lin(d, d.Wa, d.R),
        E3lin=energy_E3lin(d, d.Wa, d.R),
        E2_high=energy_n2_cubic(diff, c_min),
        normA=norm_A(diff),
        normB=norm_B(diff),
        minJ=float(np.min(d.J.values.real)),
        min1plusA=taylor_sign(s, d),
        nf_residual_G=nf.G_chain.sup(),
        nf_residual_K=nf.K_chain.sup(),
        meanW_re=float(s.W.mean.real),
        meanQ_im=float(s.Q.mean.imag),
        sup_Wa=d.Wa.sup(),
        sup_R=d.R.sup(),
        envelope=[float(c) for c in frequency_envelope(d.Wa).values],
    )
