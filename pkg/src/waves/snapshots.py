"""
Lectura y escritura de instantáneas de estado.

Formato: una línea de cabecera JSON (n_modes, period, t, format_version y
procedencia opcional) seguida de los coeficientes de W y Q como float64
little-endian, real/imag intercalados.
"""

import json
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np

from src.config import SNAPSHOT_FORMAT_VERSION
from src.errors import GridMismatchError
from src.spectral.grid import Grid, HoloField
from src.waves.state import WaveState

_DTYPE = np.dtype("<f8")


def snapshot_name(t: float) -> str:
    return f"t_{t:012.6f}.bin"


def save_snapshot(path: Path, state: WaveState, provenance: Optional[Dict] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = {
        "n_modes": state.grid.n_modes,
        "period": state.grid.period,
        "t": state.t,
        "format_version": SNAPSHOT_FORMAT_VERSION,
    }
    if provenance:
        header["provenance"] = provenance

    payload = np.empty(4 * state.grid.n_modes, dtype=_DTYPE)
    payload[0:2 * state.grid.n_modes:2] = state.W.coeffs.real
    payload[1:2 * state.grid.n_modes:2] = state.W.coeffs.imag
    payload[2 * state.grid.n_modes::2] = state.Q.coeffs.real
    payload[2 * state.grid.n_modes + 1::2] = state.Q.coeffs.imag

    with open(path, "wb") as fh:
        fh.write((json.dumps(header, ensure_ascii=False, sort_keys=True) + "\n").encode("utf-8"))
        fh.write(payload.tobytes())
    return path


def load_snapshot(path: Path, dealias: bool = True) -> Tuple[WaveState, Dict]:
    """Devuelve el estado y la cabecera."""
    with open(path, "rb") as fh:
        header = json.loads(fh.readline().decode("utf-8"))
        payload = np.frombuffer(fh.read(), dtype=_DTYPE)

    if header.get("format_version") != SNAPSHOT_FORMAT_VERSION:
        raise ValueError(f"Versión de formato no soportada: {header.get('format_version')}")
    n = int(header["n_modes"])
    if payload.size != 4 * n:
        raise GridMismatchError(f"Se esperaban {4 * n} valores, el archivo contiene {payload.size}")

    grid = Grid(n, float(header["period"]), dealias)
    W = payload[:2 * n:2] + 1j * payload[1:2 * n:2]
    Q = payload[2 * n::2] + 1j * payload[2 * n + 1::2]
    return WaveState(HoloField(grid, W), HoloField(grid, Q), float(header["t"])), header
