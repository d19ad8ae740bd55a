"""
Escritura de resultados: diagnósticos JSON-lines, resúmenes CSV, reportes JSON
e instantáneas. Cada archivo lleva la cabecera de procedencia de la ejecución.

Las salidas no incluyen marcas de tiempo: misma (semilla, configuración)
produce archivos idénticos byte a byte.
"""

import json
from pathlib import Path
from typing import Dict, Optional

import numpy as np
import pandas as pd

from src.waves.snapshots import save_snapshot, snapshot_name
from src.waves.state import WaveState


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # NaN/inf no son JSON válido
        return value if np.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    return value


class JsonlWriter:
    """
    Flujo JSON-lines: la primera línea es {"provenance": {...}} y cada
    llamada añade un objeto.
    """

    def __init__(self, path: Path, provenance: Dict):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)
        self._fh = open(self.path, "w", encoding="utf-8")
        self.count = 0
        self._write({"provenance": provenance})

    def _write(self, obj: Dict):
        self._fh.write(json.dumps(_jsonable(obj), ensure_ascii=False, sort_keys=False) + "\n")

    def __call__(self, record):
        obj = record.to_dict() if hasattr(record, "to_dict") else dict(record)
        self._write(obj)
        self.count += 1

    def close(self):
        if not self._fh.closed:
            self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def read_jsonl(path: Path):
    """Devuelve (procedencia, lista de registros)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [json.loads(line) for line in fh if line.strip()]
    return lines[0].get("provenance", {}), lines[1:]


def write_csv(df: pd.DataFrame, path: Path, provenance: Dict) -> Path:
    """CSV con una línea de comentario '# provenance: {...}' antes de la cabecera."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# provenance: " + json.dumps(_jsonable(provenance), sort_keys=True) + "\n")
        df.to_csv(fh, index=False)
    return path


def read_csv(path: Path) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def write_json(data: Dict, path: Path, provenance: Dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(_jsonable({"provenance": provenance, **data}), fh, indent=2, ensure_ascii=False)
    return path


class SnapshotWriter:
    """Guarda instantáneas en <output_dir>/snapshots/t_<tiempo>.bin."""

    def __init__(self, output_dir: Path, provenance: Optional[Dict] = None):
        self.directory = Path(output_dir) / "snapshots"
        self.provenance = provenance
        self.paths = []

    def __call__(self, state: WaveState):
        path = save_snapshot(self.directory / snapshot_name(state.t), state, self.provenance)
        self.paths.append(path)
        return path
