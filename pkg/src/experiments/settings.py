"""
Especificación de experimentos: archivos planos clave=valor con anulaciones --set.

Las claves coinciden con los campos de SimConfig, DataSpec y ExperimentSpec.
"""

import hashlib
from pathlib import Path
from typing import Dict, List, Literal, Optional, Sequence, Tuple

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.config import EXPERIMENT_CONFIG, MAX_THREADS, RESULTS_DIR, SUBCOMMANDS, VERSION
from src.errors import ConfigError
from src.waves.dynamics import SimConfig

DataKind = Literal["flat", "single_mode", "multi_mode", "localized", "from_graph", "modulated", "random"]


def _split_floats(value) -> List[float]:
    if isinstance(value, str):
        return [float(v) for v in value.replace(";", ",").split(",") if v.strip()]
    return [float(v) for v in value]


class DataSpec(BaseModel):
    """
    Descriptor de datos iniciales. `eps` es la amplitud global; las amplitudes de
    `modes` son relativas a eps.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: DataKind = "single_mode"
    eps: float = Field(0.01, ge=0)
    k: int = -1
    modes: Dict[int, float] = Field(default_factory=lambda: {-1: 1.0})
    width: float = Field(2.0, gt=0)
    center: float = 0.0
    wavenumber: int = Field(1, ge=1)
    sideband: float = Field(EXPERIMENT_CONFIG["lifespan_sideband"], ge=0)
    amplitude: float = Field(EXPERIMENT_CONFIG["verify_amplitude"], ge=0)

    @field_validator("modes", mode="before")
    @classmethod
    def _parse_modes(cls, value):
        """Acepta "-1:1, -3:0.5" además de un diccionario."""
        if isinstance(value, str):
            modes = {}
            for item in value.split(","):
                if not item.strip():
                    continue
                key, _, amp = item.partition(":")
                modes[int(key)] = float(amp)
            return modes
        return value

    def frequencies(self) -> List[int]:
        if self.kind in ("single_mode",):
            return [self.k]
        if self.kind == "multi_mode":
            return list(self.modes)
        if self.kind == "modulated":
            return [self.k - 1, self.k, self.k + 1]
        if self.kind == "from_graph":
            return [-self.wavenumber]
        return []


class ExperimentSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["simulate", "verify", "nf-scan", "lifespan", "decay", "envelope"] = "simulate"
    sim: SimConfig = Field(default_factory=SimConfig)
    data: DataSpec = Field(default_factory=DataSpec)
    output_dir: Path = RESULTS_DIR
    eps_list: List[float] = Field(default_factory=list)
    t_max: float = Field(EXPERIMENT_CONFIG["lifespan_t_max"], gt=0)
    count: int = Field(EXPERIMENT_CONFIG["verify_count"], gt=0)
    window: Tuple[float, float] = EXPERIMENT_CONFIG["decay_window"]
    threads: int = Field(MAX_THREADS, ge=1)
    write_snapshots: bool = True

    @field_validator("eps_list", mode="before")
    @classmethod
    def _parse_eps(cls, value):
        return _split_floats(value)

    @field_validator("window", mode="before")
    @classmethod
    def _parse_window(cls, value):
        values = _split_floats(value)
        if len(values) != 2 or not values[0] < values[1]:
            raise ValueError(f"window debe ser 't0,t1' con t0 < t1 (recibido: {value})")
        return tuple(values)

    @model_validator(mode="after")
    def _realizable(self):
        limit = self.sim.n_modes / 3
        for k in self.data.frequencies():
            if k > 0:
                raise ValueError(f"Frecuencia {k} positiva: los datos deben ser holomorfos (k <= 0)")
            if abs(k) > limit:
                raise ValueError(f"Frecuencia {k} fuera de la banda desaliasada |k| <= {limit:.1f}")
        return self

    def config_hash(self) -> str:
        payload = self.model_dump_json(exclude={"output_dir", "threads"})
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    def provenance(self) -> Dict:
        return {
            "config_hash": self.config_hash(),
            "kind": self.kind,
            "n_modes": self.sim.n_modes,
            "period": self.sim.period,
            "version": VERSION,
        }


SIM_KEYS = set(SimConfig.model_fields)
DATA_KEYS = {f"data_{name}" for name in DataSpec.model_fields} | {"data"}
SPEC_KEYS = set(ExperimentSpec.model_fields) - {"sim", "data"}


def parse_overrides(pairs: Sequence[str]) -> Dict[str, str]:
    out = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"Anulación inválida '{pair}': se esperaba clave=valor")
        out[key.strip()] = value.strip()
    return out


def build_spec(kind: str, values: Dict[str, str], output_dir: Optional[Path] = None) -> ExperimentSpec:
    """
    Reparte claves planas entre SimConfig, DataSpec (prefijo data_) y ExperimentSpec.

    Raises:
        ConfigError: clave desconocida
        pydantic.ValidationError: valores o descriptor irrealizable
    """
    if kind not in SUBCOMMANDS:
        raise ConfigError(f"Subcomando desconocido: {kind}")
    sim, data, spec = {}, {}, {"kind": kind}
    for key, value in values.items():
        if key in SIM_KEYS:
            sim[key] = value
        elif key == "data":
            data["kind"] = value
        elif key in DATA_KEYS:
            data[key[len("data_"):]] = value
        elif key in SPEC_KEYS - {"kind"}:
            spec[key] = value
        else:
            raise ConfigError(f"Clave de configuración desconocida: '{key}'")
    if output_dir is not None:
        spec["output_dir"] = output_dir
    return ExperimentSpec(sim=SimConfig(**sim), data=DataSpec(**data), **spec)


def load_spec(
    kind: str,
    config_path: Optional[Path] = None,
    overrides: Sequence[str] = (),
    output_dir: Optional[Path] = None,
) -> ExperimentSpec:
    """Carga un archivo clave=valor (opcional) y aplica las anulaciones --set."""
    values: Dict[str, str] = {}
    if config_path is not None:
        path = Path(config_path)
        if not path.is_file():
            raise ConfigError(f"Archivo de configuración no encontrado: {path}")
        values.update({k: v for k, v in dotenv_values(path).items() if v is not None})
    values.update(parse_overrides(overrides))
    return build_spec(kind, values, output_dir)


__all__ = [
    "DataSpec",
    "ExperimentSpec",
    "SimConfig",
    "ValidationError",
    "build_spec",
    "load_spec",
    "parse_overrides",
]
