"""
Configuración centralizada del proyecto.
"""

import os
from pathlib import Path

from dotenv import load_dotenv

# Cargar variables de entorno (.env opcional)
load_dotenv()

# ============================================
# RUTAS DEL PROYECTO
# ============================================
PROJECT_ROOT = Path(__file__).parent.parent
RESULTS_DIR = PROJECT_ROOT / "results"
CONFIGS_DIR = PROJECT_ROOT / "configs"

VERSION = "0.3.0"
SNAPSHOT_FORMAT_VERSION = 1

# ============================================
# CONFIGURACIÓN DE LA SIMULACIÓN
# ============================================
SIM_CONFIG = {
    # Malla periódica (n_modes potencia de dos)
    "n_modes": 256,
    "period": 2 * 3.141592653589793,

    # Integración temporal (RK4 de paso fijo)
    "dt": 1e-3,
    "t_end": 10.0,
    "integrator": "rk4",
    "output_every": 100,

    # Cota cuerda-arco min|1 + W_α| y tratamiento del modo cero
    "c_min": 0.1,
    "dealias": True,
    "zero_mode_policy": "appendix_a",  # alternativa: "projector_p"

    # Semilla para reproducibilidad
    "seed": 42,
}

# Umbral del guardia CFL: dt · max|k| · max|b|
CFL_WARNING = 0.5

# Detección de explosión
BLOWUP_CONFIG = {
    "max_sup_Wa": 10.0,
}

# ============================================
# TOLERANCIAS
# ============================================
TOLERANCES = {
    "holomorphy": 1e-10,        # |coef k>0| relativo al mayor coeficiente de un HoloField
    "identity": 1e-10,          # residuos del libro de identidades
    "normalization": 1e-9,      # deriva de Re mean(W), Im mean(Q)
    "nf_crosscheck": 1e-9,      # rutas (i)/(ii) de la forma normal
    "graph_fixed_point": 1e-12, # iteración Y = η(α + HY)
    "graph_max_iter": 200,
    "graph_max_slope": 0.5,
}

# ============================================
# CONFIGURACIÓN DEL ANÁLISIS
# ============================================
ANALYSIS_CONFIG = {
    "envelope_delta": 0.1,      # "pequeña constante universal" δ
    "paraproduct_gap": 4,       # separación de bandas f_{<k-4} g_k
    "padding_factor": 2,        # malla extendida para cocientes
}

# ============================================
# EXPERIMENTOS
# ============================================
EXPERIMENT_CONFIG = {
    "verify_count": 100,
    "verify_band_fraction": 6,     # |k| <= n_modes / 6
    "verify_amplitude": 0.01,
    "verify_decay": 0.6,           # decaimiento geométrico de coeficientes
    "verify_edge_level": 1e-14,    # nivel relativo máximo en el borde de la banda desaliasada
    "nf_scan_eps": [0.1, 0.05, 0.025, 0.0125],
    "lifespan_eps": [0.2, 0.1, 0.05],
    "lifespan_sideband": 1e-3,
    "lifespan_t_max": 4000.0,
    "decay_window": (5.0, 50.0),
}

SUBCOMMANDS = ["simulate", "verify", "nf-scan", "lifespan", "decay", "envelope"]

# Concurrencia: número máximo de hilos de trabajo
MAX_THREADS = int(os.getenv("WAVECREST_THREADS", "1"))

# ============================================
# CÓDIGOS DE SALIDA
# ============================================
EXIT_CODES = {
    "ok": 0,
    "failed": 1,
    "validation": 2,
    "blowup": 3,
}

# ============================================
# CRITERIOS DE ACEPTACIÓN
# ============================================
ACCEPTANCE_CRITERIA = {
    "taylor_min": 1 - 1e-10,
    "dispersion_tol": 1e-10,
    "energy_drift": 1e-8,
    "fd_ratio_time": (4.0, 0.3),
    "fd_ratio_lin": (2.0, 0.3),
    "nf_slope": (3.0, 0.1),
    "nf_route_ii_order": (3.0, 0.25),
    "lifespan_slope": (-2.0, 0.3),
    "decay_exponent": (-0.5, 0.15),
    "energy_equivalence_C": 5.0,
    "rk4_order": (4.0, 0.2),
}
