"""
Pruebas de los lados derechos, el sistema linealizado, el integrador RK4 y el bucle de simulación.
"""

import logging

import numpy as np
import pytest
from pydantic import ValidationError

from src.analysis.energies import energy_E
from src.config import ACCEPTANCE_CRITERIA, BLOWUP_CONFIG, SIM_CONFIG
from src.errors import BlowUpError, DegenerateSurfaceError
from src.experiments.initial_data import multi_mode, random_state, single_mode
from src.spectral.grid import Grid, HoloField, SpectralField
from src.spectral.operators import deriv, divide, project_Psharp
from src.waves.dynamics import (
    LinState,
    SimConfig,
    cfl_number,
    quadratic_parts,
    rhs_diff,
    rhs_full,
    rhs_linearized,
    rhs_polynomial,
    rhs_wr_diff,
    run,
    step_rk4,
    step_rk4_diff,
    step_rk4_tangent,
)
from src.waves.state import WaveState, derive_all, normalization_drift


def _sup(pair_a, pair_b):
    return max((a - b).sup() for a, b in zip(pair_a, pair_b))


def _reflect(f):
    """f̂_k -> conj(f̂_k), es decir f(α) -> conj(f(-α))."""
    return SpectralField(f.grid, np.conj(f.coeffs))


def _reversed(s):
    return WaveState(-_reflect(s.W), -_reflect(s.Q), s.t)


class TestSimConfig:
    def test_valores_por_defecto(self):
        cfg = SimConfig()
        assert cfg.n_modes == 256
        assert cfg.zero_mode_policy == "appendix_a"
        assert cfg.n_steps == 10000

    def test_no_potencia_de_dos(self):
        with pytest.raises(ValidationError):
            SimConfig(n_modes=100)

    def test_clave_desconocida(self):
        with pytest.raises(ValidationError):
            SimConfig(viscosity=1.0)

    def test_politica_invalida(self):
        with pytest.raises(ValidationError):
            SimConfig(zero_mode_policy="other")


class TestDispersion:
    """Frecuencias propias del sistema linealizado sobre fondo plano."""

    def test_omega_raiz_de_k(self):
        grid = Grid(128)
        flat = WaveState.flat(grid)
        tol = ACCEPTANCE_CRITERIA["dispersion_tol"]
        for k in range(1, 33):
            e = HoloField.from_modes(grid, {-k: 1.0})
            zero = HoloField.zeros(grid)
            cols = []
            for p in (LinState(e, zero), LinState(zero, e)):
                wt, rt = rhs_linearized(flat, p)
                cols.append([wt.coefficient(-k), rt.coefficient(-k)])
            eig = np.linalg.eigvals(np.array(cols).T)
            assert np.max(np.abs(eig.real)) < tol
            assert np.allclose(np.sort(eig.imag), [-np.sqrt(k), np.sqrt(k)], atol=tol)

    def test_onda_lineal_plana(self, grid64):
        s = single_mode(grid64, 1e-8, -4)
        Wt, _ = rhs_full(s)
        # W_t = -iωW con ω = 2
        assert (Wt - (-2j) * s.W).sup() < 1e-14

    def test_expansion_segundo_orden(self, grid64):
        """
        W = εe^{-iα}, Q = -W: W_t = -iεe^{-iα} + O(ε³) y
        Q_t = iεe^{-iα} + ε²(e^{-2iα} - ½) + O(ε³).
        """

        def residual(eps):
            W = HoloField.from_modes(grid64, {-1: eps})
            Wt, Qt = rhs_full(WaveState(W, -W))
            e1 = SpectralField.from_modes(grid64, {-1: 1.0})
            second = SpectralField.from_modes(grid64, {-2: 1.0, 0: -0.5})
            return max((Wt + 1j * eps * e1).sup(), (Qt - 1j * eps * e1 - eps ** 2 * second).sup())

        r1, r2 = residual(1e-3), residual(5e-4)
        assert r1 < 50 * 1e-3 ** 3
        assert 7.0 < r1 / r2 < 9.0


class TestModoCero:
    """Políticas de modo cero del sistema completo."""

    def test_coinciden_fuera_del_modo_cero(self, random_wave):
        a = rhs_full(random_wave, policy="appendix_a")
        b = rhs_full(random_wave, policy="projector_p")
        for fa, fb in zip(a, b):
            diff = fa - fb
            assert (diff - SpectralField.constant(diff.grid, diff.mean)).sup() < 1e-15

    def test_medias(self, random_wave):
        Wt, Qt = rhs_full(random_wave, policy="appendix_a")
        Wp, Qp = rhs_full(random_wave, policy="projector_p")
        assert Wt.mean.real == 0.0 and Qt.mean.imag == 0.0
        assert Qt.mean != 0.0
        # P toma la mitad del modo cero
        assert Wp.mean == pytest.approx(0.5 * Wt.mean, abs=1e-15)
        assert Qp.mean == pytest.approx(0.5 * Qt.mean, abs=1e-15)

    def test_politica_invalida(self, random_wave):
        with pytest.raises(ValueError):
            rhs_full(random_wave, policy="other")

    def test_evolucion(self, random_wave):
        a = b = random_wave
        for _ in range(5):
            a = step_rk4(a, 0.01, "appendix_a")
            b = step_rk4(b, 0.01, "projector_p")
            assert normalization_drift(a) == (0.0, 0.0)
        # la media de W sólo entra en la ecuación de Q a través de su modo cero
        for fa, fb in ((a.W, b.W), (a.Q, b.Q)):
            diff = fa - fb
            assert (diff - SpectralField.constant(diff.grid, diff.mean)).sup() < 1e-14
        assert abs(a.Q.mean - b.Q.mean) > 1e-12



class TestSistemasDiferenciados:
    """Consistencia entre las distintas formas del sistema."""

    def test_polinomica(self, random_wave):
        d = random_wave.diff()
        f = derive_all(random_wave)
        Wat, Rt = rhs_diff(d, f)
        Yt, Rt2 = rhs_polynomial(d, f)
        one = 1 + d.Wa
        assert (Yt - divide(Wat, one * one)).sup() < 1e-12
        assert (Rt - Rt2).sup() < 1e-12

    def test_sistema_W_alpha_R(self, random_wave):
        d = random_wave.diff()
        f = derive_all(random_wave)
        Wat, Rt = rhs_diff(d, f)
        Waat, RRt = rhs_wr_diff(d, f)
        assert (Waat - deriv(Wat)).sup() < 1e-10
        expected = deriv(Rt) * (1 + d.Wa) + f.Ra * Wat
        assert (RRt - expected).sup() < 1e-10

    def test_diferencia_finita_temporal(self, grid64):
        """Diferencia centrada de (𝐖, R) a lo largo del flujo completo frente a rhs_diff."""
        s = multi_mode(grid64, 0.05, {-1: 1.0, -2: 0.5})
        d = s.diff()
        exact = rhs_diff(d)

        def error(dt):
            forward = step_rk4(s, dt).diff()
            backward = step_rk4(s, -dt).diff()
            fd = ((forward.Wa - backward.Wa) / (2 * dt), (forward.R - backward.R) / (2 * dt))
            return _sup(fd, exact)

        ratio = error(0.02) / error(0.01)
        target, tol = ACCEPTANCE_CRITERIA["fd_ratio_time"]
        assert abs(ratio - target) < tol

    def test_paso_diferenciado(self, grid64):
        s = single_mode(grid64, 0.05, -1)
        dt = 1e-3
        direct = step_rk4(s, dt).diff()
        stepped = step_rk4_diff(s.diff(), dt)
        assert _sup((direct.Wa, direct.R), (stepped.Wa, stepped.R)) < 1e-10


class TestLinealizado:
    """Sistema linealizado alrededor de soluciones."""

    def _setup(self, grid):
        bg = multi_mode(grid, 0.05, {-1: 1.0, -3: 0.4})
        dW = HoloField.from_modes(grid, {-2: 1.0, -1: 0.3j})
        dQ = HoloField.from_modes(grid, {-2: -0.5, -4: 0.2})
        return bg, dW, dQ

    def test_derivada_direccional(self, grid64):
        bg, dW, dQ = self._setup(grid64)
        dt, n_steps = 0.01, 10

        s_tan, p = bg, LinState.from_wq(bg, dW, dQ)
        for _ in range(n_steps):
            s_tan, p = step_rk4_tangent(s_tan, p, dt)
        w, q = p.to_wq(s_tan)

        base = bg
        for _ in range(n_steps):
            base = step_rk4(base, dt)

        def error(h):
            s = WaveState(bg.W + h * dW, bg.Q + h * dQ)
            for _ in range(n_steps):
                s = step_rk4(s, dt)
            fd = ((s.W - base.W) / h, (s.Q - base.Q) / h)
            return _sup(fd, (w, q))

        ratio = error(2e-3) / error(1e-3)
        target, tol = ACCEPTANCE_CRITERIA["fd_ratio_lin"]
        assert abs(ratio - target) < tol

    @pytest.mark.parametrize("policy", ["appendix_a", "projector_p"])
    def test_variante_proyectada(self, grid64, policy):
        bg, dW, dQ = self._setup(grid64)
        p = LinState.from_wq(bg, dW, dQ)
        wt, rt = rhs_linearized(bg, p, "projected", policy)
        assert wt.positive_leakage() < 1e-14 and rt.positive_leakage() < 1e-14
        s, p2 = step_rk4_tangent(bg, p, 1e-3, "projected", policy)
        assert p2.w.grid == grid64

    def test_partes_cuadraticas(self, grid64):
        """P♯𝒢 - 𝒢⁽²⁾ es de orden ε² mientras que 𝒢⁽²⁾ es de orden ε."""
        _, dW, dQ = self._setup(grid64)
        p = LinState(dW, dQ)
        w, r = p.w, p.r

        def parts(eps):
            bg = multi_mode(grid64, eps, {-1: 1.0, -3: 0.4})
            f = derive_all(bg)
            wt, rt = rhs_linearized(bg, p, derived=f)
            # 𝒢 y 𝒦: lo que queda tras el transporte y los términos lineales en (w, r)
            G = wt + f.b * deriv(w) + (deriv(r) + f.Ra * w) * f.inv.conj()
            K = rt + f.b * deriv(r) - 1j * (((1 + f.a) * w) * f.inv)
            q = quadratic_parts(bg, p, "appendix_a")
            return (
                (project_Psharp(G) - q["G2"]).sup(),
                (project_Psharp(K) - q["K2"]).sup(),
                q["G2"].sup(),
            )

        g1, k1, n1 = parts(0.02)
        g2, k2, n2 = parts(0.01)
        assert n1 / n2 == pytest.approx(2.0, rel=0.1)
        assert 3.5 < g1 / g2 < 4.5
        assert 3.5 < k1 / k2 < 4.5

    def test_forma_conmutador(self, grid64):
        bg, dW, dQ = self._setup(grid64)
        q = quadratic_parts(bg, LinState(dW, dQ), "appendix_a")
        assert (q["G2"] - q["G2_commutator"]).sup() < 1e-14
        assert (q["K2"] - q["K2_commutator"]).sup() < 1e-14


class TestIntegrador:
    def test_orden_rk4(self, grid64):
        s0 = multi_mode(grid64, 0.1, {-1: 1.0, -2: 0.5, -3: 0.25})
        t_end = 0.8

        def solve(dt):
            s = s0
            for _ in range(int(round(t_end / dt))):
                s = step_rk4(s, dt)
            return s

        a, b, c = solve(0.1), solve(0.05), solve(0.025)
        order = np.log2(_sup((a.W, a.Q), (b.W, b.Q)) / _sup((b.W, b.Q), (c.W, c.Q)))
        target, tol = ACCEPTANCE_CRITERIA["rk4_order"]
        assert abs(order - target) < tol

    def test_conservacion_corta(self, grid64):
        s = single_mode(grid64, 0.05, -1)
        E0 = energy_E(s)
        for _ in range(100):
            s = step_rk4(s, 5e-3)
        assert abs(energy_E(s) - E0) / E0 < 1e-8

    def test_conservacion_onda_estacionaria(self, grid64):
        """Q = 0: la media de Im W oscila a orden ε² y la energía debe seguir constante."""
        s = WaveState(HoloField.from_modes(grid64, {-1: 1e-3}), HoloField.zeros(grid64))
        E0 = energy_E(s)
        for _ in range(300):
            s = step_rk4(s, 5e-3)
        assert abs(s.W.mean) > 0
        assert abs(energy_E(s) - E0) / E0 < 1e-8

    def test_error_de_fase(self, grid64):
        """El error de fase de una onda lineal decrece como dt⁴."""
        t_end = 2.0

        def phase_error(dt):
            s = single_mode(grid64, 1e-8, -1)
            c0 = s.W.coefficient(-1)
            for _ in range(int(round(t_end / dt))):
                s = step_rk4(s, dt)
            return abs(np.angle(s.W.coefficient(-1) / (c0 * np.exp(-1j * t_end))))

        order = np.log2(phase_error(0.2) / phase_error(0.1))
        target, tol = ACCEPTANCE_CRITERIA["rk4_order"]
        assert abs(order - target) < tol


class TestReversibilidad:
    """(W, Q)(t) -> (-conj W(-α, -t), -conj Q(-α, -t)) es una simetría del sistema."""

    def test_lado_derecho(self, grid64):
        s = multi_mode(grid64, 0.05, {-1: 1.0, -2: 0.5, -3: 0.25})
        Wt, Qt = rhs_full(s)
        Wr, Qr = rhs_full(_reversed(s))
        assert _sup((Wr, Qr), (_reflect(Wt), _reflect(Qt))) < 1e-14

    def test_ida_y_vuelta(self, grid64):
        s0 = multi_mode(grid64, 0.05, {-1: 1.0, -2: 0.5, -3: 0.25})
        s = s0
        for _ in range(50):
            s = step_rk4(s, 0.01)
        back = _reversed(s)
        for _ in range(50):
            back = step_rk4(back, 0.01)
        back = _reversed(back)
        assert _sup((back.W, back.Q), (s0.W, s0.Q)) < 1e-9
        assert _sup((s.W, s.Q), (s0.W, s0.Q)) > 1e-3


    @pytest.mark.slow
    def test_conservacion_aceptacion(self):
        cfg = SimConfig(n_modes=256, dt=1e-3, t_end=10.0, output_every=1000)
        s0 = single_mode(cfg.grid(), 0.05, -1)
        result = run(s0, cfg)
        E = np.array([r.E for r in result.records])
        assert np.max(np.abs(E - E[0])) / E[0] < ACCEPTANCE_CRITERIA["energy_drift"]


class TestRun:
    """Bucle de simulación, guardia CFL y detección de explosión."""

    def test_plano_constante(self, grid64):
        cfg = SimConfig(n_modes=64, dt=0.01, t_end=0.1, output_every=5)
        result = run(WaveState.flat(grid64), cfg)
        assert result.steps == 10
        assert len(result.records) == 3
        for r in result.records:
            assert r.E == 0.0 and r.E0 == 0.0 and r.normA == 0.0
            assert r.min1plusA == 1.0

    def test_registros_y_sumidero(self, linear_wave):
        cfg = SimConfig(n_modes=64, dt=0.01, t_end=0.05, output_every=2)
        seen, states = [], []
        result = run(linear_wave, cfg, sink=seen.append, on_snapshot=states.append)
        assert len(seen) == len(result.records) == 4
        assert [round(s.t, 10) for s in states] == [0.0, 0.02, 0.04, 0.05]
        assert all(r.is_finite() for r in seen)

    def test_explosion(self, linear_wave, monkeypatch):
        monkeypatch.setitem(BLOWUP_CONFIG, "max_sup_Wa", 0.01)
        cfg = SimConfig(n_modes=64, dt=0.01, t_end=1.0)
        with pytest.raises(BlowUpError) as info:
            run(linear_wave, cfg, diagnostics=False)
        assert info.value.last_good_time == 0.0
        assert info.value.last_good_state is linear_wave

    def test_cfl(self, linear_wave, caplog):
        assert cfl_number(linear_wave, 1.0) > 0.5
        cfg = SimConfig(n_modes=64, dt=0.2, t_end=0.2)
        with caplog.at_level(logging.WARNING, logger="src.waves.dynamics"):
            try:
                run(linear_wave, cfg, diagnostics=False)
            except BlowUpError:
                pass
        assert any("CFL" in rec.message for rec in caplog.records)

    def test_determinista(self, grid64):
        s = random_state(grid64, np.random.default_rng([3, 1]))
        a, b = step_rk4(s, 0.01), step_rk4(s, 0.01)
        assert np.array_equal(a.W.coeffs, b.W.coeffs)

    def test_c_min_en_las_etapas(self, monkeypatch):
        """min|1 + 𝐖| = 0.4: la cota de SimConfig llega a derive_all en cada etapa."""
        s = single_mode(Grid(256), 0.6, -1)
        with pytest.raises(DegenerateSurfaceError):
            step_rk4(s, 1e-3, c_min=0.5)
        assert step_rk4(s, 1e-3).t == pytest.approx(1e-3)

        monkeypatch.setitem(SIM_CONFIG, "c_min", 0.5)
        with pytest.raises(DegenerateSurfaceError):
            step_rk4(s, 1e-3)
        assert step_rk4(s, 1e-3, c_min=0.3).t == pytest.approx(1e-3)
        assert cfl_number(s, 1e-3, c_min=0.3) > 0

        cfg = SimConfig(n_modes=256, dt=1e-3, t_end=3e-3, c_min=0.3)
        assert run(s, cfg, diagnostics=False).steps == 3
