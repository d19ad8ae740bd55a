"""
Pruebas de estados, campos derivados, libro de identidades, superficies gráficas e instantáneas.
"""

from dataclasses import replace

import numpy as np
import pytest

from src.errors import DegenerateSurfaceError, GridMismatchError, SteepSurfaceError
from src.spectral.grid import Grid, HoloField, SpectralField
from src.spectral.operators import deriv
from src.waves.snapshots import load_snapshot, save_snapshot, snapshot_name
from src.waves.state import (
    DiffState,
    WaveState,
    derive_all,
    derive_diff,
    evaluate_series,
    from_graph_surface,
    kinematic_residual,
    normalization_drift,
    pressure_normal_derivative,
    taylor_sign,
    verify_identities,
)


class TestWaveState:
    def test_plano(self, grid64):
        s = WaveState.flat(grid64)
        d = derive_all(s)
        for f in (d.Y, d.F, d.R, d.a, d.b, d.M, d.RR, d.Wa):
            assert f.sup() == 0.0
        assert np.allclose(d.J.values, 1.0)

    def test_mallas_distintas(self):
        W = HoloField.zeros(Grid(16))
        Q = HoloField.zeros(Grid(32))
        with pytest.raises(GridMismatchError):
            WaveState(W, Q)

    def test_cuerda_arco(self, grid64):
        W = HoloField.from_modes(grid64, {-1: 0.95j})
        with pytest.raises(DegenerateSurfaceError) as info:
            derive_all(WaveState(W, HoloField.zeros(grid64)))
        assert info.value.min_modulus == pytest.approx(0.05, abs=1e-10)

    def test_diferenciado(self, random_wave):
        d = random_wave.diff()
        assert (d.Wa - deriv(random_wave.W)).sup() == 0.0
        residual = (d.R * (1 + d.Wa) - deriv(random_wave.Q)).sup()
        assert residual < 1e-13

    def test_normalizacion(self, random_wave):
        assert normalization_drift(random_wave) == (0.0, 0.0)


class TestCamposDerivados:
    """Campos derivados de (𝐖, R)."""

    def test_a_de_modo_unico(self, grid64):
        eps, k = 0.1, 3
        d = DiffState(HoloField.zeros(grid64), HoloField.from_modes(grid64, {-k: eps}))
        f = derive_diff(d)
        assert np.allclose(f.a.values.real, k * eps ** 2, atol=1e-14)

    def test_realidad(self, random_wave):
        d = derive_all(random_wave)
        for f in (d.a, d.b, d.M, d.J):
            assert np.max(np.abs(f.values.imag)) < 1e-12

    def test_holomorfos(self, random_wave):
        d = derive_all(random_wave)
        for f in (d.Y, d.F, d.RR):
            assert f.positive_leakage() == 0.0

    def test_signo_de_taylor(self, random_waves):
        for s in random_waves:
            assert taylor_sign(s) >= 1 - 1e-10

    def test_presion_normal(self, grid64, random_wave):
        assert np.allclose(pressure_normal_derivative(WaveState.flat(grid64)).values, 1.0)
        d = derive_all(random_wave)
        p = pressure_normal_derivative(random_wave, d)
        assert (p * d.J - (1 + d.a)).sup() < 1e-12

    def test_condicion_cinematica(self, random_wave):
        assert kinematic_residual(random_wave) < 1e-10

    def test_escala_en_la_amplitud(self, random_wave):
        """b y F son lineales más cuadráticos en la amplitud; a empieza en orden dos."""

        def fields(lam):
            return derive_all(WaveState(lam * random_wave.W, lam * random_wave.Q))

        one, half, quarter, two = fields(1.0), fields(0.5), fields(0.25), fields(2.0)
        for name in ("b", "F"):
            # f(λ) - 2f(λ/2) elimina la parte lineal
            defect = (getattr(one, name) - 2 * getattr(half, name)).sup()
            defect_half = (getattr(half, name) - 2 * getattr(quarter, name)).sup()
            assert defect / defect_half == pytest.approx(4.0, rel=0.1)
        assert two.a.sup() / one.a.sup() == pytest.approx(4.0, rel=0.1)



class TestIdentidades:
    """Libro de identidades sobre estados aleatorios."""

    def test_todas_pasan(self, random_waves):
        for s in random_waves:
            report = verify_identities(s)
            assert report.passed, report.flagged
            assert max(report.residuals.values()) < 1e-10

    def test_variante_impresa_solo_se_informa(self, random_waves):
        report = verify_identities(random_waves[0])
        assert "a_printed_real_form" in report.reported
        assert "a_printed_real_form" not in report.flagged
        assert "reported_a_printed_real_form" in report.to_dict()

    def test_b_alterado(self, random_wave):
        d = derive_all(random_wave)
        bump = SpectralField.from_modes(d.b.grid, {-1: 1e-3, 1: 1e-3})
        report = verify_identities(random_wave, derived=replace(d, b=d.b + bump))
        assert "b_F" in report.flagged
        assert not report.passed


class TestSuperficieGrafica:
    """Construcción de estados a partir de y = η(x)."""

    def test_coseno(self, grid64):
        eta = SpectralField.from_modes(grid64, {1: 0.01, -1: 0.01})
        s = from_graph_surface(eta, SpectralField.zeros(grid64))
        X = grid64.nodes + s.W.values.real
        Y = s.W.values.imag
        assert np.max(np.abs(Y - evaluate_series(eta, X).real)) < 1e-11

    def test_potencial(self, grid64):
        eta = SpectralField.from_modes(grid64, {1: 0.02, -1: 0.02})
        psi = SpectralField.from_modes(grid64, {2: 0.01j, -2: -0.01j})
        s = from_graph_surface(eta, psi)
        X = grid64.nodes + s.W.values.real
        assert np.max(np.abs(s.Q.values.real - evaluate_series(psi, X).real)) < 1e-11

    def test_demasiado_empinada(self, grid64):
        eta = SpectralField.from_modes(grid64, {3: 0.1, -3: 0.1})
        with pytest.raises(SteepSurfaceError):
            from_graph_surface(eta, SpectralField.zeros(grid64))


class TestInstantaneas:
    def test_nombre(self):
        assert snapshot_name(1.5) == "t_00001.500000.bin"

    def test_guardar_y_cargar(self, tmp_path, random_wave):
        path = save_snapshot(tmp_path / "s.bin", random_wave, {"config_hash": "abc"})
        state, header = load_snapshot(path)
        assert np.array_equal(state.W.coeffs, random_wave.W.coeffs)
        assert np.array_equal(state.Q.coeffs, random_wave.Q.coeffs)
        assert header["provenance"]["config_hash"] == "abc"
        assert header["n_modes"] == 64

    def test_archivo_truncado(self, tmp_path, random_wave):
        path = save_snapshot(tmp_path / "s.bin", random_wave)
        data = path.read_bytes()
        path.write_bytes(data[:-8])
        with pytest.raises(GridMismatchError):
            load_snapshot(path)
