import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsk import representations as R
from gsk import transforms as T
from gsk.errors import (DimensionMismatchError, DomainError, InadmissibleWindowError,
                        MarginalUndefinedError)
from gsk.verify import band_limited_noise, cwt_round_trip_error, shearlet_fixture, stockwell_marginal_error


def tone(freq, n=256, dt=1 / 128, t0=0.0):
    return T.Signal1D(np.cos(2 * np.pi * freq * (t0 + dt * np.arange(n))), dt, t0)


# -- windows and admissibility ---------------------------------------------


def test_mexican_hat_admissibility():
    assert T.admissibility_constant(T.WindowSpec(T.MEXICAN_HAT)) == pytest.approx(0.5, abs=1e-8)


def test_gaussian_inadmissible():
    with pytest.raises(InadmissibleWindowError):
        T.admissibility_constant(T.WindowSpec(T.GAUSSIAN))


def test_morlet_admissibility_refines():
    w = T.WindowSpec(T.MORLET, 6.0)
    c1 = T.admissibility_constant(w)
    c2 = T.admissibility_constant(w, panels=800, order=16)
    assert c1 > 0 and abs(c1 - c2) <= 1e-6


@pytest.mark.parametrize("family", T.FAMILIES)
def test_window_time_and_frequency_forms_agree(family):
    w = T.WindowSpec(family, width=1.3)
    t = np.linspace(-60, 60, 2 ** 16, endpoint=False)
    dt = t[1] - t[0]
    x = w.time(t)
    p = np.linspace(-60, 60, 2 ** 16, endpoint=False)
    freq_norm = np.sum(np.abs(w.freq(p)) ** 2) * (p[1] - p[0])
    # Morlet and Gaussian are unit vectors; the Mexican hat has norm^2 sqrt(pi)/4
    assert freq_norm == pytest.approx(math.sqrt(math.pi) / 4 if family == T.MEXICAN_HAT else 1.0, rel=1e-9)
    # Plancherel; the Mexican-hat time tail decays like 1/t^2 and is cut at |t| = 60
    assert np.sum(np.abs(x) ** 2) * dt == pytest.approx(freq_norm, rel=1e-5)
    # unitary Fourier transform at a few frequencies, by direct summation
    if family == T.MEXICAN_HAT:
        t = np.linspace(-2000, 2000, 2 ** 22, endpoint=False)
        dt = t[1] - t[0]
        x = w.time(t)
    for p in (0.5, 2.0, w.peak_frequency):
        ft = np.sum(x * np.exp(-1j * p * t)) * dt / math.sqrt(2 * math.pi)
        assert abs(ft - w.freq(p)) <= 1e-6


def test_unknown_family():
    with pytest.raises(DomainError):
        T.WindowSpec("haar")


# -- CWT ----------------------------------------------------------------------


def test_cwt_round_trip_noise():
    assert cwt_round_trip_error(seed=11) <= 1e-2


def test_cwt_round_trip_cosine():
    n, dt = 1024, 1 / 256
    x = T.Signal1D(np.cos(2 * np.pi * 5 * dt * np.arange(n)), dt)
    w = T.WindowSpec(T.MORLET)
    rec = T.cwt_synthesize(T.cwt(x, w, T.scale_grid(w, 0.5, 100, 64)))
    assert T.relative_l2_error(rec.samples, x.samples) <= 1e-2


def test_cwt_argmax_tracks_frequency():
    n, dt = 1024, 1 / 256
    x = T.Signal1D(np.cos(2 * np.pi * 5 * dt * np.arange(n)), dt)
    w = T.WindowSpec(T.MORLET, 6.0)
    # 33 log-spaced tuned frequencies from 2.5 to 10 Hz put 5 Hz exactly on bin 16
    scales = T.scale_grid(w, 2.5, 10.0, 33)
    target = int(np.argmin(np.abs(scales - 6.0 / (2 * math.pi * 5))))
    assert target == 16
    peaks = np.argmax(np.abs(T.cwt(x, w, scales).values), axis=0)
    interior = peaks[n // 8: -n // 8]
    assert np.mean(interior == target) >= 0.9


def test_cwt_zero_signal_and_zero_coefficients():
    z = T.Signal1D(np.zeros(128), 0.01)
    c = T.cwt(z)
    assert not np.any(c.values)
    assert not np.any(T.cwt_synthesize(c).samples)


def test_cwt_synthesis_rejects_inadmissible():
    c = T.cwt(tone(8.0), T.WindowSpec(T.GAUSSIAN, 5.0))
    with pytest.raises(InadmissibleWindowError):
        T.cwt_synthesize(c)


def test_cwt_bad_scales():
    with pytest.raises(DomainError):
        T.cwt(tone(8.0), scales=[1.0, -1.0])
    with pytest.raises(DomainError):
        T.scale_grid(T.WindowSpec(), 10.0, 1.0, 8)


def test_cwt_boundary_modes_agree_in_interior():
    x = tone(8.0, n=512)
    a = T.cwt(x, boundary=T.PERIODIC).values
    b = T.cwt(x, boundary=T.ZERO).values
    small = T.cwt(x).axis("scale") < 0.1
    np.testing.assert_allclose(a[small, 128:-128], b[small, 128:-128], atol=1e-9)
    with pytest.raises(DomainError):
        T.cwt(x, boundary="reflect")


@settings(max_examples=20)
@given(st.integers(0, 255), st.integers(0, 2 ** 31))
def test_cwt_translation_covariance(k, seed):
    x = T.Signal1D(np.random.default_rng(seed).normal(size=256), 1 / 64)
    scales = T.scale_grid(T.WindowSpec(), 2.0, 20.0, 6)
    a = T.cwt(x, scales=scales).values
    b = T.cwt(T.Signal1D(np.roll(x.samples, k), x.dt), scales=scales).values
    np.testing.assert_allclose(b, np.roll(a, k, axis=1), atol=1e-12)


@pytest.mark.parametrize("kind", [T.CWT, T.STFT, T.STOCKWELL])
@settings(max_examples=15)
@given(st.complex_numbers(max_magnitude=3), st.complex_numbers(max_magnitude=3), st.integers(0, 2 ** 31))
def test_linearity(kind, alpha, beta, seed):
    rng = np.random.default_rng(seed)
    x, y = rng.normal(size=128), rng.normal(size=128) + 1j * rng.normal(size=128)
    cx, cy, cz = (T.analyze(kind, T.Signal1D(s, 1 / 32)).values for s in (x, y, alpha * x + beta * y))
    np.testing.assert_allclose(cz, alpha * cx + beta * cy, atol=1e-10 * max(1, np.max(np.abs(cz))))


@pytest.mark.parametrize("kind", [T.CWT, T.STFT, T.STOCKWELL])
def test_zero_signal(kind):
    assert not np.any(T.analyze(kind, T.Signal1D(np.zeros(64), 0.1)).values)


def test_thread_count_does_not_change_results(monkeypatch):
    x = T.Signal1D(band_limited_noise(512, 1 / 128, 1, 30, 4), 1 / 128)
    out = {}
    for k in ("1", "3"):
        monkeypatch.setenv("GSK_THREADS", k)
        assert T.n_threads() == int(k)
        out[k] = [T.cwt(x).values, T.stft(x).values, T.stockwell(x).values]
    for a, b in zip(out["1"], out["3"]):
        assert np.array_equal(a, b)


# -- STFT ---------------------------------------------------------------------


def test_stft_energy_identity():
    x = T.Signal1D(band_limited_noise(1024, 1 / 256, 1.0, 100.0, 2), 1 / 256)
    c = T.stft(x)
    assert c.values.shape[1] == c.axis("frequency").size
    assert T.stft_energy(c) == pytest.approx(x.norm() ** 2, rel=1e-2)


def test_stft_peak_at_tone():
    c = T.stft(tone(20.0, n=512))
    f = c.axis("frequency")
    row = np.abs(c.values[c.values.shape[0] // 2])
    assert abs(abs(f[np.argmax(row)]) - 20.0) <= f[1] - f[0]


def test_stft_bad_hop():
    with pytest.raises(DomainError):
        T.stft(tone(8.0), hop=0)


# -- Stockwell ----------------------------------------------------------------


def test_stockwell_marginal_matches_dft():
    assert stockwell_marginal_error() <= 1e-6


def test_stockwell_row_count_and_peak():
    S = T.stockwell(tone(8.0), n_freq=64)
    nu = S.axis("frequency")
    assert nu.size == 64
    assert nu[np.argmax(np.max(np.abs(S.values), axis=1))] == 8.0


def test_stockwell_mean_row():
    x = tone(8.0)
    S = T.stockwell(T.Signal1D(x.samples + 0.25, x.dt), n_freq=32)
    np.testing.assert_allclose(S.values[0], 0.25, atol=1e-12)


def test_stockwell_two_tones_two_conjugate_pairs():
    n, dt = 256, 1 / 128
    t = dt * np.arange(n)
    x = T.Signal1D(np.cos(2 * np.pi * 8 * t) + np.cos(2 * np.pi * 20 * t), dt)
    nu = np.arange(-n // 2, n // 2) / (n * dt)
    m = T.stockwell_time_marginal(T.stockwell(x, freqs=nu))
    peaks = set(nu[np.abs(m) > 1e-6 * np.max(np.abs(m))])
    assert peaks == {-20.0, -8.0, 8.0, 20.0}
    np.testing.assert_allclose(m[nu == 8.0], np.conj(m[nu == -8.0]), atol=1e-12)


def test_stockwell_zero_marginal():
    m = T.stockwell_time_marginal(T.stockwell(T.Signal1D(np.zeros(64), 0.1)))
    assert not np.any(m)


def test_stockwell_partial_coverage():
    S = T.stockwell(tone(8.0), n_freq=16)
    part = T.CoefficientGrid(S.kind, (S.axes[0], (S.axes[1][0], S.axes[1][1][:100])),
                             S.values[:, :100], S.meta)
    with pytest.raises(MarginalUndefinedError):
        T.stockwell_time_marginal(part)


# -- shearlet -----------------------------------------------------------------


def test_shearlet_two_paths_agree():
    field, window, grid = shearlet_fixture(48, 16)
    a = T.shearlet(field, window, grid, "symbolic").values
    b = T.shearlet(field, window, grid, "pointwise").values
    assert np.max(np.abs(a - b)) <= 1e-10 * max(1.0, np.max(np.abs(a)))
    assert np.max(np.abs(a)) > 0.1


def test_shearlet_zero_field():
    field, window, grid = shearlet_fixture(16, 4)
    z = T.Field2D(np.zeros_like(field.values), field.E, field.p)
    assert not np.any(T.shearlet(z, window, grid).values)


def test_shearlet_rejects_bad_inputs():
    field, window, grid = shearlet_fixture(16, 4)
    with pytest.raises(DimensionMismatchError):
        T.shearlet(field, R.AnalyticVector.gaussian(0.0), grid)
    with pytest.raises(DomainError):
        T.ShearletGrid(("a", [0.0]), ("a", [1.0]))
    with pytest.raises(DomainError):
        T.Field2D(np.zeros((3, 3)), [0, 1, 3], [0, 1, 2])


def test_analyze_dispatch_errors():
    with pytest.raises(DomainError):
        T.analyze("wigner", tone(1.0))
    with pytest.raises(DomainError):
        T.analyze(T.SHEARLET, tone(1.0))


def test_signal_validation():
    with pytest.raises(DomainError):
        T.Signal1D(np.array([1.0]))
    with pytest.raises(DomainError):
        T.Signal1D(np.array([1.0, math.nan]))
    with pytest.raises(DomainError):
        T.Signal1D(np.zeros(4), dt=0.0)
