"""Signal transforms as matrix coefficients g -> <U(g) psi, f>.

All coefficient maps use direct quadrature over the samples; no FFT.
Signals are treated as one period of a periodic signal by default
(``boundary="periodic"``), in which case analysis kernels are periodized by
summing their translates by the record length. ``boundary="zero"`` instead
treats the signal as zero outside the record.

Conventions (unitary Fourier transform, time t in seconds, frequency in Hz):

* CWT        W(b, s)   = int conj(s^{-1/2} psi((t - b)/s)) f(t) dt, i.e. the
                         wavelet representation at a = -b, sigma = ln s.
* STFT       V(tau, nu) = int f(t) conj(g(t - tau)) e^{-2 pi i nu t} dt, i.e. the
                         Heisenberg representation (s = 1) at q = 2 pi nu, p = -tau.
* Stockwell  S(tau, nu) = |nu| / sqrt(2 pi) int f(t) e^{-(t - tau)^2 nu^2 / 2}
                         e^{-2 pi i nu t} dt, computed from the Stockwell-group
                         coefficient G = <U_SW(0, 2 pi |nu|, -tau) psi, f> as
                         S = |nu| (2 pi)^{-1/2} gamma^{-1/2} e^{-i (gamma + 2 pi nu) tau} G
                         with psi(x) = e^{+-ix} e^{-x^2 / (8 pi^2)}; S(tau, 0) is the mean.
* Shearlet   coefficients of the shearlet representation on sampled fields
             F(E, p); this is a transform on the (E, p) plane, not on images.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import wofz

from . import groups as G
from . import representations as R
from .errors import (DimensionMismatchError, DomainError, InadmissibleWindowError,
                     MarginalUndefinedError)
from .quadrature import composite_gauss_legendre

CWT = "CWT"
STFT = "STFT"
STOCKWELL = "STOCKWELL"
SHEARLET = "SHEARLET"
KINDS = (CWT, STFT, STOCKWELL, SHEARLET)

MORLET = "MORLET"
MEXICAN_HAT = "MEXICAN_HAT"
GAUSSIAN = "GAUSSIAN"
FAMILIES = (MORLET, MEXICAN_HAT, GAUSSIAN)

PERIODIC = "periodic"
ZERO = "zero"

_BLOCK = 128
_PI4 = math.pi ** -0.25


def n_threads() -> int:
    """Worker count; GSK_THREADS caps it."""
    env = os.environ.get("GSK_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _map_rows(fn, items):
    items = list(items)
    k = min(n_threads(), len(items))
    if k <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(k) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# data


@dataclass(frozen=True)
class Signal1D:
    samples: np.ndarray
    dt: float = 1.0
    t0: float = 0.0

    def __post_init__(self):
        x = np.asarray(self.samples)
        x = x.astype(complex if np.iscomplexobj(x) else float)
        if x.ndim != 1 or x.size < 2:
            raise DomainError("a signal needs at least two samples")
        if not np.all(np.isfinite(x)):
            raise DomainError("signal contains non-finite samples")
        if not (self.dt > 0 and math.isfinite(self.dt)) or not math.isfinite(self.t0):
            raise DomainError(f"invalid sampling dt={self.dt}, t0={self.t0}")
        x.setflags(write=False)
        object.__setattr__(self, "samples", x)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "t0", float(self.t0))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def duration(self) -> float:
        return self.n * self.dt

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def is_real(self) -> bool:
        return not np.iscomplexobj(self.samples)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.dt))


@dataclass(frozen=True)
class Field2D:
    """Samples F[i, j] = F(E_i, p_j) on a uniform grid of the (E, p) plane."""
    values: np.ndarray
    E: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        E = np.asarray(self.E, dtype=float)
        p = np.asarray(self.p, dtype=float)
        if v.shape != (E.size, p.size):
            raise DimensionMismatchError(f"field shape {v.shape} vs axes ({E.size}, {p.size})")
        for ax in (E, p):
            if ax.size < 2 or not np.allclose(np.diff(ax), ax[1] - ax[0], rtol=1e-9, atol=0):
                raise DomainError("field axes must be uniform with at least two points")
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "p", p)

    @property
    def cell(self) -> float:
        return float((self.E[1] - self.E[0]) * (self.p[1] - self.p[0]))

    def points(self) -> np.ndarray:
        return np.stack(np.meshgrid(self.E, self.p, indexing="ij"), axis=-1)


@dataclass(frozen=True)
class WindowSpec:
    """Analyzing vector; ``time`` and ``freq`` are related by the unitary Fourier transform.

    MORLET: psi(t) = pi^{-1/4} (e^{i w0 t} - e^{-w0^2/2}) e^{-t^2/2}, w0 = center.
    MEXICAN_HAT: psi^(p) = p e^{-p^2/2} for p > 0 and 0 otherwise.
    GAUSSIAN: psi(t) = pi^{-1/4} e^{i c t} e^{-t^2/2}, c = center.
    ``width`` dilates the mother function, psi_w(t) = w^{-1/2} psi(t / w).
    """
    family: str = MORLET
    center: float | None = None
    width: float = 1.0

    def __post_init__(self):
        fam = self.family.upper().replace("-", "_")
        if fam not in FAMILIES:
            raise DomainError(f"unknown window family {self.family!r}")
        object.__setattr__(self, "family", fam)
        if self.center is None:
            object.__setattr__(self, "center", 6.0 if fam == MORLET else 0.0)
        if not (self.width > 0 and math.isfinite(self.width)):
            raise DomainError("window width must be positive")

    def time(self, t) -> np.ndarray:
        w = self.width
        x = np.asarray(t, dtype=float) / w
        if self.family == MORLET:
            c = self.center
            v = _PI4 * (np.exp(1j * c * x) - math.exp(-0.5 * c * c)) * np.exp(-0.5 * x * x)
        elif self.family == GAUSSIAN:
            v = _PI4 * np.exp(1j * self.center * x - 0.5 * x * x)
        else:
            v = (1.0 + 1j * x * math.sqrt(math.pi / 2) * wofz(x / math.sqrt(2))) / math.sqrt(2 * math.pi)
        return v / math.sqrt(w)

    def freq(self, p) -> np.ndarray:
        w = self.width
        x = np.asarray(p, dtype=float) * w
        if self.family == MORLET:
            c = self.center
            v = _PI4 * (np.exp(-0.5 * (x - c) ** 2) - math.exp(-0.5 * c * c) * np.exp(-0.5 * x * x))
        elif self.family == GAUSSIAN:
            v = _PI4 * np.exp(-0.5 * (x - self.center) ** 2)
        else:
            v = np.where(x > 0, x * np.exp(-0.5 * x * x), 0.0)
        return v * math.sqrt(w)

    @property
    def peak_frequency(self) -> float:
        """Angular frequency the mother window is tuned to, for scale <-> Hz conversion."""
        return (1.0 if self.family == MEXICAN_HAT else self.center) / self.width

    @property
    def time_support(self) -> float:
        # the Mexican-hat analog decays like t^-2; it is cut at 200 widths
        return (9.0 if self.family != MEXICAN_HAT else 200.0) * self.width

    @property
    def freq_support(self) -> float:
        return (abs(self.center) + 40.0 if self.family != MEXICAN_HAT else 40.0) / self.width


@dataclass
class CoefficientGrid:
    kind: str
    axes: tuple[tuple[str, np.ndarray], ...]
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown transform kind {self.kind!r}")
        shape = tuple(np.asarray(a).size for _, a in self.axes)
        if self.values.shape != shape:
            raise DimensionMismatchError(f"values {self.values.shape} vs axes {shape}")

    def axis(self, name: str) -> np.ndarray:
        return dict(self.axes)[name]


# ---------------------------------------------------------------------------
# lag kernels


def _check_boundary(boundary: str) -> str:
    if boundary not in (PERIODIC, ZERO):
        raise DomainError(f"boundary must be {PERIODIC!r} or {ZERO!r}")
    return boundary


def _lag_kernel(fn, n: int, dt: float, support: float, boundary: str) -> np.ndarray:
    """Kernel values on the lags used by :func:`_correlate`.

    Periodic: index j holds the periodized kernel at lag j dt.
    Zero: index j holds the kernel at lag (j - n + 1) dt.
    """
    if boundary == ZERO:
        return fn(dt * np.arange(-(n - 1), n))
    T = n * dt
    lags = dt * np.arange(n)
    images = int(math.ceil(support / T)) + 1
    out = np.zeros(n, dtype=complex)
    for i in range(-images, images + 1):
        out += fn(lags + i * T)
    return out


def _correlate(kernel: np.ndarray, x: np.ndarray, boundary: str, sign: int = 1) -> np.ndarray:
    """y[n] = sum_m kernel[lag(sign (m - n))] x[m], in fixed row blocks.

    Rows of the circulant (periodic) or Toeplitz (zero) matrix are read as
    strided windows of the kernel, so each block is one elementwise product
    and one fixed-order sum.
    """
    n = x.size
    if boundary == PERIODIC:
        if sign < 0:
            kernel = kernel[(-np.arange(n)) % n]
        win = sliding_window_view(np.concatenate([kernel, kernel]), n)
        first = n
    else:
        if sign < 0:
            kernel = kernel[::-1]
        win = sliding_window_view(kernel, n)
        first = n - 1
    out = np.empty(n, dtype=complex)
    for start in range(0, n, _BLOCK):
        rows = np.arange(start, min(start + _BLOCK, n))
        out[rows] = np.sum(win[first - rows] * x, axis=1)
    return out


# ---------------------------------------------------------------------------
# CWT


def scale_grid(window: WindowSpec, f_min: float, f_max: float, n: int) -> np.ndarray:
    """Log-uniform scales whose tuned frequencies span [f_min, f_max] Hz, ascending."""
    if not (0 < f_min < f_max) or n < 2:
        raise DomainError("scale grid needs 0 < f_min < f_max and n >= 2")
    w = window.peak_frequency
    return np.exp(np.linspace(math.log(w / (2 * math.pi * f_max)),
                              math.log(w / (2 * math.pi * f_min)), n))


def default_scales(signal: Signal1D, window: WindowSpec, n: int = 64) -> np.ndarray:
    return scale_grid(window, 1.0 / signal.duration, 0.5 / signal.dt, n)


def cwt(signal: Signal1D, window: WindowSpec | None = None, scales=None,
        boundary: str = PERIODIC) -> CoefficientGrid:
    window = window or WindowSpec(MORLET)
    boundary = _check_boundary(boundary)
    scales = default_scales(signal, window) if scales is None else np.asarray(scales, dtype=float)
    if scales.size == 0 or np.any(scales <= 0):
        raise DomainError("scales must be a non-empty array of positive numbers")
    f, dt, n = signal.samples, signal.dt, signal.n

    def row(s):
        ker = _lag_kernel(lambda t: window.time(t / s) / math.sqrt(s), n, dt,
                          s * window.time_support, boundary)
        return dt * _correlate(np.conj(ker), f, boundary)

    values = np.array(_map_rows(row, scales))
    return CoefficientGrid(CWT, (("scale", scales), ("time", signal.times)), values,
                           {"dt": dt, "t0": signal.t0, "boundary": boundary,
                            "real": signal.is_real, "window": window})


def admissibility_constant(window: WindowSpec, panels: int = 400, order: int = 16) -> float:
    """c_psi = int_0^inf |psi^(p)|^2 / p dp."""
    peak = float(np.max(np.abs(window.freq(np.linspace(0, window.freq_support, 4001))) ** 2))
    if abs(window.freq(1e-12)) ** 2 > 1e-12 * peak:
        raise InadmissibleWindowError(f"{window.family} window: |psi^(p)|^2 / p diverges at p = 0")
    x, w = composite_gauss_legendre(0.0, window.freq_support, panels, order)
    return float(np.sum(np.abs(window.freq(x)) ** 2 / x * w))


def cwt_synthesize(coeffs: CoefficientGrid, window: WindowSpec | None = None) -> Signal1D:
    """Inverse CWT by the resolution of the identity on the scale grid of ``coeffs``.

    Returns f_+ (the part of f on the window's frequency half-line); for real
    input the real signal 2 Re f_+ is returned.
    """
    if coeffs.kind != CWT:
        raise DomainError("synthesis is defined for CWT coefficients only")
    window = window or coeffs.meta["window"]
    c_psi = admissibility_constant(window)
    scales = coeffs.axis("scale")
    times = coeffs.axis("time")
    dt, boundary = coeffs.meta["dt"], coeffs.meta["boundary"]
    n = times.size
    if scales.size < 2:
        raise DomainError("synthesis needs at least two scales")
    du = np.gradient(np.log(scales))

    def row(k):
        s = scales[k]
        ker = _lag_kernel(lambda t: window.time(t / s) / math.sqrt(s), n, dt,
                          s * window.time_support, boundary)
        return (du[k] / s) * dt * _correlate(ker, coeffs.values[k], boundary, sign=-1)

    parts = _map_rows(row, range(scales.size))
    f_plus = np.sum(np.array(parts), axis=0) / (2 * math.pi * c_psi)
    out = 2 * f_plus.real if coeffs.meta.get("real", True) else f_plus
    return Signal1D(out, dt, coeffs.meta["t0"])


def relative_l2_error(x: np.ndarray, ref: np.ndarray) -> float:
    x, ref = np.asarray(x), np.asarray(ref)
    den = math.sqrt(np.sum(np.abs(ref) ** 2))
    num = math.sqrt(np.sum(np.abs(x - ref) ** 2))
    return num / den if den > 0 else num


# ---------------------------------------------------------------------------
# STFT


def default_stft_grid(signal: Signal1D, sigma_t: float | None = None, hop: int | None = None,
                      n_freq: int | None = None):
    """Gaussian width, hop (samples) and frequency grid for the energy identity.

    The window std is 32 samples (capped at N/8), the hop half of that, and the
    frequency spacing 1/(8 std) across [-fs/2, fs/2).
    """
    n, dt = signal.n, signal.dt
    sigma_t = sigma_t if sigma_t is not None else dt * max(1.0, min(32.0, n / 8.0))
    hop = hop if hop is not None else max(1, int(sigma_t / dt) // 2)
    fs = 1.0 / dt
    if n_freq is None:
        n_freq = max(2, int(math.ceil(8 * sigma_t * fs)))
    freqs = -0.5 * fs + fs * np.arange(n_freq) / n_freq
    return sigma_t, hop, freqs


def stft(signal: Signal1D, sigma_t: float | None = None, hop: int | None = None,
         freqs=None, n_freq: int | None = None, boundary: str = PERIODIC,
         window: WindowSpec | None = None) -> CoefficientGrid:
    boundary = _check_boundary(boundary)
    sigma_t, hop, default_f = default_stft_grid(signal, sigma_t, hop, n_freq)
    if hop < 1:
        raise DomainError("hop must be at least one sample")
    freqs = default_f if freqs is None else np.asarray(freqs, dtype=float)
    window = window or WindowSpec(GAUSSIAN, 0.0, sigma_t)
    f, dt, n, t = signal.samples, signal.dt, signal.n, signal.times
    starts = np.arange(0, n, hop)
    taus = t[starts]
    lags = _lag_kernel(window.time, n, dt, window.time_support, boundary)
    g_norm_sq = float(np.sum(np.abs(lags) ** 2) * dt) if boundary == PERIODIC else float(
        np.sum(np.abs(window.time(t - t.mean())) ** 2) * dt)
    phase = np.exp(-2j * math.pi * np.outer(t, freqs))

    def row(k):
        m = np.arange(n)
        lag = m - k
        g = lags[lag % n] if boundary == PERIODIC else lags[lag + n - 1]
        h = np.conj(g) * f
        return dt * np.sum(h[:, None] * phase, axis=0)

    values = np.array(_map_rows(row, starts))
    return CoefficientGrid(STFT, (("time", taus), ("frequency", freqs)), values,
                           {"dt": dt, "t0": signal.t0, "hop": hop, "sigma_t": sigma_t,
                            "window_norm_sq": g_norm_sq, "boundary": boundary})


def stft_energy(coeffs: CoefficientGrid) -> float:
    """sum |V|^2 dtau dnu / ||g||^2, which approximates ||f||^2."""
    taus, freqs = coeffs.axis("time"), coeffs.axis("frequency")
    dtau = coeffs.meta["hop"] * coeffs.meta["dt"]
    dnu = freqs[1] - freqs[0] if freqs.size > 1 else 1.0
    return float(np.sum(np.abs(coeffs.values) ** 2) * dtau * dnu / coeffs.meta["window_norm_sq"])


# ---------------------------------------------------------------------------
# Stockwell


def stockwell_window(sign: int):
    """psi_+-(x) = e^{+-ix} e^{-x^2/(8 pi^2)}."""
    c = 1.0 / (8 * math.pi ** 2)
    return lambda x: np.exp(1j * sign * x - c * x * x)


def stockwell_frequencies(signal: Signal1D, n_freq: int) -> np.ndarray:
    """``n_freq`` non-negative on-grid frequencies k df, df a multiple of 1/T."""
    if n_freq < 1:
        raise DomainError("n_freq must be at least 1")
    step = max(1, int(math.ceil((signal.n // 2) / n_freq)))
    return np.arange(n_freq) * step / signal.duration


def stockwell(signal: Signal1D, freqs=None, n_freq: int | None = None,
              boundary: str = PERIODIC) -> CoefficientGrid:
    boundary = _check_boundary(boundary)
    if freqs is None:
        freqs = stockwell_frequencies(signal, n_freq or signal.n // 2)
    freqs = np.asarray(freqs, dtype=float)
    if freqs.size == 0:
        raise DomainError("empty frequency grid")
    f, dt, n, taus = signal.samples, signal.dt, signal.n, signal.times

    def row(nu):
        if nu == 0.0:
            return np.full(n, np.mean(f), dtype=complex)
        sign = 1 if nu > 0 else -1
        gamma = 2 * math.pi * abs(nu)
        psi = stockwell_window(sign)
        # in the time domain U_SW(theta, gamma, delta) psi is
        # e^{i(theta + gamma delta)} gamma^{1/2} psi(gamma (t + delta)); with
        # delta = -tau the dilated window is correlated with f and the phase
        # of the representation is applied per column
        base = _lag_kernel(lambda t: math.sqrt(gamma) * psi(gamma * t), n, dt,
                           9.0 * 2 * math.pi / gamma, boundary)
        corr = dt * _correlate(np.conj(base), f, boundary)
        delta = -taus
        g_coef = np.exp(-1j * gamma * delta) * corr
        return (abs(nu) / math.sqrt(2 * math.pi * gamma)
                * np.exp(-1j * (gamma + 2 * math.pi * nu) * taus) * g_coef)

    values = np.array(_map_rows(row, freqs))
    return CoefficientGrid(STOCKWELL, (("frequency", freqs), ("time", taus)), values,
                           {"dt": dt, "t0": signal.t0, "n": n, "boundary": boundary})


def stockwell_time_marginal(coeffs: CoefficientGrid) -> np.ndarray:
    """sum_tau S(tau, nu) dtau per frequency row."""
    if coeffs.kind != STOCKWELL:
        raise DomainError("time marginal is defined for Stockwell coefficients")
    taus = coeffs.axis("time")
    dt, n = coeffs.meta["dt"], coeffs.meta["n"]
    full = coeffs.meta["t0"] + dt * np.arange(n)
    if taus.size != n or not np.allclose(taus, full, rtol=0, atol=1e-9 * dt):
        raise MarginalUndefinedError("coefficients do not cover every sample time")
    return np.sum(coeffs.values, axis=1) * dt


# ---------------------------------------------------------------------------
# shearlet


SHEARLET_AXES = ("b", "a", "v", "sigma")


@dataclass(frozen=True)
class ShearletGrid:
    """Two varying parameters among (b, a, v, sigma); the others are held fixed."""
    axis1: tuple[str, np.ndarray]
    axis2: tuple[str, np.ndarray]
    fixed: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        names = [self.axis1[0], self.axis2[0]] + [k for k, _ in self.fixed]
        if any(k not in SHEARLET_AXES for k in names) or len(set(names)) != len(names):
            raise DomainError(f"shearlet axes must be distinct names from {SHEARLET_AXES}")

    def params(self, i: int, j: int) -> dict:
        out = {k: 0.0 for k in SHEARLET_AXES}
        out.update(dict(self.fixed))
        out[self.axis1[0]] = float(self.axis1[1][i])
        out[self.axis2[0]] = float(self.axis2[1][j])
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.axis1[1]), len(self.axis2[1]))


def shearlet_element(b: float, a: float, v: float, sigma: float) -> G.GroupElement:
    """Shearlet-group element (mu, nu, alpha, beta) = (e^sigma, v, a, b)."""
    return G.shearlet().element(math.exp(sigma), v, a, b)


def shearlet(field: Field2D, window: R.AnalyticVector, grid: ShearletGrid,
             method: str = "symbolic", sign: int = 1) -> CoefficientGrid:
    """Coefficients <U_SHEAR(g) psi^, F> on the sampled (E, p) field.

    ``symbolic`` applies the representation to the quadratic-exponential window
    and evaluates the result; ``pointwise`` evaluates the representation
    formula directly under the integral.
    """
    if window.dim != 2:
        raise DimensionMismatchError("shearlet windows live on the 2-d (E, p) plane")
    if method not in ("symbolic", "pointwise"):
        raise DomainError(f"unknown method {method!r}")
    rep = R.u_shear(sign)
    pts = field.points()
    E, p = pts[..., 0], pts[..., 1]
    F = field.values * field.cell
    n1, n2 = grid.shape

    def row(i):
        out = np.empty(n2, dtype=complex)
        for j in range(n2):
            pr = grid.params(i, j)
            if method == "symbolic":
                u = R.apply_rep(rep, shearlet_element(**pr), window)(pts)
            else:
                s, v = pr["sigma"], pr["v"]
                y = np.stack([math.exp(0.5 * s) * (E + p * v), math.exp(s) * p], axis=-1)
                u = np.exp(0.75 * s + 1j * (E * pr["b"] + p * pr["a"])) * window(y)
            out[j] = np.sum(np.conj(u) * F)
        return out

    values = np.array(_map_rows(row, range(n1)))
    return CoefficientGrid(SHEARLET, (grid.axis1, grid.axis2), values,
                           {"fixed": dict(grid.fixed), "method": method})


# ---------------------------------------------------------------------------


def analyze(kind: str, signal, window=None, grid=None, **kw) -> CoefficientGrid:
    """Dispatch to :func:`cwt`, :func:`stft`, :func:`stockwell` or :func:`shearlet`."""
    kind = kind.upper()
    if kind == CWT:
        return cwt(signal, window, grid, **kw)
    if kind == STFT:
        return stft(signal, freqs=grid, window=window, **kw)
    if kind == STOCKWELL:
        return stockwell(signal, freqs=grid, **kw)
    if kind == SHEARLET:
        if grid is None or window is None:
            raise DomainError("shearlet analysis needs a window vector and a parameter grid")
        return shearlet(signal, window, grid, **kw)
    raise DomainError(f"unknown transform kind {kind!r}")
