"""Induced unitary representations acting on quadratic-exponential vectors.

Every representation here has the form

    (U(g) psi)(x) = exp(lognorm + i (x^T P x + q^T x + r)) psi(L x + d)

with (L, d, P, q, r, lognorm) depending on g. On a vector
psi(x) = exp(x^T A x + b^T x + c) this is an exact update of (A, b, c), so
homomorphism and factorization checks are exact up to rounding; quadrature
enters only through inner products.

Carrier spaces and charts:

=========  ======================  ================  ======================
tag        group                   chart             orbit half
=========  ======================  ================  ======================
U_AFF      GAFF                    (E, p)            sign of p
V_AFF      GAFF                    (E,)              sign of E
U_SHEAR    SHEAR                   (E, p)            sign of p
U_WAV      WAV                     (p,)              sign of p
U_GMS      GMS(M), q = kappa       (k1, k2)          sign of k2
U_HEIS     HEIS, orbit s           (t,)              -
U_GS       GS                      (E, p) or (t, p)  sign of p
U_GTS      GTS                     (E, p) or (t, p)  sign of p
U_SW       SW                      (p,)              sign of p
=========  ======================  ================  ======================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import cocycles
from . import groups as G
from .embeddings import EmbeddingMap
from .errors import (DescriptorMismatchError, DimensionMismatchError, DomainError,
                     DomainTruncationError, NonSeparableError, NotClosedError)
from .groups import GroupElement, compose
from .quadrature import OrbitGrid, default_grid

exp = math.exp

TAIL_TOL = 1e-12
# orbit boxes stay this far from the p = 0 (or k2 = 0, E = 0) boundary
EDGE = 0.05
HALF = 10.0


# ---------------------------------------------------------------------------
# vectors


@dataclass(frozen=True)
class AnalyticVector:
    """psi(x) = exp(x^T A x + b^T x + c) on R^dim, dim in {1, 2}."""
    A: np.ndarray
    b: np.ndarray
    c: complex = 0.0

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=complex))
        b = np.atleast_1d(np.asarray(self.b, dtype=complex))
        if A.shape[0] != A.shape[1] or A.shape[0] not in (1, 2) or b.shape != (A.shape[0],):
            raise DimensionMismatchError(f"bad shapes A{A.shape}, b{b.shape}")
        A = 0.5 * (A + A.T)
        if not np.all(np.isfinite(A)) or not np.all(np.isfinite(b)) or not np.isfinite(self.c):
            raise DomainError("non-finite coefficients")
        if np.any(np.linalg.eigvalsh(A.real) >= 0):
            raise DomainError("Re(A) must be negative definite")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", complex(self.c))

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    @classmethod
    def gaussian(cls, center, alpha=1.0, momentum=0.0, c: complex = 0.0) -> "AnalyticVector":
        """exp(-alpha |x - center|^2 + i momentum . x + c)."""
        center = np.atleast_1d(np.asarray(center, dtype=float))
        n = center.size
        alpha = np.broadcast_to(np.asarray(alpha, dtype=float), (n,))
        k = np.broadcast_to(np.asarray(momentum, dtype=float), (n,))
        A = -np.diag(alpha)
        b = 2 * alpha * center + 1j * k
        return cls(A, b, c - np.sum(alpha * center ** 2))

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.dim == 1 and (x.ndim == 0 or x.shape[-1] != 1):
            x = x[..., None]
        if x.shape[-1] != self.dim:
            raise DimensionMismatchError(f"points of dimension {x.shape[-1]} for a {self.dim}-d vector")
        quad = np.einsum("...i,ij,...j->...", x, self.A, x)
        return np.exp(quad + x @ self.b + self.c)

    def scaled(self, log_factor: complex) -> "AnalyticVector":
        return AnalyticVector(self.A, self.b, self.c + log_factor)

    def norm_sq(self) -> float:
        """Full-space integral of |psi|^2 in closed form."""
        K = -2 * self.A.real
        j = 2 * self.b.real
        n = self.dim
        return float(math.sqrt(math.pi ** n / np.linalg.det(K))
                     * exp(0.25 * j @ np.linalg.solve(K, j) + 2 * self.c.real))

    def is_separable(self, tol: float = 0.0) -> bool:
        return self.dim == 2 and abs(self.A[0, 1]) <= tol

    def split(self) -> tuple["AnalyticVector", "AnalyticVector"]:
        """Factors (phi, chi) with psi = phi (x) chi; the constant goes to phi."""
        if not self.is_separable():
            raise NonSeparableError("vector does not factor over the two coordinates")
        return (AnalyticVector(self.A[:1, :1], self.b[:1], self.c),
                AnalyticVector(self.A[1:, 1:], self.b[1:], 0.0))


def tensor(phi: AnalyticVector, chi: AnalyticVector) -> AnalyticVector:
    if phi.dim != 1 or chi.dim != 1:
        raise DimensionMismatchError("tensor product takes two 1-d vectors")
    A = np.diag([phi.A[0, 0], chi.A[0, 0]])
    return AnalyticVector(A, np.concatenate([phi.b, chi.b]), phi.c + chi.c)


def wrap_phase(x: float) -> float:
    """Representative of x mod 2 pi in (-pi, pi]."""
    y = math.remainder(x, 2 * math.pi)
    return math.pi if y == -math.pi else y


def vector_distance(v: AnalyticVector, ref: AnalyticVector) -> float:
    """Coefficientwise distance, each entry relative to max(1, |ref entry|).

    The imaginary part of c is compared mod 2 pi.
    """
    if v.dim != ref.dim:
        raise DimensionMismatchError("vectors of different dimension")
    dA = np.max(np.abs(v.A - ref.A) / np.maximum(1.0, np.abs(ref.A)))
    db = np.max(np.abs(v.b - ref.b) / np.maximum(1.0, np.abs(ref.b)))
    dc_re = abs(v.c.real - ref.c.real) / max(1.0, abs(ref.c.real))
    dc_im = abs(wrap_phase(v.c.imag - ref.c.imag))
    return float(max(dA, db, dc_re, dc_im))


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class AffineAction:
    L: np.ndarray
    d: np.ndarray
    P: np.ndarray
    q: np.ndarray
    r: float = 0.0
    lognorm: float = 0.0

    def apply(self, v: AnalyticVector) -> AnalyticVector:
        L, d, A = self.L, self.d, v.A
        A2 = L.T @ A @ L + 1j * self.P
        b2 = 2 * L.T @ A @ d + L.T @ v.b + 1j * self.q
        c2 = d @ A @ d + v.b @ d + v.c + 1j * self.r + self.lognorm
        return AnalyticVector(A2, b2, c2)

    def evaluate(self, psi: Callable, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        y = x @ self.L.T + self.d
        phase = np.einsum("...i,ij,...j->...", x, self.P, x) + x @ self.q + self.r
        return np.exp(self.lognorm + 1j * phase) * psi(y)


def _affine(L, d=None, P=None, q=None, r=0.0, lognorm=0.0) -> AffineAction:
    L = np.atleast_2d(np.asarray(L, dtype=float))
    n = L.shape[0]
    d = np.zeros(n) if d is None else np.asarray(d, dtype=float)
    P = np.zeros((n, n)) if P is None else np.asarray(P, dtype=float)
    q = np.zeros(n) if q is None else np.asarray(q, dtype=float)
    return AffineAction(L, d, P, q, float(r), float(lognorm))


@dataclass(frozen=True)
class Rep:
    tag: str
    group: G.GroupDescriptor
    chart: tuple[str, ...]
    box: tuple[tuple[float, float], ...]
    action: Callable = field(compare=False, repr=False)
    pointwise: Callable | None = field(default=None, compare=False, repr=False)
    multiplier: cocycles.Exponent | None = field(default=None, compare=False)
    constants: tuple[tuple[str, float], ...] = ()

    @property
    def dim(self) -> int:
        return len(self.chart)

    def grid(self, n: int | None = None) -> OrbitGrid:
        return default_grid(self.chart, self.box, n)

    def evaluate(self, g: GroupElement, psi: Callable, x) -> np.ndarray:
        """Pointwise (U(g) psi)(x) for an arbitrary callable psi of points (..., dim)."""
        _check_group(self, g)
        if self.pointwise is not None:
            return self.pointwise(g.params, psi, np.asarray(x, dtype=float))
        return self.action(g.params).evaluate(psi, x)


def _check_group(rep: Rep, g: GroupElement) -> None:
    if g.group != rep.group:
        raise DescriptorMismatchError(f"{rep.tag} acts on {rep.group.tag}, not {g.group.tag}")


def _sign(sign) -> int:
    s = 1 if sign in (1, "+", "plus") else -1 if sign in (-1, "-", "minus") else 0
    if s == 0:
        raise DomainError(f"orbit sign must be + or -, got {sign!r}")
    return s


def _half(sign: int) -> tuple[float, float]:
    return (EDGE, HALF) if sign > 0 else (-HALF, -EDGE)


def _pm(sign: int) -> str:
    return "+" if sign > 0 else "-"


def u_aff(sign=+1) -> Rep:
    s = _sign(sign)

    def action(g):
        b, a, v, sg, t = g
        return _affine([[exp(t), exp(t) * v], [0.0, exp(sg)]], q=(b, a), lognorm=0.5 * (sg + t))

    return Rep(f"U_AFF{_pm(s)}", G.affine_galilei(), ("E", "p"), ((-HALF, HALF), _half(s)), action)


def v_aff(sign=+1) -> Rep:
    s = _sign(sign)

    def action(g):
        b, a, v, sg, t = g
        return _affine([[exp(t)]], q=(b,), lognorm=0.5 * t)

    return Rep(f"V_AFF{_pm(s)}", G.affine_galilei(), ("E",), (_half(s),), action)


def u_shear(sign=+1) -> Rep:
    s = _sign(sign)

    def action(g):
        mu, nu, alpha, beta = g
        sg = math.log(mu)
        r = math.sqrt(mu)
        return _affine([[r, r * nu], [0.0, mu]], q=(beta, alpha), lognorm=0.75 * sg)

    return Rep(f"U_SHEAR{_pm(s)}", G.shearlet(), ("E", "p"), ((-HALF, HALF), _half(s)), action)


def u_wav(sign=+1) -> Rep:
    s = _sign(sign)

    def action(g):
        a, sg = g
        return _affine([[exp(sg)]], q=(a,), lognorm=0.5 * sg)

    return Rep(f"U_WAV{_pm(s)}", G.wavelet(), ("p",), (_half(s),), action)


def u_gms(sign=+1, kappa: float = 1.0, M: float = 1.0) -> Rep:
    s = _sign(sign)
    kappa = float(kappa)
    if kappa == 0.0 or not math.isfinite(kappa):
        raise DomainError("U_GMS needs a non-zero orbit constant kappa")
    group = G.galilei_schrodinger_mass(M)
    M = group.const("M")

    def action(g):
        th, b, a, v, sg = g
        return _affine(np.diag([exp(sg), exp(2 * sg)]), d=(exp(sg) * kappa * M * v, 0.0),
                       P=[[b / (2 * kappa * M), 0.0], [0.0, 0.0]], q=(a, b), r=kappa * th,
                       lognorm=1.5 * sg)

    return Rep(f"U_GMS{_pm(s)}", group, ("k1", "k2"), ((-HALF, HALF), _half(s)), action,
               constants=(("kappa", kappa), ("M", M)))


def u_heis(s: float = 1.0) -> Rep:
    s = float(s)

    def action(g):
        th, q, p = g
        return _affine([[1.0]], d=(s * p,), q=(q,), r=s * th)

    return Rep("U_HEIS", G.heisenberg(), ("t",), ((-HALF, HALF),), action, constants=(("s", s),))


def _gs_ep(g):
    b, a, v, sg = g
    e2 = exp(2 * sg)
    return _affine([[e2, e2 * v], [0.0, exp(sg)]], q=(b, a), lognorm=1.5 * sg)


def _gs_tp(g):
    b, a, v, sg = g
    if b != 0.0 or v != 0.0:
        raise NotClosedError("in the (t, p) chart only b = v = 0 keeps the quadratic-exponential class")
    return _affine(np.diag([1.0, exp(sg)]), q=(0.0, a), lognorm=0.5 * sg)


def _gs_tp_pointwise(g, psi, x):
    b, a, v, sg = g
    t, p = x[..., 0], x[..., 1]
    y = np.stack([t + v / p, exp(sg) * p], axis=-1)
    return np.exp(0.5 * sg + 1j * (t * p * p * b + p * a)) * psi(y)


def _chart(chart: str) -> tuple[str, str]:
    key = chart.lower()
    if key not in ("ep", "tp"):
        raise DomainError(f"unknown chart {chart!r}; expected 'Ep' or 'tp'")
    return ("E", "p") if key == "ep" else ("t", "p")


def u_gs(sign=+1, chart: str = "Ep") -> Rep:
    s = _sign(sign)
    axes = _chart(chart)
    tp = axes[0] == "t"
    return Rep(f"U_GS{_pm(s)}", G.galilei_schrodinger(), axes, ((-HALF, HALF), _half(s)),
               _gs_tp if tp else _gs_ep, _gs_tp_pointwise if tp else None)


def u_gts(sign=+1, chart: str = "Ep") -> Rep:
    """e^{i theta} e^{i zeta_T(g)} U_GS(g) on the trivial extension."""
    base = u_gs(sign, chart)

    def lift(g):
        return g[0] + g[2] * exp(-g[4])

    def action(g):
        act = base.action(g[1:])
        return replace(act, r=act.r + lift(g))

    pointwise = None
    if base.pointwise is not None:
        def pointwise(g, psi, x):
            return np.exp(1j * lift(g)) * base.pointwise(g[1:], psi, x)

    return Rep(base.tag.replace("GS", "GTS"), G.galilei_schrodinger_trivial(), base.chart,
               base.box, action, pointwise)


def u_gts_projective(sign=+1, chart: str = "Ep") -> Rep:
    """The theta = 0 slice of U_GTS as a projective representation of GS with exponent xi_2."""
    ext = u_gts(sign, chart)

    def action(g):
        return ext.action((0.0,) + tuple(g))

    pointwise = None
    if ext.pointwise is not None:
        def pointwise(g, psi, x):
            return ext.pointwise((0.0,) + tuple(g), psi, x)

    return Rep(ext.tag + "~", G.galilei_schrodinger(), ext.chart, ext.box, action, pointwise,
               multiplier=cocycles.xi_gs2())


def u_sw(sign=+1) -> Rep:
    s = _sign(sign)

    def action(g):
        th, ga, de = g
        return _affine([[1.0 / ga]], q=(de,), r=th + ga * de, lognorm=-0.5 * math.log(ga))

    return Rep(f"U_SW{_pm(s)}", G.stockwell(), ("p",), (_half(s),), action)


def get_rep(tag: str, sign=+1, **kw) -> Rep:
    key = tag.upper().rstrip("+-")
    table = {"U_AFF": u_aff, "V_AFF": v_aff, "U_SHEAR": u_shear, "U_WAV": u_wav,
             "U_GMS": u_gms, "U_GS": u_gs, "U_GTS": u_gts, "U_SW": u_sw}
    if key == "U_HEIS":
        return u_heis(**kw)
    if key not in table:
        raise DomainError(f"unknown representation {tag!r}")
    if tag.endswith(("+", "-")):
        sign = tag[-1]
    return table[key](sign, **kw)


# ---------------------------------------------------------------------------
# operations


def apply_rep(rep: Rep, g: GroupElement, v: AnalyticVector) -> AnalyticVector:
    _check_group(rep, g)
    if v.dim != rep.dim:
        raise DimensionMismatchError(f"{rep.tag} acts on {rep.dim}-d vectors, got {v.dim}-d")
    return rep.action(g.params).apply(v)


def restrict_rep(rep: Rep, e: EmbeddingMap) -> Rep:
    """``rep`` composed with the embedding: acts on elements of ``e.source``."""
    if e.target != rep.group:
        raise DescriptorMismatchError(f"embedding lands in {e.target.tag}, {rep.tag} acts on "
                                      f"{rep.group.tag}")
    f = e.map
    pointwise = None
    if rep.pointwise is not None:
        def pointwise(g, psi, x):
            return rep.pointwise(tuple(f(g)), psi, x)
    if e.source == e.target:
        return rep
    return Rep(f"{rep.tag}|{e.source.tag}", e.source, rep.chart, rep.box,
               lambda g: rep.action(tuple(f(g))), pointwise, constants=rep.constants)


def rep_homomorphism_defect(rep: Rep, g1: GroupElement, g2: GroupElement,
                            v: AnalyticVector) -> float:
    """Distance between U(g1) U(g2) v and omega U(g1 g2) v, omega = e^{i xi(g1, g2)}."""
    lhs = apply_rep(rep, g1, apply_rep(rep, g2, v))
    rhs = apply_rep(rep, compose(g1, g2), v)
    if rep.multiplier is not None:
        rhs = rhs.scaled(1j * rep.multiplier(g1, g2))
    return vector_distance(lhs, rhs)


def _values(v, grid: OrbitGrid) -> np.ndarray:
    pts = grid.points()
    out = np.asarray(v(pts))
    if out.shape != pts.shape[:-1]:
        # scalar-style callables on a 1-d grid keep the trailing axis
        if out.size != np.prod(pts.shape[:-1]):
            raise DimensionMismatchError(f"callable returned shape {out.shape} on points {pts.shape}")
        out = out.reshape(pts.shape[:-1])
    return out


def inner_product(v1, v2, grid: OrbitGrid) -> complex:
    """Quadrature value of the integral of conj(v1) v2; vectors or callables of points."""
    for v in (v1, v2):
        if isinstance(v, AnalyticVector) and v.dim != grid.dim:
            raise DimensionMismatchError(f"{v.dim}-d vector on a {grid.dim}-d grid")
    return complex(grid.integrate(np.conj(_values(v1, grid)) * _values(v2, grid)))


def tail_mass(v: AnalyticVector, grid: OrbitGrid) -> float:
    """Relative mass of |v|^2 outside the grid box."""
    inside = grid.integrate(np.abs(_values(v, grid)) ** 2).real
    return max(0.0, 1.0 - inside / v.norm_sq())


def check_concentrated(v: AnalyticVector, grid: OrbitGrid, tol: float = TAIL_TOL) -> None:
    m = tail_mass(v, grid)
    if m > tol:
        raise DomainTruncationError(f"vector has relative tail mass {m:.2e} outside the box")


def unitarity_defect(rep: Rep, g: GroupElement, v1: AnalyticVector, v2: AnalyticVector,
                     grid: OrbitGrid | None = None) -> float:
    grid = rep.grid() if grid is None else grid
    w1, w2 = apply_rep(rep, g, v1), apply_rep(rep, g, v2)
    for v in (v1, v2, w1, w2):
        check_concentrated(v, grid)
    ref = inner_product(v1, v2, grid)
    return abs(inner_product(w1, w2, grid) - ref) / abs(ref)


# ---------------------------------------------------------------------------
# restrictions of the form I (x) U or U (x) I


@dataclass(frozen=True)
class Factorization:
    """``restricted`` acts as ``factor`` on coordinate ``axis`` and trivially on the other."""
    name: str
    restricted: Rep
    factor: Rep
    axis: int


def bundled_factorizations(sign=+1, kappa: float = 1.0, M: float = 1.0) -> list[Factorization]:
    from .embeddings import direct_embeddings, find_embedding

    wav_to_gaff = next(e for e in direct_embeddings(M) if e.source.id == "WAV")
    heis_to_gms = find_embedding(G.heisenberg(), G.galilei_schrodinger_mass(M))
    sw_to_gts = find_embedding(G.stockwell(), G.galilei_schrodinger_trivial())
    return [
        Factorization("wavelet", restrict_rep(u_aff(sign), wav_to_gaff), u_wav(sign), 1),
        Factorization("heisenberg", restrict_rep(u_gms(sign, kappa, M), heis_to_gms),
                      u_heis(kappa), 0),
        Factorization("stockwell", restrict_rep(u_gts(sign, "tp"), sw_to_gts), u_sw(sign), 1),
    ]


def factorization_defect(fac: Factorization, v_sep: AnalyticVector, g: GroupElement) -> float:
    """Distance between U(g)(phi (x) chi) and the factor acting on its own coordinate only."""
    phi, chi = v_sep.split()
    lhs = apply_rep(fac.restricted, g, v_sep)
    if fac.axis == 1:
        rhs = tensor(phi, apply_rep(fac.factor, g, chi))
    else:
        rhs = tensor(apply_rep(fac.factor, g, phi), chi)
    return vector_distance(lhs, rhs)


def hermite_function(n: int) -> Callable[[np.ndarray], np.ndarray]:
    """Normalized Hermite-Gaussian phi_n on the real line."""
    coef = np.zeros(n + 1)
    coef[n] = 1.0 / math.sqrt(2.0 ** n * math.factorial(n) * math.sqrt(math.pi))

    def phi(x):
        x = np.asarray(x, dtype=float)
        return np.polynomial.hermite.hermval(x, coef) * np.exp(-0.5 * x * x)

    return phi


def factorization_defect_pointwise(fac: Factorization, phi: Callable, chi: AnalyticVector,
                                   g: GroupElement, x: np.ndarray) -> float:
    """Pointwise version for a non-Gaussian factor ``phi`` on the trivially acted coordinate.

    ``x`` holds 2-d points; the result is the max error relative to the peak value.
    """
    other = 1 - fac.axis

    def psi(y):
        return phi(y[..., other]) * chi(y[..., fac.axis])

    lhs = fac.restricted.evaluate(g, psi, x)
    moved = fac.factor.evaluate(g, chi, x[..., fac.axis][..., None])
    rhs = phi(x[..., other]) * moved
    scale = max(1.0, float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(lhs - rhs)) / scale)
