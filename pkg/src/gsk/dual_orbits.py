"""Dual actions, orbit classification, orbit charts and measure factors.

Each semidirect product ``T x| V`` acts on characters of its abelian normal
subgroup ``T`` through its homogeneous factor ``V``:

=======  ================  ==========================  ============
group    factor element    dual point                  chart
=======  ================  ==========================  ============
GAFF     (v, sigma, tau)   (E, p)                      (E, p)
GS       (v, sigma)        (E, p)                      (t, p)
GMS      (v, sigma)        (q, E, p), q = kappa != 0   (k1, k2)
HEIS     (p,)              (s, t)                      (t,)
=======  ================  ==========================  ============
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import groups as G
from .errors import ChartSingularityError, DescriptorMismatchError, DomainError
from .groups import GroupDescriptor, GroupElement

exp = math.exp

ZERO_TOL = 1e-12

HALF_PLANE_POS = "HALF_PLANE_POS"
HALF_PLANE_NEG = "HALF_PLANE_NEG"
HALF_LINE_POS = "HALF_LINE_POS"
HALF_LINE_NEG = "HALF_LINE_NEG"
DEGENERATE = "DEGENERATE"
PARABOLA_INTERIOR = "PARABOLA_INTERIOR"
PARABOLA_EXTERIOR = "PARABOLA_EXTERIOR"
PARABOLA_BOUNDARY = "PARABOLA_BOUNDARY"
LINE = "LINE"

DUAL_GROUPS = ("GAFF", "GS", "GMS", "HEIS")


# ---------------------------------------------------------------------------
# homogeneous factors


def _vaff_law(g, h):
    v, s, t = g
    V, S, T = h
    return (v + exp(s - t) * V, s + S, t + T)


def _vaff_inv(g):
    v, s, t = g
    return (-exp(t - s) * v, -s, -t)


def _vaff_mat(g):
    v, s, t = g
    return [[exp(s), v * exp(t)], [0.0, exp(t)]]


def _vs_law(g, h):
    v, s = g
    V, S = h
    return (v + exp(-s) * V, s + S)


def _vs_inv(g):
    v, s = g
    return (-exp(s) * v, -s)


def _vs_mat(g):
    v, s = g
    return [[exp(s), v * exp(2 * s)], [0.0, exp(2 * s)]]


def affine_factor() -> GroupDescriptor:
    """The (v, sigma, tau) factor of GAFF."""
    return GroupDescriptor("VAFF", ("v", "sigma", "tau"), (G.LINEAR, G.LOG, G.LOG), 2,
                           law=_vaff_law, inverse_law=_vaff_inv, matrix=_vaff_mat)


def schrodinger_factor() -> GroupDescriptor:
    """The (v, sigma) factor shared by GS and GMS."""
    return GroupDescriptor("VS", ("v", "sigma"), (G.LINEAR, G.LOG), 2,
                           law=_vs_law, inverse_law=_vs_inv, matrix=_vs_mat)


def heisenberg_factor() -> GroupDescriptor:
    return GroupDescriptor("AH", ("p",), (G.LINEAR,), 2,
                           law=lambda g, h: (g[0] + h[0],), inverse_law=lambda g: (-g[0],),
                           matrix=lambda g: [[1.0, g[0]], [0.0, 1.0]])


def factor_group(group: str) -> GroupDescriptor:
    group = _tag(group)
    if group == "GAFF":
        return affine_factor()
    if group in ("GS", "GMS"):
        return schrodinger_factor()
    return heisenberg_factor()


# ---------------------------------------------------------------------------
# points and labels


def _tag(group: str) -> str:
    key = group.upper()
    if key not in DUAL_GROUPS:
        raise DomainError(f"no dual action for group {group!r}; expected one of {DUAL_GROUPS}")
    return key


@dataclass(frozen=True)
class DualPoint:
    group: str
    coords: tuple[float, ...]
    M: float = 1.0

    def __post_init__(self):
        group = _tag(self.group)
        coords = tuple(float(x) for x in self.coords)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "coords", coords)
        want = 3 if group == "GMS" else 2
        if len(coords) != want:
            raise DomainError(f"{group} dual points have {want} coordinates, got {len(coords)}")
        if not all(math.isfinite(x) for x in coords):
            raise DomainError(f"non-finite dual point {coords}")
        if group == "GMS" and not (self.M > 0):
            raise DomainError(f"mass M must be positive, got {self.M}")


@dataclass(frozen=True)
class OrbitLabel:
    group: str
    cls: str
    value: float | None = None

    def __str__(self) -> str:
        return self.cls if self.value is None else f"{self.cls}({self.value:g})"


def dual_act(h: GroupElement, x: DualPoint) -> DualPoint:
    """Action of a homogeneous-factor element on a dual point."""
    factor = factor_group(x.group)
    if h.group != factor:
        raise DescriptorMismatchError(f"{x.group} dual points are moved by {factor.id}, "
                                      f"not {h.group.tag}")
    if x.group == "GAFF":
        v, s, t = h.params
        E, p = x.coords
        return DualPoint("GAFF", (exp(-t) * E - exp(-s) * p * v, exp(-s) * p))
    if x.group == "GS":
        v, s = h.params
        E, p = x.coords
        return DualPoint("GS", (exp(-2 * s) * E - exp(-s) * p * v, exp(-s) * p))
    if x.group == "GMS":
        v, s = h.params
        q, E, p = x.coords
        M = x.M
        return DualPoint("GMS", (q, exp(-2 * s) * E - exp(-s) * p * v + 0.5 * q * M * v * v,
                                 exp(-s) * p - q * M * v), M)
    (p,) = h.params
    s, t = x.coords
    return DualPoint("HEIS", (s, t - s * p))


def orbit_id(x: DualPoint) -> OrbitLabel:
    g = x.group
    if g in ("GAFF", "GS"):
        E, p = x.coords
        if abs(p) >= ZERO_TOL:
            return OrbitLabel(g, HALF_PLANE_POS if p > 0 else HALF_PLANE_NEG)
        if abs(E) >= ZERO_TOL:
            return OrbitLabel(g, HALF_LINE_POS if E > 0 else HALF_LINE_NEG)
        return OrbitLabel(g, DEGENERATE)
    if g == "GMS":
        q, E, p = x.coords
        if abs(q) < ZERO_TOL:
            return OrbitLabel(g, DEGENERATE)
        k2 = E - p * p / (2 * q * x.M)
        if abs(k2) < ZERO_TOL:
            return OrbitLabel(g, PARABOLA_BOUNDARY, q)
        return OrbitLabel(g, PARABOLA_INTERIOR if k2 * q > 0 else PARABOLA_EXTERIOR, q)
    s, t = x.coords
    if abs(s) < ZERO_TOL:
        return OrbitLabel(g, DEGENERATE)
    return OrbitLabel(g, LINE, s)


# ---------------------------------------------------------------------------
# charts


def to_orbit_coords(x: DualPoint) -> tuple[float, ...]:
    """(E,p) for GAFF, (t,p) with t=E/p^2 for GS, (k1,k2) for GMS, (t,) for HEIS."""
    if x.group == "GAFF":
        return x.coords
    if x.group == "GS":
        E, p = x.coords
        if abs(p) < ZERO_TOL:
            raise ChartSingularityError("the (t, p) chart is singular at p = 0")
        return (E / (p * p), p)
    if x.group == "GMS":
        q, E, p = x.coords
        if abs(q) < ZERO_TOL:
            raise ChartSingularityError("the (k1, k2) chart needs q = kappa != 0")
        return (p, E - p * p / (2 * q * x.M))
    return (x.coords[1],)


def from_orbit_coords(group: str, y, *, kappa: float = 1.0, M: float = 1.0,
                      s: float = 1.0) -> DualPoint:
    group = _tag(group)
    y = tuple(float(c) for c in y)
    if group == "GAFF":
        return DualPoint(group, y)
    if group == "GS":
        t, p = y
        if abs(p) < ZERO_TOL:
            raise ChartSingularityError("the (t, p) chart is singular at p = 0")
        return DualPoint(group, (t * p * p, p))
    if group == "GMS":
        if abs(kappa) < ZERO_TOL:
            raise ChartSingularityError("the (k1, k2) chart needs q = kappa != 0")
        k1, k2 = y
        return DualPoint(group, (kappa, k2 + k1 * k1 / (2 * kappa * M), k1), M)
    return DualPoint(group, (s, y[0]))


def measure_jacobian(group: str, h: GroupElement, chart: str | None = None) -> float:
    """Factor by which h^{-1} scales the chart measure of the orbit.

    ``chart`` selects the half-line chart for GAFF (``"E"``); every other group
    has one chart.
    """
    group = _tag(group)
    if h.group != factor_group(group):
        raise DescriptorMismatchError(f"{h.group.tag} is not the factor of {group}")
    if group == "GAFF":
        v, s, t = h.params
        return exp(t) if chart == "E" else exp(s + t)
    if group == "GMS":
        return exp(3 * h.params[1])
    if group == "GS":
        return exp(h.params[1])
    return 1.0


def chart_inverse_action(h: GroupElement, y, group: str, *, kappa: float = 1.0,
                         M: float = 1.0, s: float = 1.0, chart: str | None = None):
    """``h^{-1}`` acting in chart coordinates; the map whose Jacobian is measured."""
    group = _tag(group)
    hinv = G.inverse(h)
    if group == "GAFF" and chart == "E":
        x = DualPoint(group, (y[0], 0.0))
        return (dual_act(hinv, x).coords[0],)
    x = from_orbit_coords(group, y, kappa=kappa, M=M, s=s)
    return to_orbit_coords(dual_act(hinv, x))


def numerical_jacobian(h: GroupElement, y, group: str, step: float = 1e-6, **kw) -> float:
    """Determinant of the central-difference linearization of :func:`chart_inverse_action`."""
    y = np.asarray(y, dtype=float)
    n = y.size
    J = np.empty((n, n))
    for j in range(n):
        e = np.zeros(n)
        e[j] = step
        fp = np.asarray(chart_inverse_action(h, y + e, group, **kw))
        fm = np.asarray(chart_inverse_action(h, y - e, group, **kw))
        J[:, j] = (fp - fm) / (2 * step)
    return float(np.linalg.det(J))


def random_factor_element(group: str, rng: np.random.Generator,
                          linear: float = 2.0, log: float = 1.0,
                          boosts_only: bool = False) -> GroupElement:
    factor = factor_group(group)
    params = list(G.random_params(factor, rng, linear, log))
    if boosts_only:
        params = [x if name in ("v", "p") else 0.0 for name, x in zip(factor.param_names, params)]
    return GroupElement(factor, params)


def orbit_walk(x: DualPoint, steps: int, seed: int = 0, boosts_only: bool = False,
               linear: float = 0.5, log: float = 0.2) -> list[DualPoint]:
    """Random walk of ``steps`` points along the orbit of ``x``, starting at ``x``."""
    rng = np.random.default_rng(seed)
    out = [x]
    for _ in range(steps - 1):
        h = random_factor_element(x.group, rng, linear, log, boosts_only)
        out.append(dual_act(h, out[-1]))
    return out
