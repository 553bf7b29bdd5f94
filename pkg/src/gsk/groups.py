"""Group laws, inverses and faithful matrix realizations.

Every group is described by a :class:`GroupDescriptor`; elements are
:class:`GroupElement` values holding a parameter tuple in a fixed order:

=========  ==========================  ====================================
tag        parameters                  notes
=========  ==========================  ====================================
G0         (b, a, v)                   Galilei group (Heisenberg group)
GAFF       (b, a, v, sigma, tau)       affine Galilei group
GPH        (b, a, v, sigma)            extended Heisenberg, tau=sigma/(p+1)
SHEAR      (mu, nu, alpha, beta)       reduced shearlet group, mu > 0
WAV        (a, sigma)                  connected affine (wavelet) group
AFFPRIME   (gamma, delta)              affine group, law delta1+delta2/gamma1
GS         (b, a, v, sigma)            Galilei-Schroedinger group, tau=2sigma
GM         (theta, b, a, v)            quantum Galilei group (mass M)
GMAFF      (theta, b, a, v, sigma, tau) non-central extension of GAFF
GMS        (theta, b, a, v, sigma)     central extension of GS by xi
GMSP       (theta, b, a, v, sigma)     central extension of GS by xi_1
GTS        (theta, b, a, v, sigma)     trivial central extension of GS
HEIS       (theta, q, p)               Heisenberg group, exponent p q'
WH         (theta, q, p)               Weyl-Heisenberg group
SW         (theta, gamma, delta)       connected Stockwell group, gamma > 0
T2         (x1, x2)                    translations of the plane
=========  ==========================  ====================================

Dilations ``sigma`` and ``tau`` are logarithms; ``mu`` and ``gamma`` are
stored as raw positive numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DescriptorMismatchError, DomainError, InvalidSampleCountError

exp = math.exp

# parameter kinds drive validation and random sampling
LINEAR = "linear"
LOG = "log"
POSITIVE = "positive"


@dataclass(frozen=True)
class GroupDescriptor:
    id: str
    param_names: tuple[str, ...]
    param_kinds: tuple[str, ...]
    matrix_dim: int
    constants: tuple[tuple[str, float], ...] = ()
    law: Callable = field(default=None, compare=False, repr=False)
    inverse_law: Callable = field(default=None, compare=False, repr=False)
    matrix: Callable | None = field(default=None, compare=False, repr=False)

    @property
    def arity(self) -> int:
        return len(self.param_names)

    @property
    def tag(self) -> str:
        if not self.constants:
            return self.id
        inner = ",".join(f"{k}={v:g}" for k, v in self.constants)
        return f"{self.id}({inner})"

    def const(self, name: str) -> float:
        return dict(self.constants)[name]

    @property
    def identity_params(self) -> tuple[float, ...]:
        return tuple(1.0 if k == POSITIVE else 0.0 for k in self.param_kinds)

    def identity(self) -> "GroupElement":
        return GroupElement(self, self.identity_params)

    def element(self, *params: float) -> "GroupElement":
        return GroupElement(self, tuple(params))

    def describe(self) -> dict:
        return {
            "id": self.id,
            "tag": self.tag,
            "arity": self.arity,
            "matrix_dim": self.matrix_dim,
            "parameters": list(self.param_names),
            "constants": dict(self.constants),
        }


@dataclass(frozen=True)
class GroupElement:
    group: GroupDescriptor
    params: tuple[float, ...]

    def __post_init__(self):
        params = tuple(float(x) for x in self.params)
        object.__setattr__(self, "params", params)
        if len(params) != self.group.arity:
            raise DomainError(
                f"{self.group.tag} takes {self.group.arity} parameters, got {len(params)}"
            )
        for name, kind, x in zip(self.group.param_names, self.group.param_kinds, params):
            if not math.isfinite(x):
                raise DomainError(f"parameter {name}={x} is not finite")
            if kind == POSITIVE and x <= 0.0:
                raise DomainError(f"parameter {name} must be positive, got {x}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def __getitem__(self, name: str) -> float:
        return self.params[self.group.param_names.index(name)]

    def array(self) -> np.ndarray:
        return np.asarray(self.params)


def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Group product ``g1 g2``."""
    if g1.group != g2.group:
        raise DescriptorMismatchError(f"cannot compose {g1.group.tag} with {g2.group.tag}")
    return GroupElement(g1.group, g1.group.law(g1.params, g2.params))


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.group, g.group.inverse_law(g.params))


def to_matrix(g: GroupElement) -> np.ndarray:
    if g.group.matrix is None:
        raise DomainError(f"{g.group.tag} has no matrix realization")
    return np.array(g.group.matrix(g.params), dtype=float)


# ---------------------------------------------------------------------------
# laws


def _g0_law(g, h):
    b, a, v = g
    B, A, V = h
    return (b + B, a + A + v * B, v + V)


def _g0_inv(g):
    b, a, v = g
    return (-b, -a + v * b, -v)


def _g0_mat(g):
    b, a, v = g
    return [[1.0, v, a], [0.0, 1.0, b], [0.0, 0.0, 1.0]]


def _gaff_law(g, h):
    b, a, v, s, t = g
    B, A, V, S, T = h
    return (b + exp(t) * B, a + exp(t) * B * v + exp(s) * A, v + exp(s - t) * V, s + S, t + T)


def _gaff_inv(g):
    b, a, v, s, t = g
    return (-exp(-t) * b, -exp(-s) * (a - v * b), -exp(t - s) * v, -s, -t)


def _gaff_mat(g):
    b, a, v, s, t = g
    return [[exp(s), v * exp(t), a], [0.0, exp(t), b], [0.0, 0.0, 1.0]]


def _gph_laws(p):
    m = 1.0 / (p + 1.0)

    def law(g, h):
        b, a, v, s = g
        B, A, V, S = h
        return (b + exp(m * s) * B, a + exp(s) * A + exp(m * s) * v * B,
                v + exp(p * m * s) * V, s + S)

    def inv(g):
        b, a, v, s = g
        return (-exp(-m * s) * b, -exp(-s) * (a - v * b), -exp(-p * m * s) * v, -s)

    def mat(g):
        b, a, v, s = g
        return [[exp(s), v * exp(m * s), a], [0.0, exp(m * s), b], [0.0, 0.0, 1.0]]

    return law, inv, mat


def _shear_law(g, h):
    mu, nu, al, be = g
    MU, NU, AL, BE = h
    r = math.sqrt(mu)
    return (mu * MU, nu + NU * r, al + mu * AL + nu * r * BE, be + r * BE)


def _shear_inv(g):
    mu, nu, al, be = g
    r = math.sqrt(mu)
    return (1.0 / mu, -nu / r, -(al - nu * be) / mu, -be / r)


def _shear_mat(g):
    mu, nu, al, be = g
    r = math.sqrt(mu)
    return [[mu, nu * r, al], [0.0, r, be], [0.0, 0.0, 1.0]]


def _wav_law(g, h):
    a, s = g
    A, S = h
    return (a + exp(s) * A, s + S)


def _wav_inv(g):
    a, s = g
    return (-exp(-s) * a, -s)


def _wav_mat(g):
    a, s = g
    return [[exp(s), a], [0.0, 1.0]]


def _affp_law(g, h):
    ga, de = g
    GA, DE = h
    return (ga * GA, de + DE / ga)


def _affp_inv(g):
    ga, de = g
    return (1.0 / ga, -ga * de)


def _affp_mat(g):
    ga, de = g
    return [[1.0 / ga, de], [0.0, 1.0]]


def _gs_law(g, h):
    b, a, v, s = g
    B, A, V, S = h
    return (b + exp(2 * s) * B, a + exp(s) * A + exp(2 * s) * v * B, v + exp(-s) * V, s + S)


def _gs_inv(g):
    b, a, v, s = g
    return (-exp(-2 * s) * b, -exp(-s) * (a - v * b), -exp(s) * v, -s)


def _gs_mat(g):
    b, a, v, s = g
    return [[exp(s), v * exp(2 * s), a], [0.0, exp(2 * s), b], [0.0, 0.0, 1.0]]


def _central(base_law, base_inv, xi):
    """Law and inverse of the central extension (theta, g) by exponent ``xi``."""

    def law(g, h):
        return (g[0] + h[0] + xi(g[1:], h[1:]),) + tuple(base_law(g[1:], h[1:]))

    def inv(g):
        gi = tuple(base_inv(g[1:]))
        return (-g[0] - xi(g[1:], gi),) + gi

    return law, inv


def _gm_laws(M):
    def law(g, h):
        th, b, a, v = g
        TH, B, A, V = h
        return (th + TH + M * (v * A + 0.5 * B * v * v), b + B, a + A + v * B, v + V)

    def inv(g):
        th, b, a, v = g
        return (-th + M * v * a - 0.5 * M * v * v * b, -b, -a + v * b, -v)

    def mat(g):
        th, b, a, v = g
        return [[1.0, v, 0.0, a], [0.0, 1.0, 0.0, b],
                [M * v, 0.5 * M * v * v, 1.0, th], [0.0, 0.0, 0.0, 1.0]]

    return law, inv, mat


def _gmaff_laws(M):
    def law(g, h):
        th, b, a, v, s, t = g
        TH, B, A, V, S, T = h
        return (th + exp(2 * s - t) * TH + M * (exp(s) * v * A + 0.5 * exp(t) * v * v * B),
                b + exp(t) * B, a + exp(t) * B * v + exp(s) * A, v + exp(s - t) * V,
                s + S, t + T)

    def inv(g):
        th, b, a, v, s, t = g
        return (exp(t - 2 * s) * (-th + M * v * a - 0.5 * M * v * v * b),
                -exp(-t) * b, -exp(-s) * (a - v * b), -exp(t - s) * v, -s, -t)

    def mat(g):
        th, b, a, v, s, t = g
        return [[exp(s), v * exp(t), 0.0, a], [0.0, exp(t), 0.0, b],
                [M * v * exp(s), 0.5 * M * v * v * exp(t), exp(2 * s - t), th],
                [0.0, 0.0, 0.0, 1.0]]

    return law, inv, mat


def _gms_laws(M):
    def law(g, h):
        th, b, a, v, s = g
        TH, B, A, V, S = h
        return (th + TH + M * (v * exp(s) * A + 0.5 * v * v * exp(2 * s) * B),
                b + exp(2 * s) * B, a + exp(2 * s) * v * B + exp(s) * A,
                v + exp(-s) * V, s + S)

    def mat(g):
        th, b, a, v, s = g
        return [[exp(s), v * exp(2 * s), 0.0, a], [0.0, exp(2 * s), 0.0, b],
                [M * v * exp(s), 0.5 * M * v * v * exp(2 * s), 1.0, th],
                [0.0, 0.0, 0.0, 1.0]]

    return law, mat


def _gmsp_laws(M):
    def law(g, h):
        th, b, a, v, s = g
        TH, B, A, V, S = h
        return (th + TH + 0.5 * M * (-v * V * B * exp(s) + v * A * exp(s) - a * V * exp(-s)),
                b + exp(2 * s) * B, a + exp(s) * A + exp(2 * s) * v * B,
                v + exp(-s) * V, s + S)

    def mat(g):
        # the (0, 1) entry is +b e^{-sigma}; with a minus sign the matrix
        # product does not reproduce the law once b != 0
        th, b, a, v, s = g
        return [[exp(s), exp(-s) * b, 0.0, a - v * b], [0.0, exp(-s), 0.0, -v],
                [0.5 * M * v * exp(s), 0.5 * M * a * exp(-s), 1.0, th],
                [0.0, 0.0, 0.0, 1.0]]

    return law, mat


def _gts_law(g, h):
    th, b, a, v, s = g
    TH, B, A, V, S = h
    return (th + TH + a * exp(-s) * (1 - exp(-S)) - exp(s - S) * v * B,
            b + exp(2 * s) * B, a + exp(s) * A + exp(2 * s) * v * B,
            v + exp(-s) * V, s + S)


def _gts_mat(g):
    th, b, a, v, s = g
    return [[1.0, a * exp(-s), -exp(s) * v, th],
            [0.0, exp(-s), 0.0, 1 - exp(-s)],
            [0.0, -exp(-s) * b, exp(s), exp(-s) * b],
            [0.0, 0.0, 0.0, 1.0]]


def _heis_law(g, h):
    th, q, p = g
    TH, Q, P = h
    return (th + TH + p * Q, q + Q, p + P)


def _heis_mat(g):
    th, q, p = g
    return [[1.0, p, th], [0.0, 1.0, q], [0.0, 0.0, 1.0]]


def _wh_law(g, h):
    th, q, p = g
    TH, Q, P = h
    return (th + TH + 0.5 * (p * Q - P * q), q + Q, p + P)


def _wh_mat(g):
    th, q, p = g
    return [[1.0, 0.0, 0.0, q], [0.0, 1.0, 0.0, -p],
            [0.5 * p, 0.5 * q, 1.0, th], [0.0, 0.0, 0.0, 1.0]]


def _sw_law(g, h):
    th, ga, de = g
    TH, GA, DE = h
    return (th + TH + ga * de * (1 - GA), ga * GA, de + DE / ga)


def _sw_mat(g):
    th, ga, de = g
    return [[1.0, ga * de, 0.0, th], [0.0, ga, 0.0, 1 - ga],
            [0.0, 0.0, 1.0 / ga, 0.0], [0.0, 0.0, 0.0, 1.0]]


def _t2_law(g, h):
    return (g[0] + h[0], g[1] + h[1])


def _t2_inv(g):
    return (-g[0], -g[1])


def _t2_mat(g):
    return [[1.0, 0.0, g[0]], [0.0, 1.0, g[1]], [0.0, 0.0, 1.0]]


# exponents the bundled extended groups are built on; cocycles.py holds the
# public Exponent objects and checks these against the explicit laws above


def _xi_gs2(g, h):
    b, a, v, s = g
    B, A, V, S = h
    return a * exp(-s) * (1 - exp(-S)) - exp(s - S) * v * B


def _xi_gms(M):
    def xi(g, h):
        b, a, v, s = g
        B, A, V, S = h
        return M * (v * exp(s) * A + 0.5 * v * v * exp(2 * s) * B)
    return xi


def _xi_gmsp(M):
    def xi(g, h):
        b, a, v, s = g
        B, A, V, S = h
        return 0.5 * M * (-v * V * B * exp(s) + v * A * exp(s) - a * V * exp(-s))
    return xi


# ---------------------------------------------------------------------------
# constructors


def _check_mass(M: float) -> float:
    M = float(M)
    if not (math.isfinite(M) and M > 0.0):
        raise DomainError(f"mass M must be a positive real, got {M}")
    return M


def galilei() -> GroupDescriptor:
    return GroupDescriptor("G0", ("b", "a", "v"), (LINEAR,) * 3, 3,
                           law=_g0_law, inverse_law=_g0_inv, matrix=_g0_mat)


def affine_galilei() -> GroupDescriptor:
    return GroupDescriptor("GAFF", ("b", "a", "v", "sigma", "tau"),
                           (LINEAR, LINEAR, LINEAR, LOG, LOG), 3,
                           law=_gaff_law, inverse_law=_gaff_inv, matrix=_gaff_mat)


def extended_heisenberg(p: float = 1.0) -> GroupDescriptor:
    p = float(p)
    if not (-1.0 < p <= 1.0):
        raise DomainError(f"extended Heisenberg index must satisfy -1 < p <= 1, got {p}")
    law, inv, mat = _gph_laws(p)
    return GroupDescriptor("GPH", ("b", "a", "v", "sigma"), (LINEAR,) * 3 + (LOG,), 3,
                           constants=(("p", p),), law=law, inverse_law=inv, matrix=mat)


def shearlet() -> GroupDescriptor:
    return GroupDescriptor("SHEAR", ("mu", "nu", "alpha", "beta"),
                           (POSITIVE, LINEAR, LINEAR, LINEAR), 3,
                           law=_shear_law, inverse_law=_shear_inv, matrix=_shear_mat)


def wavelet() -> GroupDescriptor:
    return GroupDescriptor("WAV", ("a", "sigma"), (LINEAR, LOG), 2,
                           law=_wav_law, inverse_law=_wav_inv, matrix=_wav_mat)


def affine_prime() -> GroupDescriptor:
    return GroupDescriptor("AFFPRIME", ("gamma", "delta"), (POSITIVE, LINEAR), 2,
                           law=_affp_law, inverse_law=_affp_inv, matrix=_affp_mat)


def galilei_schrodinger() -> GroupDescriptor:
    return GroupDescriptor("GS", ("b", "a", "v", "sigma"), (LINEAR,) * 3 + (LOG,), 3,
                           law=_gs_law, inverse_law=_gs_inv, matrix=_gs_mat)


def quantum_galilei(M: float = 1.0) -> GroupDescriptor:
    M = _check_mass(M)
    law, inv, mat = _gm_laws(M)
    return GroupDescriptor("GM", ("theta", "b", "a", "v"), (LINEAR,) * 4, 4,
                           constants=(("M", M),), law=law, inverse_law=inv, matrix=mat)


def extended_affine_galilei(M: float = 1.0) -> GroupDescriptor:
    M = _check_mass(M)
    law, inv, mat = _gmaff_laws(M)
    return GroupDescriptor("GMAFF", ("theta", "b", "a", "v", "sigma", "tau"),
                           (LINEAR,) * 4 + (LOG, LOG), 4,
                           constants=(("M", M),), law=law, inverse_law=inv, matrix=mat)


_EXT_NAMES = ("theta", "b", "a", "v", "sigma")
_EXT_KINDS = (LINEAR,) * 4 + (LOG,)


def galilei_schrodinger_mass(M: float = 1.0) -> GroupDescriptor:
    M = _check_mass(M)
    law, mat = _gms_laws(M)
    _, inv = _central(_gs_law, _gs_inv, _xi_gms(M))
    return GroupDescriptor("GMS", _EXT_NAMES, _EXT_KINDS, 4, constants=(("M", M),),
                           law=law, inverse_law=inv, matrix=mat)


def galilei_schrodinger_mass_prime(M: float = 1.0) -> GroupDescriptor:
    M = _check_mass(M)
    law, mat = _gmsp_laws(M)
    _, inv = _central(_gs_law, _gs_inv, _xi_gmsp(M))
    return GroupDescriptor("GMSP", _EXT_NAMES, _EXT_KINDS, 4, constants=(("M", M),),
                           law=law, inverse_law=inv, matrix=mat)


def galilei_schrodinger_trivial() -> GroupDescriptor:
    _, inv = _central(_gs_law, _gs_inv, _xi_gs2)
    return GroupDescriptor("GTS", _EXT_NAMES, _EXT_KINDS, 4,
                           law=_gts_law, inverse_law=inv, matrix=_gts_mat)


def heisenberg() -> GroupDescriptor:
    _, inv = _central(_t2_law, _t2_inv, lambda g, h: g[1] * h[0])
    return GroupDescriptor("HEIS", ("theta", "q", "p"), (LINEAR,) * 3, 3,
                           law=_heis_law, inverse_law=inv, matrix=_heis_mat)


def weyl_heisenberg() -> GroupDescriptor:
    _, inv = _central(_t2_law, _t2_inv, lambda g, h: 0.5 * (g[1] * h[0] - h[1] * g[0]))
    return GroupDescriptor("WH", ("theta", "q", "p"), (LINEAR,) * 3, 4,
                           law=_wh_law, inverse_law=inv, matrix=_wh_mat)


def stockwell() -> GroupDescriptor:
    _, inv = _central(_affp_law, _affp_inv, lambda g, h: g[0] * g[1] * (1 - h[0]))
    return GroupDescriptor("SW", ("theta", "gamma", "delta"), (LINEAR, POSITIVE, LINEAR), 4,
                           law=_sw_law, inverse_law=inv, matrix=_sw_mat)


def translations() -> GroupDescriptor:
    return GroupDescriptor("T2", ("x1", "x2"), (LINEAR, LINEAR), 3,
                           law=_t2_law, inverse_law=_t2_inv, matrix=_t2_mat)


_FACTORIES = {
    "G0": galilei,
    "GAFF": affine_galilei,
    "GPH": extended_heisenberg,
    "SHEAR": shearlet,
    "WAV": wavelet,
    "AFFPRIME": affine_prime,
    "GS": galilei_schrodinger,
    "GM": quantum_galilei,
    "GMAFF": extended_affine_galilei,
    "GMS": galilei_schrodinger_mass,
    "GMSP": galilei_schrodinger_mass_prime,
    "GTS": galilei_schrodinger_trivial,
    "HEIS": heisenberg,
    "WH": weyl_heisenberg,
    "SW": stockwell,
    "T2": translations,
}

GROUP_IDS = tuple(_FACTORIES)
MASS_GROUPS = ("GM", "GMAFF", "GMS", "GMSP")


def get_group(group_id: str, *, M: float = 1.0, p: float = 1.0) -> GroupDescriptor:
    """Look a descriptor up by tag; ``M`` and ``p`` are used only where relevant."""
    key = group_id.upper()
    if key not in _FACTORIES:
        raise KeyError(f"unknown group {group_id!r}")
    if key in MASS_GROUPS:
        return _FACTORIES[key](M)
    if key == "GPH":
        return _FACTORIES[key](p)
    return _FACTORIES[key]()


def bundled_descriptors(M: float = 1.0, p: float = 0.5) -> list[GroupDescriptor]:
    """One descriptor per bundled group tag (16 in all)."""
    return [get_group(gid, M=M, p=p) for gid in GROUP_IDS]


# ---------------------------------------------------------------------------
# sampling and checks


def random_params(desc: GroupDescriptor, rng: np.random.Generator,
                  linear: float = 2.0, log: float = 1.0) -> tuple[float, ...]:
    out = []
    for kind in desc.param_kinds:
        if kind == LINEAR:
            out.append(rng.uniform(-linear, linear))
        elif kind == LOG:
            out.append(rng.uniform(-log, log))
        else:
            out.append(math.exp(rng.uniform(-log, log)))
    return tuple(out)


def random_element(desc: GroupDescriptor, rng: np.random.Generator,
                   linear: float = 2.0, log: float = 1.0) -> GroupElement:
    return GroupElement(desc, random_params(desc, rng, linear, log))


def matrix_relative_error(m: np.ndarray, ref: np.ndarray) -> float:
    """Largest entrywise error, relative to ``max(1, |ref|)``."""
    return float(np.max(np.abs(m - ref) / np.maximum(1.0, np.abs(ref))))


def verify_matrix_homomorphism(desc: GroupDescriptor, n_samples: int, seed: int = 0):
    """Max relative error of ``R(g1 g2)`` against ``R(g1) R(g2)`` over random pairs."""
    from .report import Check

    if n_samples < 1:
        raise InvalidSampleCountError(f"invalid sample count {n_samples}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_samples):
        g1 = random_element(desc, rng)
        g2 = random_element(desc, rng)
        err = matrix_relative_error(to_matrix(g1) @ to_matrix(g2), to_matrix(compose(g1, g2)))
        worst = max(worst, err)
    return Check(f"matrix_homomorphism[{desc.tag}]", worst, 1e-12)


def params_distance(g: GroupElement | Sequence[float], h: GroupElement | Sequence[float]) -> float:
    x = g.params if isinstance(g, GroupElement) else g
    y = h.params if isinstance(h, GroupElement) else h
    return float(np.max(np.abs(np.subtract(x, y))))
